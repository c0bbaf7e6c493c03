#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "rgm/dense.hpp"
#include "rgm/eigenpair.hpp"
#include "rgm/google.hpp"
#include "rgm/graph.hpp"

namespace rgm {

struct ComponentWeights {
  double rr = 0.0;
  double pr = 0.0;
  double qr = 0.0;
};

/// Reduced Google matrix of a node subset and its three components.
/// Rows and columns follow `subset` order.
struct ReducedMatrices {
  NodeSubset subset;
  DenseMatrix g_rr;        ///< direct links among subset nodes
  DenseMatrix g_pr;        ///< leading-eigenvector (projector) part
  DenseMatrix g_qr;        ///< hidden links through the scattering network
  DenseMatrix g_qr_diag;
  DenseMatrix g_qr_ndiag;
  DenseMatrix g_r;         ///< (g_rr + g_pr) + g_qr
  double lambda_c = 0.0;   ///< leading eigenvalue of G_ss; 0 when the scattering set is empty
  std::vector<double> psi_right;
  std::vector<double> psi_left;
  ComponentWeights weights;
  double neg_weight = 0.0;
  std::size_t series_terms = 0;
  double series_residual = 0.0;
  /// Largest column L1 norm of each series term.
  std::vector<double> series_history;
  /// Entries of g_r in (-1e-12, 0) that were set to zero (g_qr adjusted).
  std::size_t clamped_entries = 0;
  double alpha = 0.0;
  std::size_t n = 0;
};

struct ReduceOptions {
  EigenOptions eigen;
  /// Stop the hidden-link series once every column's running term has
  /// L1 norm <= series_tol.
  double series_tol = 1e-12;
  std::size_t max_terms = 10000;
};

/// Leading eigenpair of the scattering block G_ss, vectors indexed as
/// ScatteringOperator::nodes().
Eigenpair leading_ss_eigenpair(const GoogleMatrix& g, const NodeSubset& subset, const EigenOptions& opts = {});

/// Computes G_R = G_rr + G_rs (1 - G_ss)^{-1} G_sr with the inverse split as
/// P_c / (1 - lambda_c) + Q_c sum_l (Q_c G_ss Q_c)^l. All N_r columns of the
/// series are propagated together as one N x N_r block.
///
/// Throws NumericalError if the eigenpair or the series does not converge,
/// a column of g_r misses 1 by more than 1e-10, or an entry of g_r is below
/// -1e-12.
ReducedMatrices reduce(const GoogleMatrix& g, const NodeSubset& subset, const ReduceOptions& opts = {});

/// Stationary vector of a reduced matrix, normalized to sum 1.
std::vector<double> reduced_pagerank(const DenseMatrix& g_r, double tol = 1e-12, std::size_t max_iter = 100000);

/// Exact diagonal / off-diagonal partition.
std::pair<DenseMatrix, DenseMatrix> split_gqr(const DenseMatrix& g_qr);

/// Sum of |negative entries| divided by the matrix order.
double negative_weight(const DenseMatrix& m);

/// Total of all entries divided by the matrix order.
double component_weight(const DenseMatrix& m);

}  // namespace rgm
