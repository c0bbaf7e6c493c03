#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "rgm/dense.hpp"

namespace rgm {

/// Boost of the link j -> i (entry (i, j)) of a reduced matrix by the
/// relative fraction delta, indices in subset order.
struct Perturbation {
  std::size_t i = 0;
  std::size_t j = 0;
  double delta = 0.03;
};

enum class RankKind { pagerank, cheirank };

struct SensitivityReport {
  Perturbation perturbation;
  RankKind kind = RankKind::pagerank;
  /// Logarithmic derivative (P~_a - P_a) / (delta P_a) per node.
  std::vector<double> d;
  std::vector<double> p_base;
  std::vector<double> p_perturbed;
  /// Node labels in matrix order; decimal indices unless set by the caller.
  std::vector<std::string> labels;
  std::string edition;
  /// The base entry was zero, so the perturbation changed nothing.
  bool noop = false;

  const std::string& i_label() const { return labels.at(perturbation.i); }
  const std::string& j_label() const { return labels.at(perturbation.j); }
};

struct SensitivityOptions {
  double tol = 1e-12;
  std::size_t max_iter = 100000;
};

/// Column j with entry (i, j) scaled by (1 + delta), then renormalized to sum
/// one. Throws InvalidArgument for i == j, |delta| >= 1, out-of-range indices
/// or a negative scaled entry.
DenseMatrix perturb(const DenseMatrix& g_r, const Perturbation& p);

SensitivityReport sensitivity(const DenseMatrix& g_r, const Perturbation& p, const SensitivityOptions& opts = {});

/// As sensitivity(), with stationary vectors taken from the column-renormalized
/// transposes of the base and perturbed matrices.
SensitivityReport cheirank_sensitivity(const DenseMatrix& g_r, const Perturbation& p,
                                       const SensitivityOptions& opts = {});

/// D_(a<->b) = D_(a->b) + D_(b->a), both against the unperturbed matrix.
std::vector<double> two_way(const DenseMatrix& g_r, std::size_t a, std::size_t b, double delta,
                            const SensitivityOptions& opts = {});

struct ImbalanceMatrix {
  /// f(a, b) = D_(a<->b)(a) - D_(a<->b)(b). Negative means a dominates b.
  DenseMatrix f;
  double delta = 0.0;
  /// Unordered pairs (a < b) whose computation failed; their entries are NaN.
  std::vector<std::pair<std::size_t, std::size_t>> missing;
};

ImbalanceMatrix imbalance_matrix(const DenseMatrix& g_r, double delta, const SensitivityOptions& opts = {});

struct AveragedSensitivity {
  std::vector<std::string> labels;
  std::vector<double> d;
  std::string i_label;
  std::string j_label;
  double delta = 0.0;
  std::vector<std::string> editions;
};

/// Elementwise mean of reports from several editions, aligned by label to the
/// first report. Throws InvalidArgument when label sets, the perturbed link
/// or delta differ.
AveragedSensitivity average_reports(const std::vector<SensitivityReport>& reports);

}  // namespace rgm
