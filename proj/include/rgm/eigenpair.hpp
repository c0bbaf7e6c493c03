#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "rgm/dense.hpp"
#include "rgm/google.hpp"
#include "rgm/graph.hpp"

namespace rgm {

/// Square operator with forward and transposed products.
class LinearOperator {
public:
  virtual ~LinearOperator() = default;
  virtual std::size_t size() const = 0;
  virtual void apply(std::span<const double> x, std::span<double> y) const = 0;
  virtual void apply_transpose(std::span<const double> x, std::span<double> y) const = 0;
};

class DenseOperator final : public LinearOperator {
public:
  explicit DenseOperator(const DenseMatrix& m);
  std::size_t size() const override { return m_->rows(); }
  void apply(std::span<const double> x, std::span<double> y) const override;
  void apply_transpose(std::span<const double> x, std::span<double> y) const override;

private:
  const DenseMatrix* m_;
};

/// The scattering block G_ss acting on vectors indexed by the complement of
/// a subset (compact numbering, ascending node id). Products go through the
/// full sparse Google matvec with the subset rows and columns masked.
class ScatteringOperator final : public LinearOperator {
public:
  ScatteringOperator(const GoogleMatrix& g, const NodeSubset& subset);

  std::size_t size() const override { return scatter_.size(); }
  void apply(std::span<const double> x, std::span<double> y) const override;
  void apply_transpose(std::span<const double> x, std::span<double> y) const override;

  /// Node ids of the scattering set, ascending.
  std::span<const NodeId> nodes() const noexcept { return scatter_; }
  /// Position of node i in the subset, or -1 for scattering nodes.
  std::span<const std::ptrdiff_t> subset_position() const noexcept { return subset_pos_; }
  /// Compact scattering index of node i, or -1 for subset nodes.
  std::span<const std::ptrdiff_t> scatter_position() const noexcept { return scatter_pos_; }

  const GoogleMatrix& google() const noexcept { return *g_; }

private:
  const GoogleMatrix* g_;
  std::vector<NodeId> scatter_;
  std::vector<std::ptrdiff_t> subset_pos_;
  std::vector<std::ptrdiff_t> scatter_pos_;
  mutable std::vector<double> full_in_, full_out_;
};

struct Eigenpair {
  double lambda = 0.0;
  /// Right eigenvector, sum(psi_right) == 1.
  std::vector<double> psi_right;
  /// Left eigenvector, dot(psi_left, psi_right) == 1.
  std::vector<double> psi_left;
  double right_residual = 0.0;
  double left_residual = 0.0;
  std::size_t iterations = 0;
};

struct EigenOptions {
  /// Bound on ||A v - lambda v||_1 for each iterate scaled to unit L1 norm.
  double tol = 1e-13;
  std::size_t max_iter = 100000;
};

/// Leading (Perron) eigenpair of a nonnegative operator by power iteration
/// on A and A^T. lambda is E^T (A psi_R) with E^T psi_R = 1. Throws
/// NumericalError when either iteration does not settle (complex or
/// degenerate leading eigenvalue) or when psi_L^T psi_R is not positive.
Eigenpair leading_eigenpair(const LinearOperator& op, const EigenOptions& opts = {});

/// Rank-one spectral projector P = psi_R psi_L^T and its complement Q = 1 - P.
class SpectralProjector {
public:
  SpectralProjector(std::span<const double> psi_right, std::span<const double> psi_left)
      : right_(psi_right), left_(psi_left) {}

  /// psi_L^T x
  double coefficient(std::span<const double> x) const;
  void apply_p(std::span<const double> x, std::span<double> y) const;
  void apply_q(std::span<const double> x, std::span<double> y) const;

private:
  std::span<const double> right_;
  std::span<const double> left_;
};

}  // namespace rgm
