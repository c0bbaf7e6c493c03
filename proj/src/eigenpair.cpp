#include "rgm/eigenpair.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rgm/error.hpp"
#include "rgm/kernels.hpp"

namespace rgm {

DenseOperator::DenseOperator(const DenseMatrix& m) : m_(&m) {
  if (!m.square()) throw InvalidArgument("DenseOperator needs a square matrix");
}

void DenseOperator::apply(std::span<const double> x, std::span<double> y) const {
  const auto r = m_->apply(x);
  std::copy(r.begin(), r.end(), y.begin());
}

void DenseOperator::apply_transpose(std::span<const double> x, std::span<double> y) const {
  const auto r = m_->apply_transpose(x);
  std::copy(r.begin(), r.end(), y.begin());
}

ScatteringOperator::ScatteringOperator(const GoogleMatrix& g, const NodeSubset& subset)
    : g_(&g), subset_pos_(g.size(), -1), scatter_pos_(g.size(), -1), full_in_(g.size()), full_out_(g.size()) {
  for (std::size_t a = 0; a < subset.size(); ++a) {
    const auto i = subset.indices[a];
    if (i >= g.size()) throw InvalidArgument("subset index out of range");
    if (subset_pos_[i] >= 0) throw InvalidArgument("duplicate subset index");
    subset_pos_[i] = static_cast<std::ptrdiff_t>(a);
  }
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (subset_pos_[i] >= 0) continue;
    scatter_pos_[i] = static_cast<std::ptrdiff_t>(scatter_.size());
    scatter_.push_back(static_cast<NodeId>(i));
  }
}

void ScatteringOperator::apply(std::span<const double> x, std::span<double> y) const {
  if (x.size() != size() || y.size() != size()) throw InvalidArgument("scattering vector length mismatch");
  std::fill(full_in_.begin(), full_in_.end(), 0.0);
  const auto ns = static_cast<std::ptrdiff_t>(scatter_.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t s = 0; s < ns; ++s) full_in_[scatter_[s]] = x[s];
  g_->apply(full_in_, full_out_);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t s = 0; s < ns; ++s) y[s] = full_out_[scatter_[s]];
}

void ScatteringOperator::apply_transpose(std::span<const double> x, std::span<double> y) const {
  if (x.size() != size() || y.size() != size()) throw InvalidArgument("scattering vector length mismatch");
  std::fill(full_in_.begin(), full_in_.end(), 0.0);
  const auto ns = static_cast<std::ptrdiff_t>(scatter_.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t s = 0; s < ns; ++s) full_in_[scatter_[s]] = x[s];
  g_->apply_transpose(full_in_, full_out_);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t s = 0; s < ns; ++s) y[s] = full_out_[scatter_[s]];
}

namespace {

struct PowerOutcome {
  std::vector<double> v;
  double lambda = 0.0;
  double residual = 0.0;
  std::size_t iterations = 0;
};

// Iterations without improving the best residual before giving up.
constexpr std::size_t kStallWindow = 2000;

template <class Apply>
PowerOutcome power_iterate(std::size_t n, Apply apply, const EigenOptions& opts, const char* which) {
  PowerOutcome out;
  out.v.assign(n, 1.0 / static_cast<double>(n));
  std::vector<double> av(n);
  double best = INFINITY;
  std::size_t since_best = 0;
  for (std::size_t it = 1; it <= opts.max_iter; ++it) {
    apply(out.v, av);
    const double lambda = kernels::sum(av);
    if (!(lambda > 0.0) || !std::isfinite(lambda))
      throw NumericalError(std::string(which) + " eigen-iteration: operator annihilated the iterate");
    double r = 0.0;
    for (std::size_t k = 0; k < n; ++k) r += std::abs(av[k] - lambda * out.v[k]);
    out.lambda = lambda;
    out.residual = r;
    out.iterations = it;
    if (r <= opts.tol) return out;
    for (std::size_t k = 0; k < n; ++k) out.v[k] = av[k] / lambda;
    if (r < best) {
      best = r;
      since_best = 0;
    } else if (++since_best > kStallWindow) {
      throw NumericalError(std::string(which) + " eigen-iteration stalled at residual " + std::to_string(r) +
                               "; the leading eigenvalue is not simple and real, or tol is below round-off",
                           r);
    }
  }
  throw NumericalError(std::string(which) + " eigen-iteration did not converge in " +
                           std::to_string(opts.max_iter) + " iterations (residual " +
                           std::to_string(out.residual) + ")",
                       out.residual);
}

}  // namespace

Eigenpair leading_eigenpair(const LinearOperator& op, const EigenOptions& opts) {
  if (!(opts.tol > 0.0)) throw InvalidArgument("tolerance must be positive");
  const auto n = op.size();
  if (n == 0) throw InvalidArgument("eigenpair of an empty operator");

  auto right = power_iterate(
      n, [&](std::span<const double> x, std::span<double> y) { op.apply(x, y); }, opts, "right");
  auto left = power_iterate(
      n, [&](std::span<const double> x, std::span<double> y) { op.apply_transpose(x, y); }, opts, "left");

  Eigenpair ep;
  ep.lambda = right.lambda;
  ep.psi_right = std::move(right.v);
  ep.right_residual = right.residual;
  ep.left_residual = left.residual;
  ep.iterations = right.iterations + left.iterations;

  double overlap = 0.0;
  for (std::size_t k = 0; k < n; ++k) overlap += left.v[k] * ep.psi_right[k];
  if (!(overlap > 1e-14)) throw NumericalError("degenerate biorthogonalization: psi_L^T psi_R <= 1e-14", overlap);
  ep.psi_left = std::move(left.v);
  for (double& v : ep.psi_left) v /= overlap;
  return ep;
}

double SpectralProjector::coefficient(std::span<const double> x) const {
  double c = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) c += left_[k] * x[k];
  return c;
}

void SpectralProjector::apply_p(std::span<const double> x, std::span<double> y) const {
  const double c = coefficient(x);
  for (std::size_t k = 0; k < x.size(); ++k) y[k] = c * right_[k];
}

void SpectralProjector::apply_q(std::span<const double> x, std::span<double> y) const {
  const double c = coefficient(x);
  for (std::size_t k = 0; k < x.size(); ++k) y[k] = x[k] - c * right_[k];
}

}  // namespace rgm
