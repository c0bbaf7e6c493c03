#include "rgm/reduced.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rgm/error.hpp"

namespace rgm {

namespace {

constexpr double kColumnSumTol = 1e-10;
constexpr double kClampTol = 1e-12;

// Subtracts psi_R (psi_L^T u) from every column u of a row-major N x k block,
// returning the coefficients psi_L^T u taken before the subtraction.
std::vector<double> project_out(std::span<double> block, std::size_t k, std::span<const double> psi_right,
                                std::span<const double> psi_left) {
  const auto n = psi_right.size();
  std::vector<double> coef(k, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (psi_left[i] == 0.0) continue;
    const double* row = block.data() + i * k;
    for (std::size_t q = 0; q < k; ++q) coef[q] += psi_left[i] * row[q];
  }
#pragma omp parallel for schedule(static, 1024)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
    const double r = psi_right[i];
    if (r == 0.0) continue;
    double* row = block.data() + static_cast<std::size_t>(i) * k;
    for (std::size_t q = 0; q < k; ++q) row[q] -= coef[q] * r;
  }
  return coef;
}

void zero_rows(std::span<double> block, std::size_t k, std::span<const NodeId> rows) {
  for (NodeId i : rows) std::fill_n(block.data() + static_cast<std::size_t>(i) * k, k, 0.0);
}

void assemble(ReducedMatrices& m) {
  const auto nr = m.subset.size();
  m.g_r = DenseMatrix(nr, nr);
  for (std::size_t a = 0; a < nr; ++a)
    for (std::size_t c = 0; c < nr; ++c) m.g_r(a, c) = (m.g_rr(a, c) + m.g_pr(a, c)) + m.g_qr(a, c);

  for (std::size_t c = 0; c < nr; ++c) {
    const double s = m.g_r.column_sum(c);
    if (!(std::abs(s - 1.0) <= kColumnSumTol))
      throw NumericalError("reduced matrix column " + std::to_string(c) + " sums to " + std::to_string(s),
                           std::abs(s - 1.0));
  }
  for (std::size_t a = 0; a < nr; ++a) {
    for (std::size_t c = 0; c < nr; ++c) {
      const double v = m.g_r(a, c);
      if (v >= 0.0) continue;
      if (v < -kClampTol)
        throw NumericalError("reduced matrix entry (" + std::to_string(a) + "," + std::to_string(c) +
                                 ") is negative: " + std::to_string(v),
                             -v);
      m.g_qr(a, c) = -(m.g_rr(a, c) + m.g_pr(a, c));
      m.g_r(a, c) = (m.g_rr(a, c) + m.g_pr(a, c)) + m.g_qr(a, c);
      ++m.clamped_entries;
    }
  }
  std::tie(m.g_qr_diag, m.g_qr_ndiag) = split_gqr(m.g_qr);
  m.weights = {component_weight(m.g_rr), component_weight(m.g_pr), component_weight(m.g_qr)};
  m.neg_weight = negative_weight(m.g_qr);
}

}  // namespace

Eigenpair leading_ss_eigenpair(const GoogleMatrix& g, const NodeSubset& subset, const EigenOptions& opts) {
  const ScatteringOperator op(g, subset);
  if (op.size() == 0) throw InvalidArgument("scattering set is empty");
  return leading_eigenpair(op, opts);
}

ReducedMatrices reduce(const GoogleMatrix& g, const NodeSubset& subset, const ReduceOptions& opts) {
  const auto n = g.size();
  const auto nr = subset.size();
  if (nr == 0) throw InvalidArgument("empty subset");
  if (!(opts.series_tol > 0.0)) throw InvalidArgument("series tolerance must be positive");

  const ScatteringOperator op(g, subset);  // validates the subset
  ReducedMatrices m;
  m.subset = subset;
  m.alpha = g.alpha();
  m.n = n;
  m.g_rr = DenseMatrix(nr, nr);
  m.g_pr = DenseMatrix(nr, nr);
  m.g_qr = DenseMatrix(nr, nr);

  // G_sr columns as an N x N_r block with subset rows zeroed; G_rr on the side.
  std::vector<double> u0(n * nr, 0.0);
  for (std::size_t c = 0; c < nr; ++c) {
    const auto col = g.column(subset.indices[c]);
    for (std::size_t i = 0; i < n; ++i) u0[i * nr + c] = col[i];
    for (std::size_t a = 0; a < nr; ++a) m.g_rr(a, c) = col[subset.indices[a]];
  }
  zero_rows(u0, nr, subset.indices);

  if (op.size() == 0) {
    assemble(m);
    return m;
  }

  const auto ep = leading_eigenpair(op, opts.eigen);
  m.lambda_c = ep.lambda;
  m.psi_right = ep.psi_right;
  m.psi_left = ep.psi_left;
  if (!(m.lambda_c > 0.0 && m.lambda_c < 1.0))
    throw NumericalError("leading eigenvalue of G_ss outside (0,1): " + std::to_string(m.lambda_c));

  std::vector<double> psi_r(n, 0.0), psi_l(n, 0.0);
  for (std::size_t s = 0; s < op.size(); ++s) {
    psi_r[op.nodes()[s]] = ep.psi_right[s];
    psi_l[op.nodes()[s]] = ep.psi_left[s];
  }

  // Projector part: G_rs psi_R (psi_L^T G_sr) / (1 - lambda_c).
  std::vector<double> w(u0);
  const auto coef = project_out(w, nr, psi_r, psi_l);
  const auto g_psi = g.apply(psi_r);
  const double inv_gap = 1.0 / (1.0 - m.lambda_c);
  for (std::size_t a = 0; a < nr; ++a)
    for (std::size_t c = 0; c < nr; ++c) m.g_pr(a, c) = g_psi[subset.indices[a]] * coef[c] * inv_gap;

  // Hidden-link part: terms w_0 = Q u0, w_{l+1} = Q G_ss w_l, summed.
  std::vector<double> acc(w);
  std::vector<double> next(n * nr);
  std::vector<double> col_norm(nr);
  double worst = 0.0;
  std::size_t terms = 1;
  for (;;) {
    std::fill(col_norm.begin(), col_norm.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t q = 0; q < nr; ++q) col_norm[q] += std::abs(w[i * nr + q]);
    worst = *std::max_element(col_norm.begin(), col_norm.end());
    m.series_history.push_back(worst);
    if (worst <= opts.series_tol) break;
    if (terms >= opts.max_terms)
      throw NumericalError("hidden-link series did not converge in " + std::to_string(opts.max_terms) +
                               " terms (running term " + std::to_string(worst) + ")",
                           worst);
    g.apply_block(w, next, nr);
    zero_rows(next, nr, subset.indices);
    project_out(next, nr, psi_r, psi_l);
    w.swap(next);
#pragma omp parallel for schedule(static, 4096)
    for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(acc.size()); ++k) acc[k] += w[k];
    ++terms;
  }
  m.series_terms = terms;
  m.series_residual = worst;

  g.apply_block(acc, next, nr);
  for (std::size_t a = 0; a < nr; ++a)
    for (std::size_t c = 0; c < nr; ++c)
      m.g_qr(a, c) = next[static_cast<std::size_t>(subset.indices[a]) * nr + c];

  assemble(m);
  return m;
}

std::vector<double> reduced_pagerank(const DenseMatrix& g_r, double tol, std::size_t max_iter) {
  return dense_power_stationary(g_r, tol, max_iter).p;
}

std::pair<DenseMatrix, DenseMatrix> split_gqr(const DenseMatrix& g_qr) {
  DenseMatrix diag(g_qr.rows(), g_qr.cols());
  DenseMatrix ndiag = g_qr;
  for (std::size_t i = 0; i < std::min(g_qr.rows(), g_qr.cols()); ++i) {
    diag(i, i) = g_qr(i, i);
    ndiag(i, i) = 0.0;
  }
  return {std::move(diag), std::move(ndiag)};
}

double negative_weight(const DenseMatrix& m) {
  if (m.rows() == 0) return 0.0;
  double s = 0.0;
  for (double v : m.values())
    if (v < 0.0) s -= v;
  return s / static_cast<double>(m.rows());
}

double component_weight(const DenseMatrix& m) {
  if (m.rows() == 0) return 0.0;
  return m.total() / static_cast<double>(m.rows());
}

}  // namespace rgm
