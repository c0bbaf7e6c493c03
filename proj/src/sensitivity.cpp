#include "rgm/sensitivity.hpp"

#include <cmath>
#include <limits>
#include <unordered_map>

#include "rgm/error.hpp"

namespace rgm {

namespace {

void check_matrix(const DenseMatrix& g_r) {
  if (!g_r.square() || g_r.rows() < 2) throw InvalidArgument("sensitivity needs a square matrix of order >= 2");
}

std::vector<std::string> index_labels(std::size_t n) {
  std::vector<std::string> out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = std::to_string(k);
  return out;
}

SensitivityReport evaluate(const std::vector<double>& base, const DenseMatrix& perturbed, const Perturbation& p,
                           bool noop, RankKind kind, const SensitivityOptions& opts) {
  SensitivityReport rep;
  rep.perturbation = p;
  rep.kind = kind;
  rep.noop = noop;
  rep.p_base = base;
  rep.p_perturbed = noop ? base : dense_power_stationary(perturbed, opts.tol, opts.max_iter).p;
  rep.labels = index_labels(base.size());
  rep.d.resize(base.size());
  for (std::size_t a = 0; a < base.size(); ++a) {
    if (!(base[a] > 0.0)) throw NumericalError("zero base probability at node " + std::to_string(a));
    rep.d[a] = (rep.p_perturbed[a] - base[a]) / (p.delta * base[a]);
  }
  return rep;
}

}  // namespace

DenseMatrix perturb(const DenseMatrix& g_r, const Perturbation& p) {
  check_matrix(g_r);
  if (p.i >= g_r.rows() || p.j >= g_r.cols()) throw InvalidArgument("perturbation index out of range");
  if (p.i == p.j) throw InvalidArgument("perturbed link must join two different nodes");
  if (!(std::abs(p.delta) < 1.0)) throw InvalidArgument("|delta| must be < 1");
  const double scaled = (1.0 + p.delta) * g_r(p.i, p.j);
  if (scaled < 0.0) throw InvalidArgument("perturbed entry would be negative");
  DenseMatrix out = g_r;
  out(p.i, p.j) = scaled;
  const double s = out.column_sum(p.j);
  for (std::size_t r = 0; r < out.rows(); ++r) out(r, p.j) /= s;
  return out;
}

SensitivityReport sensitivity(const DenseMatrix& g_r, const Perturbation& p, const SensitivityOptions& opts) {
  const auto perturbed = perturb(g_r, p);
  if (p.delta == 0.0) throw InvalidArgument("sensitivity needs a nonzero delta");
  const auto base = dense_power_stationary(g_r, opts.tol, opts.max_iter).p;
  return evaluate(base, perturbed, p, g_r(p.i, p.j) == 0.0, RankKind::pagerank, opts);
}

SensitivityReport cheirank_sensitivity(const DenseMatrix& g_r, const Perturbation& p,
                                       const SensitivityOptions& opts) {
  const auto perturbed = perturb(g_r, p);
  if (p.delta == 0.0) throw InvalidArgument("sensitivity needs a nonzero delta");
  const auto base = dense_power_stationary(normalize_columns(g_r.transposed()), opts.tol, opts.max_iter).p;
  return evaluate(base, normalize_columns(perturbed.transposed()), p, g_r(p.i, p.j) == 0.0, RankKind::cheirank,
                  opts);
}

namespace {

std::vector<double> two_way_with_base(const DenseMatrix& g_r, const std::vector<double>& base, std::size_t a,
                                      std::size_t b, double delta, const SensitivityOptions& opts) {
  const Perturbation a_to_b{b, a, delta};
  const Perturbation b_to_a{a, b, delta};
  const auto d1 = evaluate(base, perturb(g_r, a_to_b), a_to_b, g_r(b, a) == 0.0, RankKind::pagerank, opts).d;
  const auto d2 = evaluate(base, perturb(g_r, b_to_a), b_to_a, g_r(a, b) == 0.0, RankKind::pagerank, opts).d;
  std::vector<double> out(d1.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = d1[k] + d2[k];
  return out;
}

}  // namespace

std::vector<double> two_way(const DenseMatrix& g_r, std::size_t a, std::size_t b, double delta,
                            const SensitivityOptions& opts) {
  check_matrix(g_r);
  if (a == b) throw InvalidArgument("two-way sensitivity needs two different nodes");
  if (delta == 0.0) throw InvalidArgument("sensitivity needs a nonzero delta");
  const auto base = dense_power_stationary(g_r, opts.tol, opts.max_iter).p;
  return two_way_with_base(g_r, base, a, b, delta, opts);
}

ImbalanceMatrix imbalance_matrix(const DenseMatrix& g_r, double delta, const SensitivityOptions& opts) {
  check_matrix(g_r);
  if (delta == 0.0) throw InvalidArgument("sensitivity needs a nonzero delta");
  const auto n = g_r.rows();
  const auto base = dense_power_stationary(g_r, opts.tol, opts.max_iter).p;

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) pairs.emplace_back(a, b);

  ImbalanceMatrix out;
  out.delta = delta;
  out.f = DenseMatrix(n, n);
  std::vector<double> value(pairs.size());
  std::vector<char> failed(pairs.size(), 0);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(pairs.size()); ++k) {
    const auto [a, b] = pairs[k];
    try {
      const auto d = two_way_with_base(g_r, base, a, b, delta, opts);
      value[k] = d[a] - d[b];
    } catch (const Error&) {
      failed[k] = 1;
    }
  }
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto [a, b] = pairs[k];
    if (failed[k]) {
      out.missing.push_back(pairs[k]);
      out.f(a, b) = out.f(b, a) = std::numeric_limits<double>::quiet_NaN();
      continue;
    }
    out.f(a, b) = value[k];
    out.f(b, a) = -value[k];
  }
  return out;
}

AveragedSensitivity average_reports(const std::vector<SensitivityReport>& reports) {
  if (reports.empty()) throw InvalidArgument("no reports to average");
  const auto& first = reports.front();
  AveragedSensitivity out;
  out.labels = first.labels;
  out.i_label = first.i_label();
  out.j_label = first.j_label();
  out.delta = first.perturbation.delta;
  out.d.assign(first.labels.size(), 0.0);

  for (const auto& rep : reports) {
    if (rep.labels.size() != out.labels.size() || rep.d.size() != out.labels.size())
      throw InvalidArgument("edition '" + rep.edition + "' has a different node set");
    if (rep.i_label() != out.i_label || rep.j_label() != out.j_label)
      throw InvalidArgument("edition '" + rep.edition + "' perturbs a different link");
    if (rep.perturbation.delta != out.delta) throw InvalidArgument("edition '" + rep.edition + "' uses another delta");
    std::unordered_map<std::string, std::size_t> pos;
    for (std::size_t k = 0; k < rep.labels.size(); ++k) pos.emplace(rep.labels[k], k);
    for (std::size_t k = 0; k < out.labels.size(); ++k) {
      auto it = pos.find(out.labels[k]);
      if (it == pos.end())
        throw InvalidArgument("edition '" + rep.edition + "' lacks label '" + out.labels[k] + "'");
      out.d[k] += rep.d[it->second];
    }
    out.editions.push_back(rep.edition);
  }
  for (double& v : out.d) v /= static_cast<double>(reports.size());
  return out;
}

}  // namespace rgm
