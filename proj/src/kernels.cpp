#include "rgm/kernels.hpp"

#include <cmath>
#include <vector>

#include "rgm/error.hpp"

namespace rgm::kernels {

namespace {

constexpr std::size_t kChunk = 8192;

std::size_t chunk_count(std::size_t n) { return (n + kChunk - 1) / kChunk; }

void check_sizes(const DirectedGraph& g, std::size_t x, std::size_t y, std::size_t k = 1) {
  if (x != g.node_count() * k || y != g.node_count() * k) throw InvalidArgument("vector length does not match graph");
}

// Chunked reduction of f(i) over [0, n); partials combined in chunk order.
template <class F>
double chunked_sum(std::size_t n, F f) {
  const auto chunks = chunk_count(n);
  std::vector<double> partial(chunks, 0.0);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(chunks); ++c) {
    const std::size_t lo = static_cast<std::size_t>(c) * kChunk;
    const std::size_t hi = std::min(n, lo + kChunk);
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += f(i);
    partial[c] = s;
  }
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

}  // namespace

double sum(std::span<const double> x) {
  return chunked_sum(x.size(), [&](std::size_t i) { return x[i]; });
}

double l1_norm(std::span<const double> x) {
  return chunked_sum(x.size(), [&](std::size_t i) { return std::abs(x[i]); });
}

double l1_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw InvalidArgument("l1_distance: length mismatch");
  return chunked_sum(a.size(), [&](std::size_t i) { return std::abs(a[i] - b[i]); });
}

void google_apply(const DirectedGraph& g, double alpha, std::span<const double> x, std::span<double> y) {
  check_sizes(g, x.size(), y.size());
  const auto n = g.node_count();
  if (n == 0) return;
  const auto dangling = g.dangling_nodes();
  const double total = sum(x);
  const double dangling_mass = chunked_sum(dangling.size(), [&](std::size_t d) { return x[dangling[d]]; });
  const double shift = (alpha * dangling_mass + (1.0 - alpha) * total) / static_cast<double>(n);
  const auto off = g.in_offsets();
  const auto src = g.in_sources();
  const auto inv = g.inv_out_degree();
#pragma omp parallel for schedule(static, 1024)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
    double acc = 0.0;
    for (std::size_t e = off[i]; e < off[i + 1]; ++e) acc += x[src[e]] * inv[src[e]];
    y[i] = alpha * acc + shift;
  }
}

void google_apply_transpose(const DirectedGraph& g, double alpha, std::span<const double> x,
                            std::span<double> y) {
  check_sizes(g, x.size(), y.size());
  const auto n = g.node_count();
  if (n == 0) return;
  const double mean = sum(x) / static_cast<double>(n);
  const auto off = g.out_offsets();
  const auto dst = g.out_targets();
  const auto inv = g.inv_out_degree();
#pragma omp parallel for schedule(static, 1024)
  for (std::ptrdiff_t j = 0; j < static_cast<std::ptrdiff_t>(n); ++j) {
    double link;
    if (off[j] == off[j + 1]) {
      link = mean;
    } else {
      double acc = 0.0;
      for (std::size_t e = off[j]; e < off[j + 1]; ++e) acc += x[dst[e]];
      link = acc * inv[j];
    }
    y[j] = alpha * link + (1.0 - alpha) * mean;
  }
}

void google_apply_block(const DirectedGraph& g, double alpha, std::span<const double> x, std::span<double> y,
                        std::size_t k) {
  check_sizes(g, x.size(), y.size(), k);
  const auto n = g.node_count();
  if (n == 0 || k == 0) return;
  const auto dangling = g.dangling_nodes();
  const auto inv = g.inv_out_degree();

  // Column totals and dangling totals, chunked for determinism.
  const auto chunks = chunk_count(n);
  std::vector<double> partial(chunks * 2 * k, 0.0);
  std::vector<char> is_dangling(n, 0);
  for (NodeId d : dangling) is_dangling[d] = 1;
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(chunks); ++c) {
    double* tot = partial.data() + static_cast<std::size_t>(c) * 2 * k;
    double* dang = tot + k;
    const std::size_t lo = static_cast<std::size_t>(c) * kChunk;
    const std::size_t hi = std::min(n, lo + kChunk);
    for (std::size_t i = lo; i < hi; ++i) {
      const double* row = x.data() + i * k;
      for (std::size_t q = 0; q < k; ++q) tot[q] += row[q];
      if (is_dangling[i])
        for (std::size_t q = 0; q < k; ++q) dang[q] += row[q];
    }
  }
  std::vector<double> shift(k, 0.0);
  for (std::size_t q = 0; q < k; ++q) {
    double tot = 0.0, dang = 0.0;
    for (std::size_t c = 0; c < chunks; ++c) {
      tot += partial[c * 2 * k + q];
      dang += partial[c * 2 * k + k + q];
    }
    shift[q] = (alpha * dang + (1.0 - alpha) * tot) / static_cast<double>(n);
  }

  const auto off = g.in_offsets();
  const auto src = g.in_sources();
#pragma omp parallel
  {
    std::vector<double> acc(k);
#pragma omp for schedule(static, 256)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
      std::fill(acc.begin(), acc.end(), 0.0);
      for (std::size_t e = off[i]; e < off[i + 1]; ++e) {
        const double w = inv[src[e]];
        const double* row = x.data() + static_cast<std::size_t>(src[e]) * k;
        for (std::size_t q = 0; q < k; ++q) acc[q] += w * row[q];
      }
      double* out = y.data() + static_cast<std::size_t>(i) * k;
      for (std::size_t q = 0; q < k; ++q) out[q] = alpha * acc[q] + shift[q];
    }
  }
}

namespace serial {

double sum(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v;
  return s;
}

void google_apply(const DirectedGraph& g, double alpha, std::span<const double> x, std::span<double> y) {
  check_sizes(g, x.size(), y.size());
  const auto n = g.node_count();
  if (n == 0) return;
  double dangling_mass = 0.0;
  for (NodeId d : g.dangling_nodes()) dangling_mass += x[d];
  const double shift = (alpha * dangling_mass + (1.0 - alpha) * sum(x)) / static_cast<double>(n);
  std::fill(y.begin(), y.end(), 0.0);
  // Push along outgoing edges.
  for (std::size_t j = 0; j < n; ++j) {
    const auto nb = g.out_neighbors(static_cast<NodeId>(j));
    if (nb.empty()) continue;
    const double share = x[j] / static_cast<double>(nb.size());
    for (NodeId i : nb) y[i] += share;
  }
  for (std::size_t i = 0; i < n; ++i) y[i] = alpha * y[i] + shift;
}

void google_apply_transpose(const DirectedGraph& g, double alpha, std::span<const double> x,
                            std::span<double> y) {
  check_sizes(g, x.size(), y.size());
  const auto n = g.node_count();
  if (n == 0) return;
  const double mean = sum(x) / static_cast<double>(n);
  for (std::size_t j = 0; j < n; ++j) {
    const auto nb = g.out_neighbors(static_cast<NodeId>(j));
    double link = mean;
    if (!nb.empty()) {
      double acc = 0.0;
      for (NodeId i : nb) acc += x[i];
      link = acc / static_cast<double>(nb.size());
    }
    y[j] = alpha * link + (1.0 - alpha) * mean;
  }
}

void google_apply_block(const DirectedGraph& g, double alpha, std::span<const double> x, std::span<double> y,
                        std::size_t k) {
  check_sizes(g, x.size(), y.size(), k);
  const auto n = g.node_count();
  std::vector<double> xc(n), yc(n);
  for (std::size_t q = 0; q < k; ++q) {
    for (std::size_t i = 0; i < n; ++i) xc[i] = x[i * k + q];
    google_apply(g, alpha, xc, yc);
    for (std::size_t i = 0; i < n; ++i) y[i * k + q] = yc[i];
  }
}

}  // namespace serial

}  // namespace rgm::kernels
