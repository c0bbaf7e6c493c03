#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "rgm/dense.hpp"
#include "rgm/graph.hpp"

namespace rgm::test {

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

inline double l1_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m += std::abs(a[k] - b[k]);
  return m;
}

inline std::vector<double> random_vector(std::size_t n, std::uint64_t seed, double lo = 0.0, double hi = 1.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> v(n);
  for (double& x : v) x = u(rng);
  return v;
}

/// Random column-stochastic matrix with strictly positive entries.
inline DenseMatrix random_stochastic(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.01, 1.0);
  DenseMatrix m(n, n);
  for (double& v : m.values()) v = u(rng);
  return normalize_columns(m);
}

/// First `count` distinct node ids drawn with a seeded shuffle.
inline std::vector<NodeId> random_subset(std::size_t n, std::size_t count, std::uint64_t seed) {
  std::vector<NodeId> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = static_cast<NodeId>(i);
  std::mt19937_64 rng(seed);
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(count);
  return all;
}

}  // namespace rgm::test
