#include "oracle.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <deque>

#include "rgm/error.hpp"

namespace rgm::oracle {

namespace {

Eigen::MatrixXd to_eigen(const DenseMatrix& m) {
  Eigen::MatrixXd e(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) e(r, c) = m(r, c);
  return e;
}

DenseMatrix from_eigen(const Eigen::MatrixXd& e) {
  DenseMatrix m(e.rows(), e.cols());
  for (Eigen::Index r = 0; r < e.rows(); ++r)
    for (Eigen::Index c = 0; c < e.cols(); ++c) m(r, c) = e(r, c);
  return m;
}

std::vector<double> real_vector(const Eigen::VectorXcd& v) {
  std::vector<double> out(v.size());
  for (Eigen::Index k = 0; k < v.size(); ++k) out[k] = v[k].real();
  return out;
}

Eigen::Index leading_index(const Eigen::VectorXcd& values) {
  Eigen::Index best = 0;
  for (Eigen::Index k = 1; k < values.size(); ++k)
    if (std::abs(values[k]) > std::abs(values[best])) best = k;
  return best;
}

}  // namespace

DenseMatrix dense_google(const DirectedGraph& g, double alpha) {
  const auto n = g.node_count();
  const double nd = static_cast<double>(n);
  DenseMatrix m(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    const auto nb = g.out_neighbors(static_cast<NodeId>(j));
    for (std::size_t i = 0; i < n; ++i) {
      double s = nb.empty() ? 1.0 / nd : 0.0;
      if (std::find(nb.begin(), nb.end(), static_cast<NodeId>(i)) != nb.end()) s = 1.0 / static_cast<double>(nb.size());
      m(i, j) = alpha * s + (1.0 - alpha) / nd;
    }
  }
  return m;
}

std::vector<double> dense_stationary(const DenseMatrix& m) {
  const auto n = m.rows();
  Eigen::MatrixXd a = to_eigen(m) - Eigen::MatrixXd::Identity(n, n);
  a.row(n - 1).setOnes();
  Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
  b[n - 1] = 1.0;
  Eigen::VectorXd p = a.fullPivLu().solve(b);
  return {p.data(), p.data() + n};
}

std::vector<double> eigen_stationary(const DenseMatrix& m) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(to_eigen(m));
  const auto k = leading_index(es.eigenvalues());
  auto v = real_vector(es.eigenvectors().col(k));
  double s = 0.0;
  for (double x : v) s += x;
  for (double& x : v) x /= s;
  return v;
}

DenseMatrix block(const DenseMatrix& m, const std::vector<NodeId>& rows, const std::vector<NodeId>& cols) {
  DenseMatrix b(rows.size(), cols.size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < cols.size(); ++c) b(r, c) = m(rows[r], cols[c]);
  return b;
}

std::vector<NodeId> complement(std::size_t n, const std::vector<NodeId>& subset) {
  std::vector<char> in(n, 0);
  for (NodeId i : subset) in[i] = 1;
  std::vector<NodeId> out;
  for (std::size_t i = 0; i < n; ++i)
    if (!in[i]) out.push_back(static_cast<NodeId>(i));
  return out;
}

DenseMatrix dense_reduce(const DenseMatrix& g, const std::vector<NodeId>& subset) {
  const auto s = complement(g.rows(), subset);
  const auto g_rr = to_eigen(block(g, subset, subset));
  if (s.empty()) return from_eigen(g_rr);
  const auto g_rs = to_eigen(block(g, subset, s));
  const auto g_sr = to_eigen(block(g, s, subset));
  const auto g_ss = to_eigen(block(g, s, s));
  const Eigen::MatrixXd a = Eigen::MatrixXd::Identity(s.size(), s.size()) - g_ss;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
  if (!lu.isInvertible()) throw NumericalError("1 - G_ss is singular");
  const Eigen::MatrixXd x = lu.solve(g_sr);
  return from_eigen(g_rr + g_rs * x);
}

DenseMatrix dense_neumann_indirect(const DenseMatrix& g, const std::vector<NodeId>& subset, std::size_t l_max) {
  const auto s = complement(g.rows(), subset);
  const auto g_rs = to_eigen(block(g, subset, s));
  const auto g_sr = to_eigen(block(g, s, subset));
  const auto g_ss = to_eigen(block(g, s, s));
  Eigen::MatrixXd term = g_sr;
  Eigen::MatrixXd sum = g_sr;
  for (std::size_t l = 1; l <= l_max; ++l) {
    term = g_ss * term;
    sum += term;
  }
  return from_eigen(g_rs * sum);
}

DenseEigenpair dense_leading_eigenpair(const DenseMatrix& m) {
  const auto a = to_eigen(m);
  Eigen::EigenSolver<Eigen::MatrixXd> right(a);
  Eigen::EigenSolver<Eigen::MatrixXd> left(a.transpose());
  const auto kr = leading_index(right.eigenvalues());
  const auto kl = leading_index(left.eigenvalues());
  DenseEigenpair ep;
  ep.lambda = right.eigenvalues()[kr].real();
  ep.right = real_vector(right.eigenvectors().col(kr));
  ep.left = real_vector(left.eigenvectors().col(kl));
  double s = 0.0;
  for (double x : ep.right) s += x;
  for (double& x : ep.right) x /= s;
  double dot = 0.0;
  for (std::size_t k = 0; k < ep.left.size(); ++k) dot += ep.left[k] * ep.right[k];
  for (double& x : ep.left) x /= dot;
  return ep;
}

std::vector<double> brute_sensitivity(const DenseMatrix& g, std::size_t i, std::size_t j, double delta) {
  DenseMatrix h = g;
  h(i, j) *= 1.0 + delta;
  double s = 0.0;
  for (std::size_t r = 0; r < h.rows(); ++r) s += h(r, j);
  for (std::size_t r = 0; r < h.rows(); ++r) h(r, j) /= s;
  const auto p = dense_stationary(g);
  const auto q = dense_stationary(h);
  std::vector<double> d(p.size());
  for (std::size_t a = 0; a < p.size(); ++a) d[a] = (q[a] - p[a]) / (delta * p[a]);
  return d;
}

double brute_imbalance(const DenseMatrix& g, std::size_t a, std::size_t b, double delta) {
  const auto d1 = brute_sensitivity(g, b, a, delta);
  const auto d2 = brute_sensitivity(g, a, b, delta);
  return (d1[a] + d2[a]) - (d1[b] + d2[b]);
}

EdgeSet friend_closure(const DenseMatrix& m, const std::vector<std::size_t>& leaders, std::size_t k) {
  EdgeSet edges;
  std::set<std::size_t> seen(leaders.begin(), leaders.end());
  std::deque<std::pair<std::size_t, bool>> queue;
  for (auto l : leaders) queue.emplace_back(l, true);
  while (!queue.empty()) {
    const auto [node, primary] = queue.front();
    queue.pop_front();
    std::vector<std::pair<double, std::size_t>> col;
    for (std::size_t i = 0; i < m.rows(); ++i)
      if (i != node) col.emplace_back(-m(i, node), i);
    std::sort(col.begin(), col.end());
    for (std::size_t t = 0; t < k && t < col.size(); ++t) {
      const auto dst = col[t].second;
      edges.emplace(node, dst, primary);
      if (seen.insert(dst).second) queue.emplace_back(dst, false);
    }
  }
  return edges;
}

}  // namespace rgm::oracle
