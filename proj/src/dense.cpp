#include "rgm/dense.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rgm/error.hpp"

namespace rgm {

DenseMatrix::DenseMatrix(std::initializer_list<std::initializer_list<double>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  values_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw InvalidArgument("ragged matrix initializer");
    values_.insert(values_.end(), r.begin(), r.end());
  }
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

double DenseMatrix::column_sum(std::size_t c) const {
  double s = 0.0;
  for (std::size_t r = 0; r < rows_; ++r) s += (*this)(r, c);
  return s;
}

double DenseMatrix::total() const {
  double s = 0.0;
  for (double v : values_) s += v;
  return s;
}

DenseMatrix DenseMatrix::transposed() const {
  DenseMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

std::vector<double> DenseMatrix::apply(std::span<const double> x) const {
  if (x.size() != cols_) throw InvalidArgument("DenseMatrix::apply: length mismatch");
  std::vector<double> y(rows_, 0.0);
  for (std::size_t r = 0; r < rows_; ++r) {
    double acc = 0.0;
    for (std::size_t c = 0; c < cols_; ++c) acc += (*this)(r, c) * x[c];
    y[r] = acc;
  }
  return y;
}

std::vector<double> DenseMatrix::apply_transpose(std::span<const double> x) const {
  if (x.size() != rows_) throw InvalidArgument("DenseMatrix::apply_transpose: length mismatch");
  std::vector<double> y(cols_, 0.0);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) y[c] += (*this)(r, c) * x[r];
  return y;
}

DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw InvalidArgument("matrix shape mismatch");
  DenseMatrix out = a;
  for (std::size_t k = 0; k < out.values().size(); ++k) out.values()[k] += b.values()[k];
  return out;
}

DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw InvalidArgument("matrix shape mismatch");
  DenseMatrix out = a;
  for (std::size_t k = 0; k < out.values().size(); ++k) out.values()[k] -= b.values()[k];
  return out;
}

double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw InvalidArgument("matrix shape mismatch");
  double m = 0.0;
  for (std::size_t k = 0; k < a.values().size(); ++k) m = std::max(m, std::abs(a.values()[k] - b.values()[k]));
  return m;
}

DenseMatrix normalize_columns(const DenseMatrix& m) {
  DenseMatrix out = m;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    const double s = m.column_sum(c);
    if (s == 0.0) continue;
    for (std::size_t r = 0; r < m.rows(); ++r) out(r, c) /= s;
  }
  return out;
}

StationaryResult dense_power_stationary(const DenseMatrix& m, double tol, std::size_t max_iter) {
  if (!m.square() || m.rows() == 0) throw InvalidArgument("stationary vector needs a non-empty square matrix");
  if (!(tol > 0.0)) throw InvalidArgument("tolerance must be positive");
  const auto n = m.rows();
  StationaryResult res;
  res.p.assign(n, 1.0 / static_cast<double>(n));
  for (std::size_t it = 1; it <= max_iter; ++it) {
    auto next = m.apply(res.p);
    double s = 0.0;
    for (double v : next) s += v;
    if (!(s > 0.0) || !std::isfinite(s)) throw NumericalError("stationary iteration lost all mass");
    for (double& v : next) v /= s;
    double r = 0.0;
    for (std::size_t i = 0; i < n; ++i) r += std::abs(next[i] - res.p[i]);
    res.p = std::move(next);
    res.residual = r;
    res.iterations = it;
    if (r <= tol) return res;
  }
  throw NumericalError("dense stationary iteration did not converge in " + std::to_string(max_iter) +
                           " iterations (residual " + std::to_string(res.residual) + ")",
                       res.residual);
}

}  // namespace rgm
