#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace rgm {

/// Row-major dense matrix of doubles.
class DenseMatrix {
public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), values_(rows * cols, fill) {}
  /// Row-major nested initializer, e.g. {{0.6, 0.5}, {0.4, 0.5}}.
  DenseMatrix(std::initializer_list<std::initializer_list<double>> rows);

  static DenseMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  double& operator()(std::size_t r, std::size_t c) { return values_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return values_[r * cols_ + c]; }

  std::span<double> values() noexcept { return values_; }
  std::span<const double> values() const noexcept { return values_; }

  double column_sum(std::size_t c) const;
  double total() const;
  DenseMatrix transposed() const;

  /// y = M x
  std::vector<double> apply(std::span<const double> x) const;
  /// y = M^T x
  std::vector<double> apply_transpose(std::span<const double> x) const;

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> values_;
};

DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b);

/// Largest |a - b| over all entries.
double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b);

/// Copy with every column scaled to sum to one. Zero columns are left as is.
DenseMatrix normalize_columns(const DenseMatrix& m);

struct StationaryResult {
  std::vector<double> p;
  double residual = 0.0;
  std::size_t iterations = 0;
};

/// Stationary vector of a column-stochastic dense matrix by power iteration
/// from the uniform vector. Stops when ||M p - p||_1 <= tol; throws
/// NumericalError after max_iter sweeps.
StationaryResult dense_power_stationary(const DenseMatrix& m, double tol = 1e-12,
                                        std::size_t max_iter = 100000);

}  // namespace rgm
