#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace sae {

using Vector = std::vector<double>;

// Dense row-major matrix. Shapes are at least 1x1.
class Matrix {
 public:
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);
  // Nested initializer, one inner list per row; all rows must have equal length.
  static Matrix from_rows(const std::vector<std::vector<double>>& rows);
  static Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }

  double& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const noexcept {
    return {data_.data() + r * cols_, cols_};
  }

  std::span<double> data() noexcept { return data_; }
  std::span<const double> data() const noexcept { return data_; }

  std::string shape() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
};

// Standard product; throws DimensionError naming both shapes when a.cols != b.rows.
Matrix matmul(const Matrix& a, const Matrix& b);

// out = m * x + bias. Sizes are checked.
Vector affine(const Matrix& m, std::span<const double> x, std::span<const double> bias);

// Unchecked kernel: out[r] = bias[r] + sum_c m(r,c) * x[c].
void affine_into(const Matrix& m, std::span<const double> x, std::span<const double> bias,
                 std::span<double> out) noexcept;

// Unchecked kernel: out[c] = sum_r m(r,c) * v[r].
void transposed_times_into(const Matrix& m, std::span<const double> v,
                           std::span<double> out) noexcept;

double dot(std::span<const double> a, std::span<const double> b);

// Numerically stable logistic function; never overflows.
double sigmoid(double x) noexcept;
Vector sigmoid(std::span<const double> x);
void sigmoid_inplace(std::span<double> x) noexcept;

}  // namespace sae
