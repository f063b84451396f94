#include "sae/linalg.hpp"

#include <cmath>

#include "sae/error.hpp"

namespace sae {

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {
  if (rows == 0 || cols == 0) {
    throw DimensionError("matrix dimensions must be >= 1, got " + shape());
  }
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (rows == 0 || cols == 0) {
    throw DimensionError("matrix dimensions must be >= 1, got " + shape());
  }
  if (data_.size() != rows * cols) {
    throw DimensionError("matrix " + shape() + " needs " + std::to_string(rows * cols) +
                         " values, got " + std::to_string(data_.size()));
  }
}

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty() || rows.front().empty()) {
    throw DimensionError("matrix needs at least one row and one column");
  }
  const std::size_t cols = rows.front().size();
  std::vector<double> data;
  data.reserve(rows.size() * cols);
  for (const auto& r : rows) {
    if (r.size() != cols) {
      throw DimensionError("ragged rows: expected " + std::to_string(cols) + " columns, got " +
                           std::to_string(r.size()));
    }
    data.insert(data.end(), r.begin(), r.end());
  }
  return Matrix(rows.size(), cols, std::move(data));
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

std::string Matrix::shape() const {
  return "(" + std::to_string(rows_) + "x" + std::to_string(cols_) + ")";
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("matmul shape mismatch: " + a.shape() + " x " + b.shape());
  }
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto out_row = out.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      auto b_row = b.row(k);
      for (std::size_t j = 0; j < b.cols(); ++j) out_row[j] += aik * b_row[j];
    }
  }
  return out;
}

Vector affine(const Matrix& m, std::span<const double> x, std::span<const double> bias) {
  if (x.size() != m.cols() || bias.size() != m.rows()) {
    throw DimensionError("affine map " + m.shape() + " applied to input of length " +
                         std::to_string(x.size()) + " with bias of length " +
                         std::to_string(bias.size()));
  }
  Vector out(m.rows());
  affine_into(m, x, bias, out);
  return out;
}

void affine_into(const Matrix& m, std::span<const double> x, std::span<const double> bias,
                 std::span<double> out) noexcept {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    auto w = m.row(r);
    double acc = bias[r];
    for (std::size_t c = 0; c < w.size(); ++c) acc += w[c] * x[c];
    out[r] = acc;
  }
}

void transposed_times_into(const Matrix& m, std::span<const double> v,
                           std::span<double> out) noexcept {
  for (std::size_t c = 0; c < m.cols(); ++c) out[c] = 0.0;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    auto w = m.row(r);
    const double vr = v[r];
    for (std::size_t c = 0; c < w.size(); ++c) out[c] += w[c] * vr;
  }
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw DimensionError("dot product of lengths " + std::to_string(a.size()) + " and " +
                         std::to_string(b.size()));
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

double sigmoid(double x) noexcept {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

Vector sigmoid(std::span<const double> x) {
  Vector out(x.begin(), x.end());
  sigmoid_inplace(out);
  return out;
}

void sigmoid_inplace(std::span<double> x) noexcept {
  for (double& v : x) v = sigmoid(v);
}

}  // namespace sae
