#include "bagel/numerics/matrix.hpp"

#include <cmath>
#include <string>

#include "bagel/errors.hpp"

namespace bagel::numerics {
namespace {

void require_finite(std::span<const double> data, const char* what) {
  for (double v : data) {
    if (!std::isfinite(v)) {
      throw DomainError(std::string(what) + ": non-finite entry");
    }
  }
}

}  // namespace

Vector::Vector(std::size_t len, double fill) : data_(len, fill) {
  require_finite(std::span<const double>(&fill, 1), "Vector");
}

Vector::Vector(std::vector<double> data) : data_(std::move(data)) {
  require_finite(data_, "Vector");
}

Vector::Vector(std::initializer_list<double> values) : data_(values) {
  require_finite(data_, "Vector");
}

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {
  require_finite(std::span<const double>(&fill, 1), "Matrix");
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_) {
    throw DimensionError("Matrix: data length " + std::to_string(data_.size()) + " != " +
                         std::to_string(rows_) + "x" + std::to_string(cols_));
  }
  require_finite(data_, "Matrix");
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) : rows_(rows.size()) {
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionError("Matrix: ragged initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
  require_finite(data_, "Matrix");
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Vector Matrix::column(std::size_t c) const {
  Vector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

Vector multiply(const Matrix& a, const Vector& x) {
  if (a.cols() != x.size()) throw DimensionError("multiply: matrix/vector shape mismatch");
  Vector out(a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    double acc = 0.0;
    auto row = a.row(r);
    for (std::size_t c = 0; c < a.cols(); ++c) acc += row[c] * x[c];
    out[r] = acc;
  }
  return out;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw DimensionError("multiply: inner dimensions differ");
  Matrix out(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double s = a(r, k);
      if (s == 0.0) continue;
      for (std::size_t c = 0; c < b.cols(); ++c) out(r, c) += s * b(k, c);
    }
  }
  return out;
}

Matrix hadamard(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("hadamard: shape mismatch");
  }
  Matrix out = a;
  auto dst = out.values();
  auto rhs = b.values();
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] *= rhs[i];
  return out;
}

Vector subtract(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw DimensionError("subtract: length mismatch");
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

Matrix select_rows(const Matrix& a, std::span<const std::size_t> rows) {
  std::vector<double> data;
  data.reserve(rows.size() * a.cols());
  for (std::size_t r : rows) {
    if (r >= a.rows()) throw DimensionError("select_rows: index out of range");
    auto src = a.row(r);
    data.insert(data.end(), src.begin(), src.end());
  }
  return Matrix(rows.size(), a.cols(), std::move(data));
}

Vector select(const Vector& v, std::span<const std::size_t> indices) {
  std::vector<double> data;
  data.reserve(indices.size());
  for (std::size_t i : indices) {
    if (i >= v.size()) throw DimensionError("select: index out of range");
    data.push_back(v[i]);
  }
  return Vector(std::move(data));
}

double norm2(const Vector& v) {
  double acc = 0.0;
  for (double x : v) acc += x * x;
  return std::sqrt(acc);
}

double frobenius(const Matrix& m) {
  double acc = 0.0;
  for (double x : m.values()) acc += x * x;
  return std::sqrt(acc);
}

}  // namespace bagel::numerics
