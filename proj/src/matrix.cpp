#include "hobox/matrix.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "hobox/error.hpp"

namespace hobox {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

std::vector<double> Matrix::column(std::size_t j) const {
  std::vector<double> c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::leading_block(std::size_t n) const {
  if (n > rows_ || n > cols_) fail(ErrorCode::InvalidArgument, "leading_block larger than matrix");
  Matrix b(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) b(i, j) = (*this)(i, j);
  return b;
}

double Matrix::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) fail(ErrorCode::InvalidArgument, "matrix product: dimension mismatch");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

std::vector<double> operator*(const Matrix& a, std::span<const double> x) {
  if (a.cols() != x.size()) fail(ErrorCode::InvalidArgument, "matrix-vector product: dimension mismatch");
  std::vector<double> y(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

double symmetry_defect(const Matrix& a) {
  if (!a.square()) fail(ErrorCode::InvalidArgument, "symmetry_defect: matrix not square");
  const double scale = a.max_abs();
  if (scale == 0.0) return 0.0;
  double d = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i + 1; j < a.cols(); ++j) d = std::max(d, std::abs(a(i, j) - a(j, i)));
  return d / scale;
}

void write_csv(std::ostream& os, const Matrix& a) {
  char buf[32];
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%.16e", a(i, j));
      if (j) os << ',';
      os << buf;
    }
    os << '\n';
  }
}

}  // namespace hobox
