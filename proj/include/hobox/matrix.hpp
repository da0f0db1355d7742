#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

namespace hobox {

/// Dense row-major real matrix. Desk-scale problems only (dimension <= ~500).
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const double> data() const { return data_; }
  std::span<double> data() { return data_; }

  std::vector<double> column(std::size_t j) const;
  Matrix transpose() const;
  Matrix leading_block(std::size_t n) const;

  double max_abs() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
std::vector<double> operator*(const Matrix& a, std::span<const double> x);

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);

/// Largest |a_ij - a_ji| relative to max |a_ij|; 0 for the zero matrix.
double symmetry_defect(const Matrix& a);

/// Full symmetric storage, one row per line, 17 significant digits.
void write_csv(std::ostream& os, const Matrix& a);

}  // namespace hobox
