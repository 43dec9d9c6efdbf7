#pragma once

#include "oscint/gaussian_rational.hpp"

#include <string>
#include <vector>

namespace oscint {

// Small dense matrix over Q(i).
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<GQ>> init);

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  GQ& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const GQ& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Matrix transpose() const;
  Matrix scaled(const GQ& c) const;
  bool is_symmetric() const;
  bool is_zero() const;

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b) { return a + b.scaled(GQ(-1)); }
  friend bool operator==(const Matrix& a, const Matrix& b) = default;

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<GQ> data_;
};

// Throws Error(SingularMatrix) when a is not invertible.
Matrix inverse(const Matrix& a);
GQ determinant(const Matrix& a);

}  // namespace oscint
