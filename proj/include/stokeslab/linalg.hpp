#pragma once

// Dense complex matrices at working precision.

#include "stokeslab/precise.hpp"

#include <vector>

namespace stokeslab {

class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols) {}

  static CMatrix identity(int n);

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }

  Complex& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
  const Complex& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

  ComplexVector column(int j) const;
  void set_column(int j, const ComplexVector& v);

  friend CMatrix operator*(const CMatrix& a, const CMatrix& b);
  friend ComplexVector operator*(const CMatrix& a, const ComplexVector& v);
  friend CMatrix operator-(const CMatrix& a, const CMatrix& b);

  /// max_ij |a_ij|.
  Real norm_max() const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Complex> a_;
};

/// LU factorization with partial pivoting; throws DomainError when singular.
class LU {
 public:
  explicit LU(const CMatrix& a);
  ComplexVector solve(const ComplexVector& b) const;
  CMatrix inverse() const;
  Complex determinant() const;

 private:
  CMatrix lu_;
  std::vector<int> perm_;
  int sign_ = 1;
};

/// ||A||_1 ||A^{-1}||_1 as a double (infinity when singular).
double condition_estimate(const CMatrix& a);

}  // namespace stokeslab
