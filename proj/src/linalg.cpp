#include "stokeslab/linalg.hpp"

#include "stokeslab/errors.hpp"

#include <limits>

namespace stokeslab {

CMatrix CMatrix::identity(int n) {
  CMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = Complex(1);
  return m;
}

ComplexVector CMatrix::column(int j) const {
  ComplexVector v(rows_);
  for (int i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

void CMatrix::set_column(int j, const ComplexVector& v) {
  if (static_cast<int>(v.size()) != rows_) throw UsageError("column length mismatch");
  for (int i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  if (a.cols_ != b.rows_) throw UsageError("matrix shape mismatch");
  CMatrix c(a.rows_, b.cols_);
  for (int i = 0; i < a.rows_; ++i)
    for (int k = 0; k < a.cols_; ++k) {
      const Complex& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (int j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

ComplexVector operator*(const CMatrix& a, const ComplexVector& v) {
  if (a.cols_ != static_cast<int>(v.size())) throw UsageError("matrix-vector shape mismatch");
  ComplexVector out(a.rows_);
  for (int i = 0; i < a.rows_; ++i)
    for (int j = 0; j < a.cols_; ++j) out[i] += a(i, j) * v[j];
  return out;
}

CMatrix operator-(const CMatrix& a, const CMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw UsageError("matrix shape mismatch");
  CMatrix c = a;
  for (std::size_t k = 0; k < c.a_.size(); ++k) c.a_[k] -= b.a_[k];
  return c;
}

Real CMatrix::norm_max() const {
  Real best = 0;
  for (const auto& z : a_) {
    Real m = abs(z);
    if (m > best) best = m;
  }
  return best;
}

LU::LU(const CMatrix& a) : lu_(a) {
  const int n = a.rows();
  if (a.cols() != n) throw UsageError("LU needs a square matrix");
  perm_.resize(n);
  for (int i = 0; i < n; ++i) perm_[i] = i;
  for (int k = 0; k < n; ++k) {
    int piv = k;
    Real best = abs(lu_(k, k));
    for (int i = k + 1; i < n; ++i) {
      Real m = abs(lu_(i, k));
      if (m > best) {
        best = m;
        piv = i;
      }
    }
    if (best == 0) throw DomainError("singular matrix");
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(lu_(k, j), lu_(piv, j));
      std::swap(perm_[k], perm_[piv]);
      sign_ = -sign_;
    }
    for (int i = k + 1; i < n; ++i) {
      lu_(i, k) /= lu_(k, k);
      for (int j = k + 1; j < n; ++j) lu_(i, j) -= lu_(i, k) * lu_(k, j);
    }
  }
}

ComplexVector LU::solve(const ComplexVector& b) const {
  const int n = lu_.rows();
  if (static_cast<int>(b.size()) != n) throw UsageError("right-hand side length mismatch");
  ComplexVector x(n);
  for (int i = 0; i < n; ++i) {
    x[i] = b[perm_[i]];
    for (int j = 0; j < i; ++j) x[i] -= lu_(i, j) * x[j];
  }
  for (int i = n - 1; i >= 0; --i) {
    for (int j = i + 1; j < n; ++j) x[i] -= lu_(i, j) * x[j];
    x[i] /= lu_(i, i);
  }
  return x;
}

CMatrix LU::inverse() const {
  const int n = lu_.rows();
  CMatrix inv(n, n);
  for (int j = 0; j < n; ++j) {
    ComplexVector e(n);
    e[j] = Complex(1);
    inv.set_column(j, solve(e));
  }
  return inv;
}

Complex LU::determinant() const {
  Complex d(sign_);
  for (int i = 0; i < lu_.rows(); ++i) d *= lu_(i, i);
  return d;
}

namespace {

Real norm1(const CMatrix& a) {
  Real best = 0;
  for (int j = 0; j < a.cols(); ++j) {
    Real s = 0;
    for (int i = 0; i < a.rows(); ++i) s += abs(a(i, j));
    if (s > best) best = s;
  }
  return best;
}

}  // namespace

double condition_estimate(const CMatrix& a) {
  try {
    LU lu(a);
    return to_double(norm1(a) * norm1(lu.inverse()));
  } catch (const DomainError&) {
    return std::numeric_limits<double>::infinity();
  }
}

}  // namespace stokeslab
