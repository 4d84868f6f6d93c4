#pragma once

// Configurable-precision real and complex arithmetic.
//
// Real is an MPFR-backed float whose precision (in decimal digits) is fixed
// when a value is created: arithmetic results inherit the precision of their
// operands, freshly constructed constants take the current default. All
// numeric code runs inside a PrecisionScope so constants and inputs agree.

#include <boost/multiprecision/mpfr.hpp>

#include <complex>
#include <string>
#include <vector>

namespace stokeslab {

using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;

/// Sets the default precision for newly created Real values and restores the
/// previous default on destruction. Not thread-safe: the default is global.
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned digits10);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

  unsigned digits() const noexcept { return digits_; }

 private:
  unsigned digits_;
  unsigned saved_;
};

unsigned current_digits();

/// Copy of x carried at (at least) the given precision.
Real promote(const Real& x, unsigned digits10);
/// x correctly rounded to exactly the given precision.
Real round_to(const Real& x, unsigned digits10);

Real pi_real();

/// Complex number with Real parts (the PreciseComplex of the design).
class Complex {
 public:
  Complex() : re_(0), im_(0) {}
  Complex(Real re) : re_(std::move(re)), im_(0) {}  // NOLINT: implicit by design of the field
  Complex(Real re, Real im) : re_(std::move(re)), im_(std::move(im)) {}
  Complex(int re) : re_(re), im_(0) {}  // NOLINT
  Complex(double re, double im) : re_(re), im_(im) {}

  const Real& re() const noexcept { return re_; }
  const Real& im() const noexcept { return im_; }

  unsigned precision() const { return std::min(re_.precision(), im_.precision()); }

  Complex& operator+=(const Complex& o);
  Complex& operator-=(const Complex& o);
  Complex& operator*=(const Complex& o);
  Complex& operator/=(const Complex& o);
  Complex& operator*=(const Real& s);

  Complex operator-() const { return {-re_, -im_}; }

  friend Complex operator+(Complex a, const Complex& b) { return a += b; }
  friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
  friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
  friend Complex operator/(Complex a, const Complex& b) { return a /= b; }
  friend Complex operator*(Complex a, const Real& s) { return a *= s; }
  friend Complex operator*(const Real& s, Complex a) { return a *= s; }

  bool is_zero() const { return re_ == 0 && im_ == 0; }

 private:
  Real re_;
  Real im_;
};

Complex promote(const Complex& z, unsigned digits10);
Complex round_to(const Complex& z, unsigned digits10);
Complex conj(const Complex& z);
Real norm2(const Complex& z);  // |z|^2
Real abs(const Complex& z);
Real arg(const Complex& z);     // principal, in (-pi, pi]
Complex exp(const Complex& z);
Complex log(const Complex& z);  // principal branch
Complex sin(const Complex& z);
Complex cos(const Complex& z);
Complex expi(const Real& theta);  // e^{i theta}
Complex from_polar_log(const Real& log_modulus, const Real& argument);  // e^{lm + i arg}

/// log10 |z| as a double; -inf for zero.
double log10_abs(const Complex& z);

double to_double(const Real& x);
std::complex<double> to_cdouble(const Complex& z);

/// Decimal string with the given number of significant digits (default: full precision).
std::string to_string(const Real& x, int digits = 0);
/// "re,im" pair in decimal.
std::string to_string(const Complex& z, int digits = 0);

/// Parse "re" or "re,im" (also "re+imi" is not accepted; keep it simple).
Complex parse_complex(const std::string& text);

/// A nonzero complex number stored as (modulus, argument) with an unbounded
/// argument, so non-integer powers follow the tracked branch.
class ArgTracked {
 public:
  ArgTracked(Real modulus, Real argument) : modulus_(std::move(modulus)), arg_(std::move(argument)) {}

  const Real& modulus() const noexcept { return modulus_; }
  const Real& argument() const noexcept { return arg_; }

  /// log r + i theta.
  Complex log() const;
  /// exp(t (log r + i theta)).
  Complex pow(const Complex& t) const;
  /// The represented complex value r e^{i theta}.
  Complex value() const;

  ArgTracked with_argument_shift(const Real& delta) const { return {modulus_, arg_ + delta}; }
  ArgTracked promoted(unsigned digits10) const {
    return {promote(modulus_, digits10), promote(arg_, digits10)};
  }

 private:
  Real modulus_;
  Real arg_;
};

using ComplexVector = std::vector<Complex>;

ComplexVector promote(const ComplexVector& v, unsigned digits10);
ComplexVector round_to(const ComplexVector& v, unsigned digits10);
Real norm_inf(const ComplexVector& v);
Real norm2(const ComplexVector& v);  // Euclidean norm (not squared)
ComplexVector operator-(const ComplexVector& a, const ComplexVector& b);
ComplexVector operator+(const ComplexVector& a, const ComplexVector& b);
ComplexVector scaled(const ComplexVector& v, const Complex& c);

/// max|a_i - b_i| / max|b_i|, or the absolute difference when b is zero.
double relative_difference(const ComplexVector& a, const ComplexVector& b);

}  // namespace stokeslab
