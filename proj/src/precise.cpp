#include "stokeslab/precise.hpp"

#include "stokeslab/errors.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

namespace stokeslab {

PrecisionScope::PrecisionScope(unsigned digits10) : digits_(digits10), saved_(Real::default_precision()) {
  Real::default_precision(digits10);
}

PrecisionScope::~PrecisionScope() { Real::default_precision(saved_); }

unsigned current_digits() { return Real::default_precision(); }

Real promote(const Real& x, unsigned digits10) {
  Real y = x;
  if (y.precision() < digits10) y.precision(digits10);
  return y;
}

Real round_to(const Real& x, unsigned digits10) {
  Real y;
  y.precision(digits10);
  mpfr_set(y.backend().data(), x.backend().data(), MPFR_RNDN);
  return y;
}

Real pi_real() {
  Real r;
  mpfr_const_pi(r.backend().data(), MPFR_RNDN);
  return r;
}

Complex& Complex::operator+=(const Complex& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

Complex& Complex::operator-=(const Complex& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

Complex& Complex::operator*=(const Complex& o) {
  Real r = re_ * o.re_ - im_ * o.im_;
  im_ = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(r);
  return *this;
}

Complex& Complex::operator/=(const Complex& o) {
  // Smith's algorithm keeps the intermediate magnitudes bounded.
  if (o.re_ == 0 && o.im_ == 0) throw DomainError("complex division by zero");
  using boost::multiprecision::abs;
  if (abs(o.re_) >= abs(o.im_)) {
    Real ratio = o.im_ / o.re_;
    Real denom = o.re_ + o.im_ * ratio;
    Real r = (re_ + im_ * ratio) / denom;
    im_ = (im_ - re_ * ratio) / denom;
    re_ = std::move(r);
  } else {
    Real ratio = o.re_ / o.im_;
    Real denom = o.re_ * ratio + o.im_;
    Real r = (re_ * ratio + im_) / denom;
    im_ = (im_ * ratio - re_) / denom;
    re_ = std::move(r);
  }
  return *this;
}

Complex& Complex::operator*=(const Real& s) {
  re_ *= s;
  im_ *= s;
  return *this;
}

Complex promote(const Complex& z, unsigned digits10) {
  return {promote(z.re(), digits10), promote(z.im(), digits10)};
}

Complex round_to(const Complex& z, unsigned digits10) {
  return {round_to(z.re(), digits10), round_to(z.im(), digits10)};
}

Complex conj(const Complex& z) { return {z.re(), -z.im()}; }

Real norm2(const Complex& z) { return z.re() * z.re() + z.im() * z.im(); }

Real abs(const Complex& z) { return boost::multiprecision::hypot(z.re(), z.im()); }

Real arg(const Complex& z) { return boost::multiprecision::atan2(z.im(), z.re()); }

Complex exp(const Complex& z) {
  Real m = boost::multiprecision::exp(z.re());
  return {m * boost::multiprecision::cos(z.im()), m * boost::multiprecision::sin(z.im())};
}

Complex log(const Complex& z) {
  if (z.is_zero()) throw DomainError("log of zero");
  return {boost::multiprecision::log(abs(z)), arg(z)};
}

Complex sin(const Complex& z) {
  // sin(x+iy) = sin x cosh y + i cos x sinh y
  return {boost::multiprecision::sin(z.re()) * boost::multiprecision::cosh(z.im()),
          boost::multiprecision::cos(z.re()) * boost::multiprecision::sinh(z.im())};
}

Complex cos(const Complex& z) {
  return {boost::multiprecision::cos(z.re()) * boost::multiprecision::cosh(z.im()),
          -(boost::multiprecision::sin(z.re()) * boost::multiprecision::sinh(z.im()))};
}

Complex expi(const Real& theta) { return {boost::multiprecision::cos(theta), boost::multiprecision::sin(theta)}; }

Complex from_polar_log(const Real& log_modulus, const Real& argument) {
  Real m = boost::multiprecision::exp(log_modulus);
  return {m * boost::multiprecision::cos(argument), m * boost::multiprecision::sin(argument)};
}

double log10_abs(const Complex& z) {
  if (z.is_zero()) return -std::numeric_limits<double>::infinity();
  // Large exponents overflow double, so work with the MPFR log directly.
  return to_double(boost::multiprecision::log10(abs(z)));
}

double to_double(const Real& x) { return x.convert_to<double>(); }

std::complex<double> to_cdouble(const Complex& z) { return {to_double(z.re()), to_double(z.im())}; }

std::string to_string(const Real& x, int digits) {
  std::ostringstream os;
  int d = digits > 0 ? digits : static_cast<int>(x.precision());
  os << std::setprecision(d) << std::scientific << x;
  return os.str();
}

std::string to_string(const Complex& z, int digits) { return to_string(z.re(), digits) + "," + to_string(z.im(), digits); }

Complex parse_complex(const std::string& text) {
  auto comma = text.find(',');
  try {
    if (comma == std::string::npos) return {Real(text), Real(0)};
    return {Real(text.substr(0, comma)), Real(text.substr(comma + 1))};
  } catch (const std::exception&) {
    throw UsageError("cannot parse complex number '" + text + "'");
  }
}

Complex ArgTracked::log() const {
  if (modulus_ <= 0) throw DomainError("ArgTracked modulus must be positive");
  return {boost::multiprecision::log(modulus_), arg_};
}

Complex ArgTracked::pow(const Complex& t) const { return exp(t * log()); }

Complex ArgTracked::value() const { return modulus_ * expi(arg_); }

ComplexVector promote(const ComplexVector& v, unsigned digits10) {
  ComplexVector out;
  out.reserve(v.size());
  for (const auto& z : v) out.push_back(promote(z, digits10));
  return out;
}

ComplexVector round_to(const ComplexVector& v, unsigned digits10) {
  ComplexVector out;
  out.reserve(v.size());
  for (const auto& z : v) out.push_back(round_to(z, digits10));
  return out;
}

Real norm_inf(const ComplexVector& v) {
  Real best = 0;
  for (const auto& z : v) {
    Real a = abs(z);
    if (a > best) best = a;
  }
  return best;
}

Real norm2(const ComplexVector& v) {
  Real s = 0;
  for (const auto& z : v) s += norm2(z);
  return boost::multiprecision::sqrt(s);
}

ComplexVector operator-(const ComplexVector& a, const ComplexVector& b) {
  if (a.size() != b.size()) throw UsageError("vector length mismatch");
  ComplexVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

ComplexVector operator+(const ComplexVector& a, const ComplexVector& b) {
  if (a.size() != b.size()) throw UsageError("vector length mismatch");
  ComplexVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

ComplexVector scaled(const ComplexVector& v, const Complex& c) {
  ComplexVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] * c;
  return out;
}

double relative_difference(const ComplexVector& a, const ComplexVector& b) {
  Real diff = norm_inf(a - b);
  Real scale = norm_inf(b);
  if (scale == 0) return to_double(diff);
  Real rel = diff / scale;
  if (rel == 0) return 0.0;
  // Very small ratios underflow double; clamp to the smallest normal.
  double d = to_double(rel);
  return d == 0.0 ? std::numeric_limits<double>::min() : d;
}

}  // namespace stokeslab
