#include "stokeslab/specfun.hpp"

#include "stokeslab/errors.hpp"

#include <cmath>
#include <mutex>
#include <numbers>

namespace stokeslab {

namespace {

bool is_pole(const Complex& u) {
  if (u.im() != 0) return false;
  if (u.re() > 0) return false;
  return boost::multiprecision::floor(u.re()) == u.re();
}

// Stirling is used once Re w >= R; with |w| >= R the k-th correction behaves
// like (k / (pi e |w|))^{2k}, so this R keeps the series under ~D/2 terms.
int stirling_threshold(unsigned digits) { return static_cast<int>(0.6 * (digits + 10)) + 5; }

Complex stirling(const Complex& w, unsigned digits) {
  const Real half = Real(1) / 2;
  const Complex lw = log(w);
  Complex result = (w - Complex(half)) * lw - w + Complex(boost::multiprecision::log(2 * pi_real()) / 2);
  const Complex inv = Complex(1) / w;
  const Complex inv2 = inv * inv;
  Complex wpow = inv;  // w^{-(2k-1)}
  const Real tiny = boost::multiprecision::pow(Real(10), -static_cast<int>(digits) - 8);
  const int kmax = static_cast<int>(digits) + 20;
  for (int k = 1; k <= kmax; ++k) {
    Complex term = wpow * (to_real(bernoulli_even(k)) / Real(2 * k * (2 * k - 1)));
    result += term;
    if (abs(term) < tiny * (1 + abs(result))) return result;
    wpow *= inv2;
  }
  throw InternalError("Stirling series did not reach the requested accuracy");
}

}  // namespace

const Rational& bernoulli_even(int k) {
  // Recurrence sum_{j=0}^{m} C(m+1, j) B_j = 0 over all indices, odd ones included.
  static std::mutex mu;
  static std::vector<Rational> all{Rational(1)};
  std::lock_guard lock(mu);
  const int need = 2 * k;
  while (static_cast<int>(all.size()) <= need) {
    const int m = static_cast<int>(all.size());
    Rational sum = 0;
    boost::multiprecision::mpz_int binom = 1;  // C(m+1, j)
    for (int j = 0; j < m; ++j) {
      sum += Rational(binom) * all[j];
      binom = binom * (m + 1 - j) / (j + 1);
    }
    all.push_back(-sum / Rational(m + 1));
  }
  return all[need];
}

Complex log_gamma(const Complex& u) {
  if (is_pole(u)) throw DomainError("log_gamma at a pole");
  const unsigned digits = current_digits();
  const int R = stirling_threshold(digits);
  const double re = to_double(u.re());
  int shift = re < R ? static_cast<int>(std::ceil(R - re)) : 0;

  const Complex w = u + Complex(shift);
  Complex result = stirling(w, digits);
  if (shift == 0) return result;

  // log Gamma(u) = log Gamma(u + N) - sum_k log(u + k). The logs are combined
  // into one product; the branch of its log is restored from the double sum of
  // the individual principal arguments (atan2(+0, x<0) = pi gives the limit
  // from above on the negative axis).
  Complex prod(1);
  double arg_sum = 0;
  const double im = to_double(u.im());
  for (int k = 0; k < shift; ++k) {
    Complex f = u + Complex(k);
    prod *= f;
    arg_sum += std::atan2(im, re + k);
  }
  Complex lp = log(prod);
  const double turns = std::round((arg_sum - to_double(lp.im())) / (2 * std::numbers::pi));
  lp += Complex(Real(0), 2 * pi_real() * Real(turns));
  return result - lp;
}

Complex gamma(const Complex& u) {
  if (is_pole(u)) throw DomainError("gamma at a pole");
  if (u.re() < Real(1) / 2) {
    const Complex one_minus = Complex(1) - u;
    return Complex(pi_real()) / (sin(Complex(pi_real()) * u) * exp(log_gamma(one_minus)));
  }
  return exp(log_gamma(u));
}

Rational gamma_residue(int r) {
  if (r < 0) throw UsageError("gamma_residue needs r >= 0");
  boost::multiprecision::mpz_int f = 1;
  for (int k = 2; k <= r; ++k) f *= k;
  Rational q(1, 1);
  q /= Rational(f);
  return r % 2 == 0 ? q : -q;
}

Complex log_q(const ArgTracked& p, int n) {
  if (p.modulus() <= 0) throw DomainError("p must be nonzero");
  return {boost::multiprecision::log(p.modulus()), p.argument() + pi_real() * Real(2 - n)};
}

Complex master_phi(const Complex& t, const ArgTracked& p, const ComplexVector& z) {
  const int n = static_cast<int>(z.size());
  Complex expo = t * log_q(p, n);
  for (const auto& za : z) expo += log_gamma(za - t);
  return exp(expo);
}

Complex weight_w(const Complex& t, const ComplexVector& y) {
  Complex w(1);
  for (const auto& yj : y) w *= yj - t;
  return w;
}

}  // namespace stokeslab
