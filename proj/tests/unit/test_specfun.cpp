#include "stokeslab/errors.hpp"
#include "stokeslab/specfun.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace stokeslab;

namespace {

double rel(const Complex& a, const Complex& b) { return relative_difference({a}, {b}); }

}  // namespace

TEST_CASE("gamma at known points") {
  PrecisionScope scope(50);
  CHECK(rel(exp(log_gamma(Complex(1))), Complex(1)) < 1e-48);
  CHECK(rel(exp(log_gamma(Complex(5))), Complex(24)) < 1e-48);
  const Complex h = exp(log_gamma(Complex(Real("0.5"))));
  CHECK(rel(h * h, Complex(pi_real())) < 1e-48);
  // |Gamma(i)|^2 = pi / sinh(pi).
  const Complex gi = gamma(Complex(0, 1));
  CHECK(to_double(abs(norm2(gi) * sinh(pi_real()) / pi_real() - 1)) < 1e-47);
  // Reflection branch: Gamma(-1/2) = -2 sqrt(pi).
  CHECK(rel(gamma(Complex(Real("-0.5"))), Complex(-2 * sqrt(pi_real()))) < 1e-47);
  CHECK_THROWS_AS(log_gamma(Complex(0)), DomainError);
  CHECK_THROWS_AS(gamma(Complex(-3)), DomainError);
}

TEST_CASE("log gamma matches the double-precision library on the real axis") {
  PrecisionScope scope(40);
  for (double x : {0.1, 0.75, 1.5, 3.25, 10.0, 47.5}) {
    const Complex v = log_gamma(Complex(Real(x)));
    CHECK(to_double(v.re()) == doctest::Approx(std::lgamma(x)).epsilon(1e-13));
    CHECK(to_double(v.im()) == 0.0);
  }
}

TEST_CASE("principal branch stays continuous off the negative axis") {
  PrecisionScope scope(40);
  // Crossing the real axis at Re u > 0 must not jump by 2 pi i.
  const Complex a = log_gamma(Complex(Real("-2.5"), Real("1e-20")));
  const Complex b = log_gamma(Complex(Real("-2.5"), Real("-1e-20")));
  CHECK(std::abs(to_double(a.im() + b.im())) < 1e-15);
  const Complex c = log_gamma(Complex(Real("3.5"), Real("1e-20")));
  const Complex d = log_gamma(Complex(Real("3.5"), Real("-1e-20")));
  CHECK(to_double(abs(c - d)) < 1e-18);
  // Large imaginary part: Im log Gamma grows like y log y without wrapping.
  const Complex big = log_gamma(Complex(Real(1), Real(100)));
  CHECK(to_double(big.im()) > 300);
}

TEST_CASE("recurrence and reflection") {
  PrecisionScope scope(40);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> re(-8, 8), im(-6, 6);
  for (int t = 0; t < 40; ++t) {
    const Complex u(Real(re(rng)), Real(im(rng)));
    CHECK(rel(gamma(u + Complex(1)), u * gamma(u)) < 1e-34);
    CHECK(rel(gamma(u) * gamma(Complex(1) - u) * sin(Complex(pi_real()) * u), Complex(pi_real())) < 1e-34);
  }
}

TEST_CASE("doubling the precision reproduces the digits") {
  Complex lo, hi;
  {
    PrecisionScope scope(30);
    lo = log_gamma(Complex(Real("2.3"), Real("-4.1")));
  }
  {
    PrecisionScope scope(60);
    hi = log_gamma(Complex(Real("2.3"), Real("-4.1")));
    CHECK(relative_difference({promote(lo, 60)}, {hi}) < 1e-28);
  }
}

TEST_CASE("gamma residues and Bernoulli numbers") {
  CHECK(gamma_residue(0) == 1);
  CHECK(gamma_residue(1) == -1);
  CHECK(gamma_residue(3) == Rational(-1, 6));
  CHECK(gamma_residue(4) == Rational(1, 24));
  CHECK(bernoulli_even(1) == Rational(1, 6));
  CHECK(bernoulli_even(2) == Rational(-1, 30));
  CHECK(bernoulli_even(6) == Rational(-691, 2730));
}

TEST_CASE("master and weight functions") {
  PrecisionScope scope(40);
  const ComplexVector z{Complex(Real("0.3"), Real("0.1")), Complex(Real("-0.2"))};
  const ArgTracked p(Real("1.7"), Real("0.4"));
  CHECK(rel(master_phi(Complex(0), p, z), gamma(z[0]) * gamma(z[1])) < 1e-36);

  const Complex t(Real("-1.3"), Real("0.6"));
  const Complex shifted = master_phi(t, p.with_argument_shift(2 * pi_real()), z);
  CHECK(rel(shifted, exp(Complex(0, 2) * Complex(pi_real()) * t) * master_phi(t, p, z)) < 1e-35);

  // q = e^{i pi (2 - n)} p on the tracked branch.
  const Complex lq = log_q(p, 3);
  CHECK(to_double(lq.im()) == doctest::Approx(0.4 - 3.14159265358979));

  CHECK(weight_w(z[1], {z[1]}).is_zero());
  CHECK(rel(weight_w(t, {z[0]}), z[0] - t) < 1e-38);
  CHECK(rel(weight_w(t, z), (z[0] - t) * (z[1] - t)) < 1e-38);
}
