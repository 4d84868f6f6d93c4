#include "stokeslab/errors.hpp"
#include "stokeslab/ktheory.hpp"

#include <doctest.h>

#include <random>

using namespace stokeslab;

namespace {

KClass K(const std::string& text, int n) { return parse_kclass(text, n); }
LaurentPoly P(const std::string& text, int n) { return parse_laurent(text, z_names(n)); }

ComplexVector point(std::initializer_list<double> xs) {
  ComplexVector z;
  for (double x : xs) z.emplace_back(Real(x), Real(0));
  return z;
}

// Localization sum written out directly from the class's text, with X
// substituted numerically; independent of the library's own oracle.
Complex localize(const std::string& text, const ComplexVector& z) {
  const int n = static_cast<int>(z.size());
  const LaurentPoly f = parse_laurent(text, xz_names(n));
  Complex sum;
  for (int a = 0; a < n; ++a) {
    ComplexVector pt{z[a]};
    pt.insert(pt.end(), z.begin(), z.end());
    Complex den(1);
    for (int j = 0; j < n; ++j)
      if (j != a) den *= Complex(1) - z[a] / z[j];
    sum += f.evaluate(pt) / den;
  }
  return sum;
}

}  // namespace

TEST_CASE("reduction modulo the ideal") {
  const auto x2 = K("X^2", 2);
  CHECK(x2.coeff(1) == elem_sym(1, 2));
  CHECK(x2.coeff(0) == -elem_sym(2, 2));
  const auto x = K("X", 3);
  CHECK(x.coeff(0).is_zero());
  CHECK(x.coeff(1) == LaurentPoly::constant(3, 1));
  CHECK(x.coeff(2).is_zero());
  CHECK(K("(X-Z1)*(X-Z2)*(X-Z3)", 3).is_zero());
  CHECK(KClass::x_power(2, 2) == x2);
  // X^{-1} X = 1 after reduction.
  for (int n = 2; n <= 4; ++n) CHECK(kmul(KClass::x_power(n, -1), KClass::x_power(n, 1)) == KClass::one(n));
}

TEST_CASE("multiplication") {
  for (int n = 2; n <= 4; ++n) {
    CHECK(kmul(KClass::x_power(n, 1), KClass::x_power(n, n - 1)) == KClass::x_power(n, n));
    const auto f = K("Z1*X + 2", n);
    CHECK(kmul(KClass::one(n), f) == f);
  }
  CHECK(kmul(K("X", 2), K("X", 2)) == K("(Z1+Z2)*X - Z1*Z2", 2));
}

TEST_CASE("push-forward") {
  CHECK(pushforward(KClass::one(2)) == LaurentPoly::constant(2, 1));
  // The localization sum of X^{n-1} cancels for n = 2: Z1Z2/(Z2-Z1) + Z1Z2/(Z1-Z2).
  CHECK(pushforward(K("X", 2)).is_zero());
  // Only the first fixed point survives: prod_{j>1} (Z1 - Zj) / (1 - Z1/Zj) = (-1)^{n-1} Z2...Zn.
  CHECK(pushforward(K("(X-Z2)*(X-Z3)", 3)) == P("Z2*Z3", 3));
  CHECK(pushforward(K("(X-Z2)*(X-Z3)*(X-Z4)", 4)) == -P("Z2*Z3*Z4", 4));

  PrecisionScope scope(40);
  const auto z = point({2, 3, 5});
  // Exact zeros on one side and roundoff on the other: compare on unit scale.
  auto close = [](const Complex& a, const Complex& b) { return abs(a - b) / std::max(abs(b), Real(1)) < Real("1e-35"); };
  for (const char* text : {"1", "X", "X^2", "Z1*X^2 - 3*X + Z2^-1", "X^4", "X^-1"}) {
    const Complex sym = pushforward(K(text, 3)).evaluate(z);
    CHECK(close(sym, localize(text, z)));
    CHECK(close(pushforward_localization(K(text, 3), z), localize(text, z)));
  }
}

TEST_CASE("Gram matrix of the form") {
  for (int n = 2; n <= 6; ++n) {
    const auto& g = canonical_gram(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const auto a = form_A(KClass::x_power(n, i), KClass::x_power(n, j));
        CHECK(a == (i <= j ? complete_hom(j - i, n) : LaurentPoly(n)));
        CHECK(g[i][j] == a);
      }
  }
  CHECK(form_A(KClass::one(3), KClass::x_power(3, 2)) == complete_hom(2, 3));
  CHECK(form_A(KClass::x_power(2, 1), KClass::one(2)).is_zero());
  CHECK(form_A(KClass::one(4), KClass::one(4)) == LaurentPoly::constant(4, 1));
}

TEST_CASE("sesquilinearity") {
  const int n = 3;
  const auto f = K("Z1*X^2 - X + 1/2", n), g = K("X^2 + Z2^-1*X", n);
  const auto a = P("Z1 + 2*Z3^-1", n), b = P("Z2^2 - 1", n);
  CHECK(form_A(a * f, g) == a.bar() * form_A(f, g));
  CHECK(form_A(f, b * g) == b * form_A(f, g));
}

TEST_CASE("residue oracle") {
  PrecisionScope scope(40);
  const auto z = point({2, 3, 5});
  const Complex v = form_A_residue_oracle(KClass::one(3), KClass::x_power(3, 2), z);
  CHECK(relative_difference({v}, {Complex(69)}) < 1e-35);
  CHECK(abs(form_A_residue_oracle(KClass::x_power(3, 1), KClass::one(3), z)) < Real("1e-35"));
  CHECK(relative_difference({form_A_residue_oracle(KClass::one(3), KClass::one(3), z)}, {Complex(1)}) < 1e-35);
  CHECK_THROWS_AS(form_A_residue_oracle(KClass::one(2), KClass::one(2), point({2, 2})), DomainError);

  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.5, 2);
  for (int n = 2; n <= 4; ++n) {
    const auto f = K("Z1*X + X^" + std::to_string(n - 1) + " - 2", n), g = K("X^-1 + Z2*X^2", n);
    ComplexVector pt;
    for (int a = 0; a < n; ++a) pt.push_back(from_polar_log(Real(std::log(u(rng))), Real(u(rng) * 2)));
    CHECK(relative_difference({form_A(f, g).evaluate(pt)}, {form_A_residue_oracle(f, g, pt)}) < 1e-33);
  }
}

TEST_CASE("serialization round trip") {
  const auto f = K("Z1*X^2 - 3/2*X + Z2^-1", 3);
  CHECK(parse_kclass_coeffs(f.to_string(), 3) == f);
}
