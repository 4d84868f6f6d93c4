#include "stokeslab/errors.hpp"
#include "stokeslab/geometry.hpp"
#include "stokeslab/specfun.hpp"

#include <doctest.h>

using namespace stokeslab;

namespace {

ComplexVector zs(std::initializer_list<std::pair<double, double>> xs) {
  ComplexVector z;
  for (auto [re, im] : xs) z.emplace_back(Real(re), Real(im));
  return z;
}

double mat_diff(const CMatrix& a, const CMatrix& b) { return to_double((a - b).norm_max()); }

}  // namespace

TEST_CASE("margin test") {
  PrecisionScope scope(30);
  CHECK(lpp_margin(zs({{0.3, 0}, {-0.2, 0}})) == doctest::Approx(0.5));
  CHECK(lpp_margin(zs({{0.31, 0}, {-0.17, 0}, {0.52, 0}})) == doctest::Approx(0.21));
  CHECK_THROWS_AS(check_lpp_margin(zs({{0.31, 0}, {-0.17, 0}, {0.52, 0}})), DomainError);
  CHECK_THROWS_AS(check_lpp_margin(zs({{0.1, 0}, {1.1, 0}})), DomainError);
  CHECK_NOTHROW(check_lpp_margin(zs({{0.31, 0}, {-0.36, 0}, {-0.02, 0}})));
}

TEST_CASE("quantum multiplication") {
  PrecisionScope scope(40);
  const auto z = zs({{0.3, 0.1}, {-0.2, 0}});
  const Complex p(Real("0.7"), Real("0.2"));
  const auto Mg = quantum_mult_matrix(p, z, BasisTag::g_basis);
  CHECK(abs(Mg(0, 0) - z[0]) == 0);
  CHECK(abs(Mg(0, 1) - Complex(1)) == 0);
  CHECK(abs(Mg(1, 0) - p) == 0);
  CHECK(abs(Mg(1, 1) - z[1]) == 0);

  const auto M0 = quantum_mult_matrix(Complex(0), z, BasisTag::x_basis);
  CHECK(abs(M0(0, 0)) == 0);
  CHECK(abs(M0(0, 1) + z[0] * z[1]) < Real("1e-38"));
  CHECK(abs(M0(1, 0) - Complex(1)) == 0);
  CHECK(abs(M0(1, 1) - z[0] - z[1]) < Real("1e-38"));

  const auto z3 = zs({{0.31, 0}, {-0.36, 0.1}, {-0.02, -0.2}});
  for (auto tag : {BasisTag::x_basis, BasisTag::g_basis, BasisTag::fixed_point}) {
    const auto M = quantum_mult_matrix(p, z3, tag);
    Complex tr;
    for (int i = 0; i < 3; ++i) tr += M(i, i);
    // The trace of x * is sum z_a, whatever the basis.
    CHECK(relative_difference({tr}, {z3[0] + z3[1] + z3[2]}) < 1e-35);
  }
  CHECK_THROWS_AS(quantum_mult_matrix(p, zs({{0.1, 0}, {0.1, 0}}), BasisTag::g_basis), DomainError);
}

TEST_CASE("basis conversions") {
  PrecisionScope scope(40);
  const auto z = zs({{0.31, 0}, {-0.36, 0.1}, {-0.02, -0.2}});
  const auto G = g_to_fixed_point(z);
  for (int I = 0; I < 3; ++I) {
    CHECK(abs(G(I, 2) - Complex(1)) == 0);
    CHECK(relative_difference({G(I, 0)}, {(z[I] - z[1]) * (z[I] - z[2])}) < 1e-38);
  }
  const ComplexVector one{Complex(1), Complex(0), Complex(0)};
  const auto f = basis_convert(one, BasisTag::x_basis, BasisTag::fixed_point, z);
  for (const auto& c : f) CHECK(relative_difference({c}, {Complex(1)}) < 1e-38);

  const ComplexVector v{Complex(1, 2), Complex(-0.5, 0), Complex(0.25, 1)};
  for (auto a : {BasisTag::x_basis, BasisTag::g_basis, BasisTag::fixed_point})
    for (auto b : {BasisTag::x_basis, BasisTag::g_basis, BasisTag::fixed_point})
      CHECK(relative_difference(basis_convert(basis_convert(v, a, b, z), b, a, z), v) < 1e-35);
}

TEST_CASE("R-matrices") {
  PrecisionScope scope(30);
  const int n = 3;
  const auto R0 = r_matrix(1, 2, Complex(0), n);
  CMatrix swap(n, n);
  swap(1, 0) = swap(0, 1) = swap(2, 2) = Complex(1);
  CHECK(mat_diff(R0, swap) == 0);

  const Complex u(Real("0.3"), Real("-1.2"));
  const auto R = r_matrix(1, 2, u, n);
  // Column 0 is the image of g_1: g_2 + u g_1.
  CHECK(abs(R(0, 0) - u) == 0);
  CHECK(abs(R(1, 0) - Complex(1)) == 0);
  CHECK(mat_diff(R * r_matrix(2, 1, -u, n), CMatrix::identity(n)) < 1e-28);

  const Complex v(Real("-0.7"), Real("0.4"));
  for (int a = 1; a <= n; ++a)
    for (int b = 1; b <= n; ++b)
      for (int c = 1; c <= n; ++c) {
        if (a == b || b == c || a == c) continue;
        const auto lhs = r_matrix(a, b, u - v, n) * r_matrix(a, c, u, n) * r_matrix(b, c, v, n);
        const auto rhs = r_matrix(b, c, v, n) * r_matrix(a, c, u, n) * r_matrix(a, b, u - v, n);
        CHECK(mat_diff(lhs, rhs) < 1e-27);
      }

  const LaurentPoly U = LaurentPoly::variable(1, 0);
  CHECK(poly_matmul(r_matrix_symbolic(2, 3, U, 4), r_matrix_symbolic(3, 2, -U, 4)) == poly_identity(4, 1));
}

TEST_CASE("qKZ operators") {
  PrecisionScope scope(40);
  const auto z = zs({{0.3, 0.1}, {-0.2, 0}});
  const ArgTracked p(Real("0.8"), Real("2.5"));
  const auto K1 = qkz_operator(1, p, z);
  const auto K2 = qkz_operator(2, p, z);
  CHECK(mat_diff(K1, p_minus_E(1, p, 2) * r_matrix(1, 2, z[0] - z[1], 2)) < 1e-38);
  CHECK(mat_diff(K2, r_matrix(2, 1, z[1] - z[0] - Complex(1), 2) * p_minus_E(2, p, 2)) < 1e-38);
  CHECK(!LU(K1).determinant().is_zero());

  // The tracked argument enters unreduced: shifting it by 2 pi changes nothing in p^{-1}.
  const auto E = p_minus_E(1, p.with_argument_shift(2 * pi_real()), 2);
  CHECK(mat_diff(E, p_minus_E(1, p, 2)) < 1e-38);
  CHECK(relative_difference({E(0, 0)}, {Complex(1) / p.value()}) < 1e-38);
}

TEST_CASE("gamma class at a fixed point") {
  PrecisionScope scope(40);
  const ComplexVector z{Complex(Real("0.3")), Complex(0)};
  CHECK(relative_difference({gamma_class_at_fixed_point(1, z)}, {gamma(Complex(Real("0.7")))}) < 1e-36);
  CHECK(relative_difference({gamma_class_at_fixed_point(2, z)}, {gamma(Complex(Real("1.3")))}) < 1e-36);
  CHECK_THROWS_AS(gamma_class_at_fixed_point(1, zs({{0, 0}, {-1, 0}})), DomainError);
}
