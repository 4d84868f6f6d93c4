#include "stokeslab/errors.hpp"
#include "stokeslab/solver.hpp"
#include "stokeslab/specfun.hpp"
#include "stokeslab/verify.hpp"

#include <doctest.h>

using namespace stokeslab;

namespace {

SolutionRequest request(ComplexVector z, double mod, double arg, unsigned digits = 40) {
  SolutionRequest req;
  req.z = std::move(z);
  req.p = ArgTracked(Real(mod), Real(arg));
  req.digits = digits;
  return req;
}

ComplexVector z2() { return {Complex(Real("0.3")), Complex(Real("-0.2"))}; }
ComplexVector z3() { return {Complex(Real("0.31")), Complex(Real("-0.36"), Real("0.1")), Complex(Real("-0.02"))}; }

// The residue series written out term by term from its definition: term r at
// fixed point I is Res Gamma(-r) q^{z_J + r} prod_{a != J} Gamma(z_a - z_J - r)
// prod_{a != I} (z_a - z_J - r), with q = e^{i pi (2 - n)} p.
ComplexVector psi_J_oracle(int J, const SolutionRequest& req, int terms) {
  const unsigned work = req.digits + 30;
  PrecisionScope scope(work);
  const auto z = promote(req.z, work);
  const int n = static_cast<int>(z.size());
  const Complex lq = log_q(req.p.promoted(work), n);
  ComplexVector out(n);
  for (int r = 0; r < terms; ++r) {
    const Complex t = z[J - 1] + Complex(r);
    Complex common = exp(t * lq) * Complex(Real(gamma_residue(r)));
    for (int a = 0; a < n; ++a)
      if (a != J - 1) common *= gamma(z[a] - t);
    for (int I = 0; I < n; ++I) {
      Complex w = common;
      for (int a = 0; a < n; ++a)
        if (a != I) w *= z[a] - t;
      out[I] += w;
    }
  }
  return round_to(out, req.digits);
}

}  // namespace

TEST_CASE("residue series against the term-by-term oracle") {
  const auto req2 = request(z2(), 0.5, 0.7);
  for (int J = 1; J <= 2; ++J) CHECK(relative_difference(psi_J_jackson(J, req2).values, psi_J_oracle(J, req2, 80)) < 1e-36);
  const auto req3 = request(z3(), 2, -1.1);
  for (int J = 1; J <= 3; ++J) CHECK(relative_difference(psi_J_jackson(J, req3).values, psi_J_oracle(J, req3, 120)) < 1e-35);
}

TEST_CASE("leading term at the own fixed point") {
  // At tiny |p| only r = 0 matters: Psi_J at J is q^{z_J} prod Gamma(1 + z_a - z_J), and zero elsewhere.
  PrecisionScope scope(40);
  const auto req = request(z2(), 1e-30, 0);
  const auto v = psi_J_jackson(1, req);
  const Complex lead = exp(req.z[0] * log_q(req.p, 2)) * gamma_class_at_fixed_point(1, req.z);
  CHECK(relative_difference({v.values[0]}, {lead}) < 1e-25);
  CHECK(to_double(abs(v.values[1] / lead)) < 1e-25);
}

TEST_CASE("derivative against a finite difference in log p") {
  PrecisionScope scope(60);
  const auto req = request(z3(), 1.3, 0.4, 60);
  const Real h("1e-15");
  auto at = [&](const Real& dlog) {
    SolutionRequest r = req;
    r.p = ArgTracked(req.p.modulus() * exp(dlog), req.p.argument());
    return psi_m(2, r).values;
  };
  const auto fd = scaled(at(h) - at(-h), Complex(1 / (2 * h)));
  CHECK(relative_difference(fd, psi_m(2, req, true).values) < 1e-25);
}

TEST_CASE("solution map from classes") {
  const auto req = request(z3(), 0.9, 0.2);
  const int n = 3;
  PrecisionScope scope(40);
  const auto zt = z_tilde(req.z);

  SolutionVector sum_J;
  sum_J.values.assign(n, Complex());
  for (int J = 1; J <= n; ++J) sum_J.values = sum_J.values + psi_J_jackson(J, req).values;
  CHECK(relative_difference(psi_m(1, req).values, sum_J.values) < 1e-36);

  CHECK(norm_inf(psi_Q_jackson(KClass(n), req).values) == 0);
  CHECK(norm_inf(psi_Q_jackson(parse_kclass("(X-Z1)*(X-Z2)*(X-Z3)", n), req).values) == 0);
  for (int m = -1; m <= 4; ++m)
    CHECK(relative_difference(psi_Q_jackson(KClass::x_power(n, m - 1), req).values, psi_m(m, req).values) < 1e-35);

  const auto s1 = elem_sym(1, n);
  CHECK(relative_difference(theta_map(KClass::scalar(s1), req).values,
                            scaled(psi_m(1, req).values, s1.evaluate(zt))) < 1e-35);
  CHECK(relative_difference(theta_map(KClass::x_power(n, n), req).values, psi_m(n + 1, req).values) < 1e-35);
}

TEST_CASE("quadrature against the residue series") {
  for (const auto& z : {z2(), z3()}) {
    for (double mod : {0.5, 2.0, 10.0}) {
      const auto req = request(z, mod, 0.3);
      const auto j = psi_m(1, req);
      const auto q = psi_m_parabola(1, req);
      CHECK(q.evaluator == "parabola");
      CHECK(relative_difference(q.values, j.values) < 1e-30);
    }
  }
  const auto req = request(z2(), 2, -0.5);
  QuadratureOptions shifted;
  shifted.a_offset = 0.75;
  CHECK(relative_difference(psi_m_parabola(2, req, shifted).values, psi_m_parabola(2, req).values) < 1e-30);
  const auto ideal = parse_kclass("(X-Z1)*(X-Z2)", 2);
  CHECK(to_double(norm_inf(psi_Q_parabola(ideal, req).values)) < 1e-30);
}

TEST_CASE("truncation") {
  const auto req = request(z3(), 5, 1);
  auto longer = req;
  longer.r_max = 800;
  CHECK(relative_difference(psi_m(1, longer).values, psi_m(1, req).values) < 1e-38);
  auto starved = req;
  starved.r_max = 3;
  CHECK_THROWS_AS(psi_m(1, starved), ConvergenceError);
}

TEST_CASE("request validation") {
  CHECK_THROWS_AS(request({Complex(Real("0.1")), Complex(Real("1.1"))}, 1, 0).validate(), DomainError);
  CHECK_THROWS_AS(request(z2(), 0, 0).validate(), DomainError);
  CHECK_NOTHROW(request(z2(), 1, 0).validate());
}

TEST_CASE("equation residuals") {
  const auto req = request(z3(), 1.7, -2.2);
  for (int m = 0; m <= 3; ++m) CHECK(qde_residual(req, m) < 1e-25);
  for (int i = 1; i <= 3; ++i) CHECK(qkz_residual(req, 1, i) < 1e-25);
  for (int k : {-1, 0, 1}) CHECK(relation_residual(req, k) < 1e-25);
  CHECK(monodromy_residual(req, 0) < 1e-25);
}

TEST_CASE("basis matrix and monodromy") {
  PrecisionScope scope(40);
  const auto req = request(z3(), 0.6, 0.9);
  const auto b0 = solution_basis_matrix(req, 0);
  CHECK(!b0.determinant.is_zero());
  CHECK(std::isfinite(b0.condition));
  const auto b1 = solution_basis_matrix(req, 1);
  const auto C = monodromy_companion(req.z);
  CHECK(to_double((b1.matrix - b0.matrix * C).norm_max() / b1.matrix.norm_max()) < 1e-30);

  SolutionRequest turned = req;
  turned.p = req.p.with_argument_shift(2 * pi_real());
  CHECK(relative_difference(psi_m(1, turned).values, psi_m(2, req).values) < 1e-30);
}
