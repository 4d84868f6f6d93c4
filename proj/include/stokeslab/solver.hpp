#pragma once

// Solutions of the quantum differential equation as Jackson residue series
// and as contour integrals over a parabola, plus the map from K-theory
// classes to solutions.
//
// Results are fixed-point values: component I is the restriction to the I-th
// torus-fixed point. Internally the series runs at D + guard digits, where
// the guard covers the cancellation between large partial sums; values are
// rounded back to D digits on return.

#include "stokeslab/geometry.hpp"
#include "stokeslab/ktheory.hpp"
#include "stokeslab/linalg.hpp"

#include <string>

namespace stokeslab {

struct SolutionRequest {
  ComplexVector z;
  ArgTracked p{Real(1), Real(0)};
  unsigned digits = 40;
  int r_max = 400;
  /// Truncation tolerance relative to the result; 0 selects 10^{-(D+5)}.
  double tol = 0;

  /// Throws UsageError/DomainError unless z passes the margin test and p != 0.
  void validate() const;
};

struct SolutionVector {
  ComplexVector values;  // fixed-point basis
  BasisTag basis = BasisTag::fixed_point;
  std::string evaluator;  // "jackson" or "parabola"
  unsigned digits = 0;
  unsigned working_digits = 0;
  int terms = 0;          // series terms or quadrature nodes
  double lost_digits = 0;  // log10(max partial magnitude / |result|)
  double s_max = 0;        // parabola only: half-width of the sampled s-range
};

/// Z~_a = e^{2 pi i z_a} at the current precision.
ComplexVector z_tilde(const ComplexVector& z);

/// A priori guard digits for the series at (n, |p|).
unsigned guard_digits(int n, const Real& p_modulus);

/// Psi_J by the residue series at t = z_J + r, r >= 0. With `derivative` the
/// operator p d/dp is applied termwise (term r gains the factor z_J + r).
SolutionVector psi_J_jackson(int J, const SolutionRequest& req, bool derivative = false);

/// sum_J Q(Z~_J, Z~) Psi_J.
SolutionVector psi_Q_jackson(const KClass& Q, const SolutionRequest& req, bool derivative = false);

/// Psi^m: the coefficient of Psi_J is Z~_J^{m-1}, for any integer m.
SolutionVector psi_m(int m, const SolutionRequest& req, bool derivative = false);

/// The K-theory to solutions map; equal to psi_Q_jackson.
SolutionVector theta_map(const KClass& f, const SolutionRequest& req);

struct QuadratureOptions {
  double step = 0.025;
  /// Fixed half-width of the s-range; 0 samples outward until the integrand
  /// drops below 10^{-(D+10)} of its peak on both sides.
  double s_max = 0;
  double s_cap = 40;
  /// Shift A further left of the default min_a(Re z_a - (Im z_a)^2) - 1.
  double a_offset = 0;
};

/// The trapezoid rule for (1/2 pi i) int Q(T~, Z~) Phi(t) W(t) dt over
/// t = A + s^2 + i s. Orientation is fixed so that the result equals the
/// residue series.
SolutionVector psi_Q_parabola(const KClass& Q, const SolutionRequest& req, const QuadratureOptions& opt = {});
/// Psi^m through the parabola with T~^{m-1} in place of Q.
SolutionVector psi_m_parabola(int m, const SolutionRequest& req, const QuadratureOptions& opt = {});

struct BasisMatrix {
  CMatrix matrix;  // column j is Psi^{k+1+j} in the fixed-point basis
  Complex determinant;
  double condition = 0;
};

/// Psi^{k+1}, ..., Psi^{k+n} as columns.
BasisMatrix solution_basis_matrix(const SolutionRequest& req, int k);

/// Companion matrix of prod_a (X - Z~_a) acting on labels k+1..k+n: shifting
/// arg p by 2 pi multiplies the basis matrix by it on the right.
CMatrix monodromy_companion(const ComplexVector& z);

}  // namespace stokeslab
