#pragma once

// Gamma function with explicit branches, gamma residues, and the master and
// weight functions of the solution integrals.

#include "stokeslab/precise.hpp"
#include "stokeslab/symfun.hpp"

namespace stokeslab {

/// Principal branch of log Gamma, analytic off (-inf, 0]; on the negative
/// axis the value is the limit from the upper half-plane. Upward recurrence
/// into Re w >= R(D) followed by the Stirling series, truncated below
/// 10^{-(D+8)} relative. Throws DomainError at the poles.
Complex log_gamma(const Complex& u);

/// Gamma(u); uses reflection through sin(pi u) when Re u < 1/2.
Complex gamma(const Complex& u);

/// Residue of Gamma at -r: (-1)^r / r!.
Rational gamma_residue(int r);

/// B_{2k} as exact rationals, cached.
const Rational& bernoulli_even(int k);

/// log q for q = e^{i pi (2-n)} p, on the tracked branch:
/// log|p| + i (arg p + pi (2-n)).
Complex log_q(const ArgTracked& p, int n);

/// (e^{i pi (2-n)} p)^t prod_a Gamma(z_a - t), n = z.size().
Complex master_phi(const Complex& t, const ArgTracked& p, const ComplexVector& z);

/// W(t, y) = prod_j (y_j - t).
Complex weight_w(const Complex& t, const ComplexVector& y);

}  // namespace stokeslab
