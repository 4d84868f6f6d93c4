#pragma once

// Cohomology bases of projective space (x-powers, g-basis, fixed points),
// quantum multiplication, R-matrices and the qKZ operators.
//
// Matrices act on column coordinate vectors: column j is the image of the
// j-th basis element. In the g-basis g_i = prod_{a > i} (x - z_a), so g_n = 1.

#include "stokeslab/linalg.hpp"
#include "stokeslab/symfun.hpp"

#include <string>
#include <vector>

namespace stokeslab {

enum class BasisTag { x_basis, g_basis, fixed_point };

std::string to_string(BasisTag tag);

/// min over a != b and |m| <= M of |z_a - z_b - m|, with M = ceil(max |z_a - z_b|) + 2.
double lpp_margin(const ComplexVector& z);
/// Throws DomainError unless lpp_margin(z) >= 0.25.
void check_lpp_margin(const ComplexVector& z);

/// Quantum multiplication by x at (p, z) in the requested basis.
CMatrix quantum_mult_matrix(const Complex& p, const ComplexVector& z, BasisTag tag);

/// Fixed-point values of the g-basis: G(I, i) = g_i(z_I) = prod_{a > i} (z_I - z_a).
CMatrix g_to_fixed_point(const ComplexVector& z);
/// Fixed-point values of x-powers: V(I, k) = z_I^k.
CMatrix x_to_fixed_point(const ComplexVector& z);

/// Coordinates of v re-expressed in another basis; throws DomainError when z
/// has coincident entries.
ComplexVector basis_convert(const ComplexVector& v, BasisTag from, BasisTag to, const ComplexVector& z);

/// R_{ab}(u) in the g-basis (1-based a != b): g_a -> g_b + u g_a, g_b -> g_a.
CMatrix r_matrix(int a, int b, const Complex& u, int n);

/// The same matrix with a polynomial entry u (exact).
using PolyMatrixG = std::vector<std::vector<LaurentPoly>>;
PolyMatrixG r_matrix_symbolic(int a, int b, const LaurentPoly& u, int n);
PolyMatrixG poly_matmul(const PolyMatrixG& a, const PolyMatrixG& b);
PolyMatrixG poly_identity(int n, int nvars);

/// Diagonal matrix with p^{-1} in slot i, on the tracked branch of arg p.
CMatrix p_minus_E(int i, const ArgTracked& p, int n);

/// K_i = R_{i,i-1}(z_i - z_{i-1} - 1) ... R_{i,1}(z_i - z_1 - 1) p^{-E_i}
///       R_{i,n}(z_i - z_n) ... R_{i,i+1}(z_i - z_{i+1}).
CMatrix qkz_operator(int i, const ArgTracked& p, const ComplexVector& z);

/// prod_{a != J} Gamma(1 + z_a - z_J), 1-based J.
Complex gamma_class_at_fixed_point(int J, const ComplexVector& z);

}  // namespace stokeslab
