#include "stokeslab/geometry.hpp"

#include "stokeslab/errors.hpp"
#include "stokeslab/specfun.hpp"

#include <cmath>
#include <limits>

namespace stokeslab {

std::string to_string(BasisTag tag) {
  switch (tag) {
    case BasisTag::x_basis: return "x_basis";
    case BasisTag::g_basis: return "g_basis";
    case BasisTag::fixed_point: return "fixed_point";
  }
  throw InternalError("unknown basis tag");
}

double lpp_margin(const ComplexVector& z) {
  const int n = static_cast<int>(z.size());
  double max_diff = 0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) max_diff = std::max(max_diff, std::abs(to_cdouble(z[a] - z[b])));
  const int M = static_cast<int>(std::ceil(max_diff)) + 2;
  double best = std::numeric_limits<double>::infinity();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (a == b) continue;
      const auto d = to_cdouble(z[a] - z[b]);
      for (int m = -M; m <= M; ++m) best = std::min(best, std::abs(d - static_cast<double>(m)));
    }
  return best;
}

void check_lpp_margin(const ComplexVector& z) {
  if (z.size() < 2) throw UsageError("need at least two equivariant parameters");
  if (lpp_margin(z) < 0.25) throw DomainError("z is too close to the resonance hyperplanes (margin < 0.25)");
}

CMatrix quantum_mult_matrix(const Complex& p, const ComplexVector& z, BasisTag tag) {
  const int n = static_cast<int>(z.size());
  check_lpp_margin(z);
  CMatrix g(n, n);
  for (int i = 0; i < n; ++i) {
    g(i, i) = z[i];
    if (i > 0) g(i - 1, i) = Complex(1);
  }
  g(n - 1, 0) += p;
  if (tag == BasisTag::g_basis) return g;
  if (tag == BasisTag::x_basis) {
    // x * x^k = x^{k+1}; x * x^{n-1} = p + sum_i (-1)^{i-1} s_i(z) x^{n-i}.
    CMatrix m(n, n);
    for (int k = 0; k + 1 < n; ++k) m(k + 1, k) = Complex(1);
    std::vector<Complex> e(n + 1);  // elementary symmetric values of z
    e[0] = Complex(1);
    for (int a = 0; a < n; ++a)
      for (int k = a + 1; k >= 1; --k) e[k] += e[k - 1] * z[a];
    for (int i = 1; i <= n; ++i) m(n - i, n - 1) = (i % 2 == 1) ? e[i] : -e[i];
    m(0, n - 1) += p;
    return m;
  }
  const CMatrix G = g_to_fixed_point(z);
  return G * g * LU(G).inverse();
}

CMatrix g_to_fixed_point(const ComplexVector& z) {
  const int n = static_cast<int>(z.size());
  CMatrix G(n, n);
  for (int I = 0; I < n; ++I)
    for (int i = 0; i < n; ++i) {
      Complex v(1);
      for (int a = i + 1; a < n; ++a) v *= z[I] - z[a];
      G(I, i) = v;
    }
  return G;
}

CMatrix x_to_fixed_point(const ComplexVector& z) {
  const int n = static_cast<int>(z.size());
  CMatrix V(n, n);
  for (int I = 0; I < n; ++I) {
    Complex v(1);
    for (int k = 0; k < n; ++k) {
      V(I, k) = v;
      v *= z[I];
    }
  }
  return V;
}

namespace {

CMatrix to_fixed_point_matrix(BasisTag tag, const ComplexVector& z) {
  switch (tag) {
    case BasisTag::x_basis: return x_to_fixed_point(z);
    case BasisTag::g_basis: return g_to_fixed_point(z);
    case BasisTag::fixed_point: return CMatrix::identity(static_cast<int>(z.size()));
  }
  throw InternalError("unknown basis tag");
}

}  // namespace

ComplexVector basis_convert(const ComplexVector& v, BasisTag from, BasisTag to, const ComplexVector& z) {
  if (v.size() != z.size()) throw UsageError("vector and z context have different lengths");
  for (std::size_t a = 0; a < z.size(); ++a)
    for (std::size_t b = 0; b < a; ++b)
      if ((z[a] - z[b]).is_zero()) throw DomainError("coincident z entries make basis conversion singular");
  if (from == to) return v;
  ComplexVector fp = to_fixed_point_matrix(from, z) * v;
  if (to == BasisTag::fixed_point) return fp;
  return LU(to_fixed_point_matrix(to, z)).solve(fp);
}

namespace {

void check_pair(int a, int b, int n) {
  if (a < 1 || a > n || b < 1 || b > n) throw UsageError("R-matrix index out of range");
  if (a == b) throw UsageError("R-matrix needs distinct indices");
}

}  // namespace

CMatrix r_matrix(int a, int b, const Complex& u, int n) {
  check_pair(a, b, n);
  CMatrix m = CMatrix::identity(n);
  --a;
  --b;
  m(a, a) = u;
  m(b, a) = Complex(1);
  m(a, b) = Complex(1);
  m(b, b) = Complex(0);
  return m;
}

PolyMatrixG poly_identity(int n, int nvars) {
  PolyMatrixG m(n, std::vector<LaurentPoly>(n, LaurentPoly(nvars)));
  for (int i = 0; i < n; ++i) m[i][i] = LaurentPoly::constant(nvars, 1);
  return m;
}

PolyMatrixG r_matrix_symbolic(int a, int b, const LaurentPoly& u, int n) {
  check_pair(a, b, n);
  const int nv = u.nvars();
  PolyMatrixG m = poly_identity(n, nv);
  --a;
  --b;
  m[a][a] = u;
  m[b][a] = LaurentPoly::constant(nv, 1);
  m[a][b] = LaurentPoly::constant(nv, 1);
  m[b][b] = LaurentPoly(nv);
  return m;
}

PolyMatrixG poly_matmul(const PolyMatrixG& a, const PolyMatrixG& b) {
  const std::size_t n = a.size();
  if (n == 0 || b.size() != a[0].size()) throw UsageError("matrix shape mismatch");
  const int nv = a[0][0].nvars();
  PolyMatrixG c(n, std::vector<LaurentPoly>(b[0].size(), LaurentPoly(nv)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (a[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < b[0].size(); ++j)
        if (!b[k][j].is_zero()) c[i][j] += a[i][k] * b[k][j];
    }
  return c;
}

CMatrix p_minus_E(int i, const ArgTracked& p, int n) {
  if (i < 1 || i > n) throw UsageError("qKZ index out of range");
  if (p.modulus() <= 0) throw DomainError("p must be nonzero");
  CMatrix m = CMatrix::identity(n);
  m(i - 1, i - 1) = from_polar_log(-boost::multiprecision::log(p.modulus()), -p.argument());
  return m;
}

CMatrix qkz_operator(int i, const ArgTracked& p, const ComplexVector& z) {
  const int n = static_cast<int>(z.size());
  check_lpp_margin(z);
  CMatrix k = CMatrix::identity(n);
  for (int j = i - 1; j >= 1; --j) k = k * r_matrix(i, j, z[i - 1] - z[j - 1] - Complex(1), n);
  k = k * p_minus_E(i, p, n);
  for (int j = n; j >= i + 1; --j) k = k * r_matrix(i, j, z[i - 1] - z[j - 1], n);
  return k;
}

Complex gamma_class_at_fixed_point(int J, const ComplexVector& z) {
  const int n = static_cast<int>(z.size());
  if (J < 1 || J > n) throw UsageError("fixed point index out of range");
  Complex v(1);
  for (int a = 0; a < n; ++a)
    if (a != J - 1) v *= gamma(Complex(1) + z[a] - z[J - 1]);
  return v;
}

}  // namespace stokeslab
