#include "stokeslab/solver.hpp"

#include "stokeslab/errors.hpp"
#include "stokeslab/specfun.hpp"

#include <cmath>
#include <functional>
#include <limits>

namespace stokeslab {

void SolutionRequest::validate() const {
  if (z.size() < 2) throw UsageError("need n >= 2 equivariant parameters");
  if (digits < 10) throw UsageError("precision must be at least 10 digits");
  if (r_max < 1) throw UsageError("truncation cap must be positive");
  if (tol < 0) throw UsageError("tolerance must be nonnegative");
  if (p.modulus() <= 0) throw DomainError("p must be nonzero");
  check_lpp_margin(z);
}

ComplexVector z_tilde(const ComplexVector& z) {
  const Real two_pi = 2 * pi_real();
  ComplexVector out;
  out.reserve(z.size());
  for (const auto& za : z) out.push_back(from_polar_log(-two_pi * za.im(), two_pi * za.re()));
  return out;
}

unsigned guard_digits(int n, const Real& p_modulus) {
  const double root = std::pow(to_double(p_modulus), 1.0 / n);
  return 10 + static_cast<unsigned>(std::ceil(2.0 * n * root / std::log(10.0)));
}

namespace {

// Per-component sums and the largest partial-sum or term magnitude seen.
struct Accumulated {
  ComplexVector value;
  std::vector<Real> scale;
  int terms = 0;
  double s_max = 0;
};

Real ten_pow(int e) { return boost::multiprecision::pow(Real(10), e); }

// Residue series for Psi_J (0-based J) at working precision. Term r at fixed
// point I is c_r prod_{a != I} (z_a - z_J - r), where
// c_r = (-1)^r / r! q^{z_J + r} prod_{a != J} Gamma(z_a - z_J - r). The gamma
// factors follow from c_0 by Gamma(u - 1) = Gamma(u) / (u - 1).
Accumulated jackson_series(int J, const ComplexVector& z, const Complex& logq, const Real& eps, int r_max,
                           bool derivative) {
  const int n = static_cast<int>(z.size());
  const Complex q = exp(logq);
  Complex c = exp(z[J] * logq);
  for (int a = 0; a < n; ++a)
    if (a != J) c *= gamma(z[a] - z[J]);

  Accumulated acc{ComplexVector(n), std::vector<Real>(n, Real(0)), 0, 0};
  const double growth_end = std::pow(to_double(abs(q)), 1.0 / n) + 2;
  int quiet = 0;
  Real last = 0;
  for (int r = 0; r <= r_max; ++r) {
    const Complex t = z[J] + Complex(r);
    Complex cr = derivative ? c * t : c;
    bool all_small = true;
    last = 0;
    for (int I = 0; I < n; ++I) {
      Complex w(1);
      for (int a = 0; a < n; ++a)
        if (a != I) w *= z[a] - t;
      const Complex term = cr * w;
      acc.value[I] += term;
      const Real mt = abs(term);
      const Real mp = abs(acc.value[I]);
      if (mt > acc.scale[I]) acc.scale[I] = mt;
      if (mp > acc.scale[I]) acc.scale[I] = mp;
      if (mt > last) last = mt;
      if (mt > eps * acc.scale[I]) all_small = false;
    }
    acc.terms = r + 1;
    if (all_small && r >= growth_end) {
      if (++quiet >= 5) return acc;
    } else {
      quiet = 0;
    }
    Complex f = -q / Complex(r + 1);
    for (int a = 0; a < n; ++a)
      if (a != J) f /= z[a] - z[J] - Complex(r + 1);
    c *= f;
  }
  throw ConvergenceError("Jackson series did not converge within the truncation cap", to_double(last));
}

double lost_digits_of(const Accumulated& acc) {
  double lost = 0;
  for (std::size_t I = 0; I < acc.value.size(); ++I) {
    if (acc.scale[I] == 0) continue;
    const Real m = abs(acc.value[I]);
    if (m == 0) return std::numeric_limits<double>::infinity();
    lost = std::max(lost, to_double(boost::multiprecision::log10(acc.scale[I] / m)));
  }
  return lost;
}

using Evaluation = std::function<Accumulated(unsigned guard, unsigned working)>;

// Runs the evaluation with the a priori guard and reruns it once with more
// digits when the measured cancellation eats into the guard.
SolutionVector with_guard(const SolutionRequest& req, const std::string& evaluator, const Evaluation& eval) {
  const int n = static_cast<int>(req.z.size());
  unsigned guard = guard_digits(n, req.p.modulus());
  const unsigned guard_cap = guard + req.digits + 60;
  for (int attempt = 0;; ++attempt) {
    const unsigned working = req.digits + guard;
    Accumulated acc;
    {
      PrecisionScope scope(working);
      acc = eval(guard, working);
    }
    const double lost = lost_digits_of(acc);
    const bool enough = lost <= static_cast<double>(guard) - 5;
    if (enough || attempt >= 1 || !std::isfinite(lost) || guard >= guard_cap) {
      SolutionVector out;
      out.values = round_to(acc.value, req.digits);
      out.evaluator = evaluator;
      out.digits = req.digits;
      out.working_digits = working;
      out.terms = acc.terms;
      out.lost_digits = lost;
      out.s_max = acc.s_max;
      return out;
    }
    guard = std::min(guard_cap, static_cast<unsigned>(std::ceil(lost)) + 10);
  }
}

Real series_eps(const SolutionRequest& req, unsigned guard) {
  const Real tol = req.tol > 0 ? Real(req.tol) : ten_pow(-static_cast<int>(req.digits) - 5);
  return tol * ten_pow(-static_cast<int>(guard));
}

using Coefficient = std::function<Complex(int J, const ComplexVector& z, const ComplexVector& zt)>;

SolutionVector jackson_combination(const SolutionRequest& req, const Coefficient& coef, bool derivative) {
  req.validate();
  const int n = static_cast<int>(req.z.size());
  return with_guard(req, "jackson", [&](unsigned guard, unsigned working) {
    const ComplexVector z = promote(req.z, working);
    const Complex lq = log_q(req.p.promoted(working), n);
    const ComplexVector zt = z_tilde(z);
    const Real eps = series_eps(req, guard);
    Accumulated total{ComplexVector(n), std::vector<Real>(n, Real(0)), 0, 0};
    for (int J = 0; J < n; ++J) {
      const Complex cJ = coef(J, z, zt);
      if (cJ.is_zero()) continue;
      Accumulated s = jackson_series(J, z, lq, eps, req.r_max, derivative);
      const Real mc = abs(cJ);
      for (int I = 0; I < n; ++I) {
        total.value[I] += cJ * s.value[I];
        total.scale[I] += mc * s.scale[I];
      }
      total.terms = std::max(total.terms, s.terms);
    }
    return total;
  });
}

Complex psi_m_coefficient(int m, const ComplexVector& z, int J) {
  const Real two_pi = 2 * pi_real();
  const Real k(m - 1);
  return from_polar_log(-two_pi * k * z[J].im(), two_pi * k * z[J].re());
}

}  // namespace

SolutionVector psi_J_jackson(int J, const SolutionRequest& req, bool derivative) {
  const int n = static_cast<int>(req.z.size());
  if (J < 1 || J > n) throw UsageError("J out of range");
  return jackson_combination(
      req, [J](int j, const ComplexVector&, const ComplexVector&) { return j == J - 1 ? Complex(1) : Complex(0); },
      derivative);
}

SolutionVector psi_Q_jackson(const KClass& Q, const SolutionRequest& req, bool derivative) {
  if (Q.n() != static_cast<int>(req.z.size())) throw UsageError("class rank differs from n");
  return jackson_combination(
      req, [&Q](int J, const ComplexVector&, const ComplexVector& zt) { return Q.evaluate(zt[J], zt); }, derivative);
}

SolutionVector psi_m(int m, const SolutionRequest& req, bool derivative) {
  return jackson_combination(
      req, [m](int J, const ComplexVector& z, const ComplexVector&) { return psi_m_coefficient(m, z, J); },
      derivative);
}

SolutionVector theta_map(const KClass& f, const SolutionRequest& req) { return psi_Q_jackson(f, req); }

namespace {

// The contour runs with Im t increasing, leaving the poles z_a + r on its
// right; the clockwise residue sum combines with the residue sign of
// Gamma(z_J - t) so that (1/2 pi i) times the integral is the series itself.
constexpr int kParabolaOrientation = 1;

using ContourCoefficient = std::function<Complex(const Complex& t, const Complex& tt, const ComplexVector& zt)>;

SolutionVector parabola(const SolutionRequest& req, const QuadratureOptions& opt, const ContourCoefficient& coef) {
  req.validate();
  if (opt.step <= 0) throw UsageError("quadrature step must be positive");
  const int n = static_cast<int>(req.z.size());
  return with_guard(req, "parabola", [&](unsigned, unsigned working) {
    const ComplexVector z = promote(req.z, working);
    const Complex lq = log_q(req.p.promoted(working), n);
    const ComplexVector zt = z_tilde(z);
    Real A = z[0].re() - z[0].im() * z[0].im();
    for (const auto& za : z) {
      Real c = za.re() - za.im() * za.im();
      if (c < A) A = c;
    }
    A -= 1 + Real(opt.a_offset);
    const Real h(opt.step);
    const Real two_pi = 2 * pi_real();

    Accumulated acc{ComplexVector(n), std::vector<Real>(n, Real(0)), 0, 0};
    Real peak = 0;
    auto node = [&](long j) -> Real {
      const Real s = h * Real(j);
      const Complex t(A + s * s, s);
      const Complex dt(2 * s, Real(1));
      Complex expo = t * lq;
      for (const auto& za : z) expo += log_gamma(za - t);
      const Complex tt = from_polar_log(-two_pi * t.im(), two_pi * t.re());
      const Complex base = coef(t, tt, zt) * exp(expo) * dt * h;
      Real biggest = 0;
      for (int I = 0; I < n; ++I) {
        Complex w(1);
        for (int a = 0; a < n; ++a)
          if (a != I) w *= z[a] - t;
        const Complex f = base * w;
        acc.value[I] += f;
        const Real mf = abs(f);
        acc.scale[I] += mf;
        if (mf > biggest) biggest = mf;
      }
      ++acc.terms;
      if (biggest > peak) peak = biggest;
      return biggest;
    };

    node(0);
    const Real cutoff = ten_pow(-static_cast<int>(req.digits) - 10);
    long j = 1;
    if (opt.s_max > 0) {
      const long jmax = static_cast<long>(std::floor(opt.s_max / opt.step + 1e-9));
      for (; j <= jmax; ++j) {
        node(j);
        node(-j);
      }
      acc.s_max = opt.s_max;
    } else {
      const long jcap = static_cast<long>(std::ceil(opt.s_cap / opt.step));
      for (;; ++j) {
        if (j > jcap) throw ConvergenceError("parabola integrand did not decay within the s cap", opt.s_cap);
        const Real right = node(j);
        const Real left = node(-j);
        if (static_cast<double>(j) * opt.step >= 1 && right <= cutoff * peak && left <= cutoff * peak) break;
      }
      acc.s_max = static_cast<double>(j) * opt.step;
    }

    const Complex norm = Complex(Real(0), two_pi);
    for (int I = 0; I < n; ++I) {
      acc.value[I] = acc.value[I] / norm * Real(kParabolaOrientation);
      acc.scale[I] /= two_pi;
    }
    return acc;
  });
}

}  // namespace

SolutionVector psi_Q_parabola(const KClass& Q, const SolutionRequest& req, const QuadratureOptions& opt) {
  if (Q.n() != static_cast<int>(req.z.size())) throw UsageError("class rank differs from n");
  return parabola(req, opt, [&Q](const Complex&, const Complex& tt, const ComplexVector& zt) {
    return Q.evaluate(tt, zt);
  });
}

SolutionVector psi_m_parabola(int m, const SolutionRequest& req, const QuadratureOptions& opt) {
  return parabola(req, opt, [m](const Complex& t, const Complex&, const ComplexVector&) {
    const Real two_pi = 2 * pi_real();
    const Real k(m - 1);
    return from_polar_log(-two_pi * k * t.im(), two_pi * k * t.re());
  });
}

BasisMatrix solution_basis_matrix(const SolutionRequest& req, int k) {
  const int n = static_cast<int>(req.z.size());
  BasisMatrix out;
  out.matrix = CMatrix(n, n);
  for (int j = 0; j < n; ++j) out.matrix.set_column(j, psi_m(k + 1 + j, req).values);
  PrecisionScope scope(req.digits);
  try {
    out.determinant = LU(out.matrix).determinant();
  } catch (const DomainError&) {
    out.determinant = Complex(0);
  }
  out.condition = condition_estimate(out.matrix);
  return out;
}

CMatrix monodromy_companion(const ComplexVector& z) {
  const int n = static_cast<int>(z.size());
  const ComplexVector zt = z_tilde(z);
  std::vector<Complex> e(n + 1);
  e[0] = Complex(1);
  for (int a = 0; a < n; ++a)
    for (int k = a + 1; k >= 1; --k) e[k] += e[k - 1] * zt[a];
  CMatrix c(n, n);
  for (int k = 0; k + 1 < n; ++k) c(k + 1, k) = Complex(1);
  for (int i = 1; i <= n; ++i) c(n - i, n - 1) = (i % 2 == 1) ? e[i] : -e[i];
  return c;
}

}  // namespace stokeslab
