#include "stokeslab/stokes.hpp"

#include "stokeslab/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>

namespace stokeslab {

namespace {

using boost::multiprecision::mpz_int;

mpz_int floor_q(const Rational& q) {
  mpz_int num = boost::multiprecision::numerator(q);
  mpz_int den = boost::multiprecision::denominator(q);  // positive
  mpz_int f = num / den;                                 // truncates toward zero
  if (num < 0 && f * den != num) f -= 1;
  return f;
}

bool is_integer(const Rational& q) { return boost::multiprecision::denominator(q) == 1; }

void check_n(int n) {
  if (n < 2) throw UsageError("rank must be at least 2");
}

// Drops leading zeros of each digit run; GMP would read "07" as octal.
std::string strip_leading_zeros(const std::string& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const bool run_start = std::isdigit(static_cast<unsigned char>(s[i])) &&
                           (i == 0 || !std::isdigit(static_cast<unsigned char>(s[i - 1])));
    if (run_start)
      while (s[i] == '0' && i + 1 < s.size() && std::isdigit(static_cast<unsigned char>(s[i + 1]))) ++i;
    out += s[i];
  }
  return out;
}

}  // namespace

Rational parse_rational(const std::string& text_in) {
  std::string text;
  for (char c : text_in)
    if (!std::isspace(static_cast<unsigned char>(c))) text += c;
  if (text.empty()) throw UsageError("empty rational");
  try {
    if (text.find('/') != std::string::npos) return Rational(strip_leading_zeros(text));
    std::size_t pos = 0;
    bool neg = false;
    if (text[0] == '+' || text[0] == '-') {
      neg = text[0] == '-';
      pos = 1;
    }
    std::string digits;
    int frac = 0;
    bool dot = false;
    for (; pos < text.size(); ++pos) {
      const char c = text[pos];
      if (c == '.' && !dot) {
        dot = true;
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        digits += c;
        if (dot) ++frac;
      } else if (c == 'e' || c == 'E') {
        break;
      } else {
        throw UsageError("bad rational '" + text_in + "'");
      }
    }
    if (digits.empty()) throw UsageError("bad rational '" + text_in + "'");
    int exponent = -frac;
    if (pos < text.size()) exponent += std::stoi(text.substr(pos + 1));
    Rational q{mpz_int(strip_leading_zeros(digits))};
    mpz_int ten = 1;
    for (int i = 0; i < std::abs(exponent); ++i) ten *= 10;
    if (exponent >= 0) q *= Rational(ten);
    else q /= Rational(ten);
    return neg ? Rational(-q) : q;
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception&) {
    throw UsageError("bad rational '" + text_in + "'");
  }
}

std::string rational_to_string(const Rational& q) { return q.str(); }

ArgTracked SectorPoint::p(int n) const {
  Real mod = boost::multiprecision::pow(r, n);
  Real arg = -2 * pi_real() * Real(n) * to_real(phi);
  return {mod, arg};
}

Complex SectorPoint::s() const { return r * expi(-2 * pi_real() * to_real(phi)); }

RayParity stokes_ray_parity(const Rational& phi, int n) {
  check_n(n);
  const Rational t = phi * 2 * n;
  if (!is_integer(t)) return RayParity::none;
  const mpz_int k = boost::multiprecision::numerator(t);
  return (k % 2 == 0) ? RayParity::even : RayParity::odd;
}

bool is_stokes_ray(const Rational& phi, int n) { return stokes_ray_parity(phi, n) != RayParity::none; }

bool is_resonant(const Rational& phi, int n) {
  check_n(n);
  return is_integer(phi * n);
}

std::vector<int> admissible_ms(const Rational& phi, int n) {
  check_n(n);
  // m/n - 1 < phi < m/n  <=>  n phi < m < n phi + n.
  const Rational x = phi * n;
  const mpz_int base = floor_q(x);
  std::vector<int> out;
  for (mpz_int m = base; m <= base + n + 1; ++m) {
    const Rational mq{m};
    if (x < mq && mq < x + n) out.push_back(m.convert_to<int>());
  }
  return out;
}

bool has_real_part_collision(const Rational& phi, int n) {
  check_n(n);
  for (int m1 = 0; m1 < 2 * n; ++m1)
    for (int m2 = 0; m2 < 2 * n; ++m2) {
      if ((m1 - m2) % n == 0) continue;
      const Rational a1 = Rational(m1, n) - phi;
      const Rational a2 = Rational(m2, n) - phi;
      if (is_integer(a1 - a2) || is_integer(a1 + a2)) return true;
    }
  return false;
}

Complex leading_term(int m, const SectorPoint& sector, const ComplexVector& z, int I) {
  const int n = static_cast<int>(z.size());
  check_n(n);
  if (I < 1 || I > n) throw UsageError("fixed point index out of range");
  const auto ms = admissible_ms(sector.phi, n);
  if (std::find(ms.begin(), ms.end(), m) == ms.end())
    throw UsageError("label " + std::to_string(m) + " is not admissible at phi = " + rational_to_string(sector.phi));
  const Real pi = pi_real();
  const Real phi = to_real(sector.phi);
  const Complex omega_m_s = sector.r * expi(2 * pi * Real(m) / Real(n) - 2 * pi * phi);
  const Real branch_arg = 2 * pi * Real(m) / Real(n) - pi - 2 * pi * phi;
  Complex sum_z;
  for (const auto& za : z) sum_z += za;
  const Complex expo = sum_z + Complex(Real(1 - n) / 2);
  const Complex power = exp(expo * Complex(boost::multiprecision::log(sector.r), branch_arg));
  const Real pref = boost::multiprecision::pow(2 * pi, Real(n - 1) / 2) / boost::multiprecision::sqrt(Real(n));
  Complex value = pref * exp(Complex(Real(n)) * omega_m_s) * power;
  for (int a = 0; a < n; ++a)
    if (a != I - 1) value *= z[a] - omega_m_s;
  return value;
}

std::vector<int> NGonPath::vertex_labels() const {
  std::vector<int> out;
  if (kind == PathKind::direct) {
    for (int v = l; v <= m; ++v) out.push_back(v);
  } else {
    for (int v = m - n; v <= l - 1; ++v) out.push_back(v);
  }
  return out;
}

int NGonPath::head_label() const { return kind == PathKind::direct ? m : m - n; }

NGonPath NGonPath::reflected() const {
  NGonPath p = *this;
  p.kind = kind == PathKind::direct ? PathKind::reflected : PathKind::direct;
  return p;
}

std::string NGonPath::to_string() const {
  return std::string(kind == PathKind::direct ? "C" : "Cbar") + "^" + std::to_string(m) + "(" + std::to_string(l) +
         ")";
}

NGonPath make_path(int m, int l, int n, PathKind kind) {
  check_n(n);
  if (l > m) throw UsageError("path needs l <= m");
  if (m - l >= n) throw UsageError("path must be shorter than n");
  return NGonPath{kind, m, l, n};
}

std::vector<std::pair<int, LaurentPoly>> path_combination(const NGonPath& path) {
  const int n = path.n;
  std::vector<std::pair<int, LaurentPoly>> out;
  if (path.kind == PathKind::direct) {
    for (int j = 0; j <= path.m - path.l; ++j) {
      LaurentPoly c = elem_sym(j, n);
      out.emplace_back(path.m - j, j % 2 == 0 ? c : -c);
    }
  } else {
    for (int j = 0; j <= n - 1 - (path.m - path.l); ++j) {
      LaurentPoly c = elem_sym(n - j, n);
      out.emplace_back(path.m - n + j, (n - 1 - j) % 2 == 0 ? c : -c);
    }
  }
  return out;
}

LaurentPoly path_head_coefficient(const NGonPath& path) {
  const int head = path.head_label();
  for (auto& [label, c] : path_combination(path))
    if (label == head) return c;
  throw InternalError("path combination lacks its head");
}

bool is_path_admissible(const NGonPath& path, const Rational& phi) {
  // Compare cos(2 pi (v/n - phi)) at a fixed generous precision; callers use
  // angles off the rays, where the gaps are far above rounding.
  PrecisionScope scope(50);
  const Real two_pi = 2 * pi_real();
  const Real ph = to_real(phi);
  auto height = [&](int v) { return boost::multiprecision::cos(two_pi * (Real(v) / Real(path.n) - ph)); };
  const int head = path.head_label();
  const Real hh = height(head);
  for (int v : path.vertex_labels())
    if (v != head && !(hh > height(v))) return false;
  return true;
}

const SolutionVector& SolutionCache::psi(int m) {
  auto it = cache_.find(m);
  if (it == cache_.end()) it = cache_.emplace(m, psi_m(m, req_)).first;
  return it->second;
}

ComplexVector path_solution(const NGonPath& path, SolutionCache& cache) {
  const auto& req = cache.request();
  const int n = static_cast<int>(req.z.size());
  if (n != path.n) throw UsageError("path rank differs from n");
  ComplexVector out(n);
  PrecisionScope scope(req.digits);
  const ComplexVector zt = z_tilde(promote(req.z, req.digits));
  for (const auto& [label, coef] : path_combination(path)) {
    const Complex c = coef.evaluate(zt);
    const auto& v = cache.psi(label).values;
    for (int I = 0; I < n; ++I) out[I] += c * v[I];
  }
  return out;
}

ComplexVector path_solution(const NGonPath& path, const SolutionRequest& req) {
  SolutionCache cache(req);
  return path_solution(path, cache);
}

std::string to_string(Family f) { return f == Family::q_prime ? "Qprime" : "Qdoubleprime"; }

std::vector<NGonPath> family_paths(Family f, int k, int n) {
  const auto layout = f == Family::q_prime ? q_prime_layout(n) : q_double_prime_layout(n);
  std::vector<NGonPath> out;
  for (const auto& ps : layout) out.push_back(make_path(ps.m + k, ps.l + k, n, PathKind::direct));
  return out;
}

std::vector<ComplexVector> basis_family(Family f, int k, const SolutionRequest& req) {
  SolutionCache cache(req);
  std::vector<ComplexVector> out;
  for (const auto& path : family_paths(f, k, static_cast<int>(req.z.size()))) out.push_back(path_solution(path, cache));
  return out;
}

AsymptoticCheck path_asymptotics(const NGonPath& path, const Rational& phi, const ComplexVector& z, unsigned digits,
                                 const std::vector<double>& radii, double lo, double hi, int r_max) {
  AsymptoticCheck out;
  out.radii = radii;
  const int n = static_cast<int>(z.size());
  try {
    for (double rr : radii) {
      PrecisionScope scope(digits);
      SectorPoint sector{Real(rr), phi};
      SolutionRequest req;
      req.z = promote(z, digits);
      req.p = sector.p(n);
      req.digits = digits;
      req.r_max = r_max;
      SolutionCache cache(req);
      const ComplexVector value = path_solution(path, cache);
      const Complex head = path_head_coefficient(path).evaluate(z_tilde(req.z));
      Real err = 0;
      for (int I = 1; I <= n; ++I) {
        const Complex lead = head * leading_term(path.head_label(), sector, req.z, I);
        const Real e = abs(value[I - 1] / lead - Complex(1));
        if (e > err) err = e;
      }
      out.errors.push_back(to_double(err));
    }
  } catch (const std::exception& e) {
    out.pass = false;
    out.diagnostic = e.what();
    return out;
  }
  out.pass = true;
  for (std::size_t j = 0; j + 1 < out.errors.size(); ++j) {
    const double ratio = out.errors[j] > 0 ? out.errors[j + 1] / out.errors[j] : 0;
    out.ratios.push_back(ratio);
    if (!(ratio >= lo && ratio <= hi)) out.pass = false;
  }
  if (!out.pass) out.diagnostic = "error ratio outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]";
  return out;
}

std::pair<Rational, Rational> theorem_interval(Family f, int k, int n) {
  check_n(n);
  if (f == Family::q_prime) return {Rational(2 * k + 1, 2 * n), Rational(k + 1, n)};
  return {Rational(k, n), Rational(2 * k + 1, 2 * n)};
}

WalkResult stokes_walk(Family f, int k, const Rational& a, int n) {
  check_n(n);
  WalkResult res;
  res.family = f;
  res.k = k;
  res.n = n;
  res.a = a;
  const auto [tlo, thi] = theorem_interval(f, k, n);
  res.in_theorem_interval = tlo < a && a < thi;
  if (is_stokes_ray(a, n)) throw UsageError("a lies on a Stokes ray");

  // Nearest rays are multiples of 1/2n around a.
  const Rational twon(2 * n);
  const mpz_int below = floor_q(a * twon);
  const Rational ray_below = Rational(below) / twon;
  const Rational ray_above = Rational(below + 1) / twon;
  res.eps = std::min(a - ray_below, ray_above - a) / 2;
  res.hi = a + res.eps;
  res.lo = a - Rational(1, 2) - res.eps;

  // Rays strictly inside (lo, hi), descending.
  std::vector<Rational> cuts{res.hi};
  for (mpz_int j = floor_q(res.hi * twon); Rational(j) / twon > res.lo; --j) {
    const Rational ray = Rational(j) / twon;
    if (ray < res.hi) cuts.push_back(ray);
  }
  cuts.push_back(res.lo);

  std::vector<NGonPath> paths = family_paths(f, k, n);
  res.ok = true;
  for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
    WalkStep step;
    step.hi = cuts[s];
    step.lo = cuts[s + 1];
    step.mid = (step.lo + step.hi) / 2;
    step.crossed = s == 0 ? RayParity::none : stokes_ray_parity(step.hi, n);
    const auto ms = admissible_ms(step.mid, n);
    const std::set<int> allowed(ms.begin(), ms.end());
    for (auto& path : paths) {
      const auto labels = path.vertex_labels();
      const bool leaves = std::any_of(labels.begin(), labels.end(), [&](int v) { return !allowed.count(v); });
      if (leaves) {
        path = path.reflected();
        ++step.rewrites;
      }
    }
    const int required = step.crossed == RayParity::even ? 1 : 0;
    step.rewrite_ok = step.rewrites == required;
    if (!step.rewrite_ok) {
      res.ok = false;
      res.diagnostic += "subinterval (" + rational_to_string(step.lo) + ", " + rational_to_string(step.hi) + "): " +
                        std::to_string(step.rewrites) + " rewrites, expected " + std::to_string(required) + "; ";
    }
    step.paths = paths;
    for (const auto& path : paths) {
      const bool adm = is_path_admissible(path, step.mid);
      step.admissible.push_back(adm);
      if (!adm) {
        res.ok = false;
        res.diagnostic += path.to_string() + " not admissible at phi = " + rational_to_string(step.mid) + "; ";
      }
    }
    res.steps.push_back(std::move(step));
  }
  return res;
}

}  // namespace stokeslab
