#pragma once

// Stokes rays, admissible labels, the steepest-descent leading term, and
// paths on the regular n-gon used to build asymptotic solution bases.
//
// Angles phi are in turns and exact: s = r e^{-2 pi i phi}, p = s^n with
// arg p = -2 pi n phi, and the label m stands for the vertex omega^m,
// omega = e^{2 pi i / n}.

#include "stokeslab/braid.hpp"
#include "stokeslab/solver.hpp"

#include <map>
#include <string>
#include <vector>

namespace stokeslab {

/// Exact decimal or fraction text ("0.25", "-1/6", "3") to a rational.
Rational parse_rational(const std::string& text);
std::string rational_to_string(const Rational& q);

struct SectorPoint {
  Real r;
  Rational phi;

  /// p = s^n on the tracked branch arg p = -2 pi n phi.
  ArgTracked p(int n) const;
  Complex s() const;
};

enum class RayParity { none, even, odd };

/// odd/even when 2 n phi is an odd/even integer, none off the rays.
RayParity stokes_ray_parity(const Rational& phi, int n);
bool is_stokes_ray(const Rational& phi, int n);
/// n phi is an integer.
bool is_resonant(const Rational& phi, int n);

/// All m with m/n - 1 < phi < m/n, ascending.
std::vector<int> admissible_ms(const Rational& phi, int n);

/// Whether two labels m1 != m2 (mod n) in [0, 2n) give equal Re(omega^m s).
/// Decided exactly: cos 2 pi a1 = cos 2 pi a2 iff a1 - a2 or a1 + a2 is an
/// integer, with a_m = m/n - phi.
bool has_real_part_collision(const Rational& phi, int n);

/// (2 pi)^{(n-1)/2} / sqrt(n) e^{n omega^m s} (-omega^m s)^{sum z + (1-n)/2}
/// prod_{a != I} (z_a - omega^m s), with arg(-omega^m s) = 2 pi m/n - pi - 2 pi phi.
/// I is 1-based. Throws UsageError unless m is admissible at phi.
Complex leading_term(int m, const SectorPoint& sector, const ComplexVector& z, int I);

enum class PathKind { direct, reflected };

struct NGonPath {
  PathKind kind = PathKind::direct;
  int m = 0;
  int l = 0;
  int n = 2;

  /// direct: l..m. reflected: m-n..l-1. Both have the head vertex omega^m.
  std::vector<int> vertex_labels() const;
  /// The label standing for the head: m (direct) or m - n (reflected).
  int head_label() const;
  NGonPath reflected() const;
  std::string to_string() const;  // "C^m(l)" or "Cbar^m(l)"
  friend bool operator==(const NGonPath&, const NGonPath&) = default;
};

NGonPath make_path(int m, int l, int n, PathKind kind);

/// Terms (label, coefficient in Z) of the path's solution combination:
/// direct  Psi^m(l) = sum_{j=0}^{m-l} (-1)^j s_j Psi^{m-j};
/// reflected Psibar^m(l) = sum_{j=0}^{n-1-(m-l)} (-1)^{n-1-j} s_{n-j} Psi^{m-n+j}.
std::vector<std::pair<int, LaurentPoly>> path_combination(const NGonPath& path);
/// The coefficient attached to the head label.
LaurentPoly path_head_coefficient(const NGonPath& path);

/// Re(e^{-2 pi i phi} omega^head) strictly exceeds the value at every other vertex.
bool is_path_admissible(const NGonPath& path, const Rational& phi);

/// Psi^m values for one request, computed once per label.
class SolutionCache {
 public:
  explicit SolutionCache(SolutionRequest req) : req_(std::move(req)) {}
  const SolutionVector& psi(int m);
  const SolutionRequest& request() const { return req_; }

 private:
  SolutionRequest req_;
  std::map<int, SolutionVector> cache_;
};

/// Evaluate a path combination with Z acting as Z~.
ComplexVector path_solution(const NGonPath& path, SolutionCache& cache);
ComplexVector path_solution(const NGonPath& path, const SolutionRequest& req);

enum class Family { q_prime, q_double_prime };
std::string to_string(Family f);

/// The direct paths of Q'_k or Q''_k: the braid layouts with labels shifted by k.
std::vector<NGonPath> family_paths(Family f, int k, int n);
std::vector<ComplexVector> basis_family(Family f, int k, const SolutionRequest& req);

/// E(r) = max_I |path_I / (head coefficient * leading term_I) - 1| over radii,
/// with consecutive ratios E(r_{j+1}) / E(r_j).
struct AsymptoticCheck {
  std::vector<double> radii;
  std::vector<double> errors;
  std::vector<double> ratios;
  bool pass = false;
  std::string diagnostic;
};

AsymptoticCheck path_asymptotics(const NGonPath& path, const Rational& phi, const ComplexVector& z, unsigned digits,
                                 const std::vector<double>& radii = {8, 16, 32}, double lo = 0.35, double hi = 0.65,
                                 int r_max = 2000);

/// One subinterval of the walk between consecutive Stokes rays.
struct WalkStep {
  Rational lo, hi, mid;
  RayParity crossed = RayParity::none;  // the ray at hi, just crossed; none for the first step
  int rewrites = 0;
  bool rewrite_ok = true;
  std::vector<NGonPath> paths;
  std::vector<bool> admissible;
};

struct WalkResult {
  Family family = Family::q_prime;
  int k = 0;
  int n = 2;
  Rational a, eps, lo, hi;
  bool in_theorem_interval = false;
  std::vector<WalkStep> steps;
  bool ok = false;  // rewrites as required and every path admissible on every step
  std::string diagnostic;
};

/// The open interval in which a is required to lie for the family and k.
std::pair<Rational, Rational> theorem_interval(Family f, int k, int n);

/// Walk the subintervals of (a - 1/2 - eps, a + eps) downward from the top,
/// rewriting a path to its reflection whenever one of its labels leaves the
/// admissible set; exactly one rewrite must happen per even ray crossed and
/// none per odd ray. eps is half the distance from a to the nearest ray.
WalkResult stokes_walk(Family f, int k, const Rational& a, int n);

}  // namespace stokeslab
