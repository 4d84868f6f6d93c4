#pragma once

// Named verification suites. Each member check yields a CheckRecord; a check
// that throws is recorded as failed with the exception text and the suite
// carries on.

#include "stokeslab/stokes.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace stokeslab {

struct CheckRecord {
  std::string check_id;
  nlohmann::json parameters = nlohmann::json::object();
  bool exact = false;             // symbolic: pass iff equality holds
  std::optional<double> residual;  // numeric checks only
  double threshold = 0;
  bool pass = false;
  std::optional<double> wall_time;  // seconds; only with VerifyConfig::timing
  std::string diagnostic;
};

nlohmann::json to_json(const CheckRecord& r);

struct VerifyConfig {
  std::optional<int> n;  // restrict to one rank
  int n_max = 0;         // 0 selects the suite default
  unsigned digits = 40;
  std::uint64_t seed = 1;
  int samples = 3;  // seeded (p, z) points per rank in numeric suites
  int k = 0;
  std::optional<Rational> a;  // stokes suite: certify at this a
  std::optional<Family> family;
  bool timing = false;
};

nlohmann::json to_json(const VerifyConfig& c);

const std::vector<std::string>& suite_names();  // algebra ... stokes, all

/// Throws UsageError on an unknown suite name.
std::vector<CheckRecord> run_suite(const std::string& name, const VerifyConfig& config);

/// The subinterval walk with a rewrite record per subinterval and an
/// asymptotic record per (element, subinterval). A record for the interval
/// precondition comes first.
std::vector<CheckRecord> certify_stokes_basis(Family f, int k, const Rational& a, int n, const VerifyConfig& config);

/// Records of the walk for k compared with the k = 0 walk at a - k/n after
/// relabeling m -> m - k.
CheckRecord stokes_relabel_check(Family f, int k, const Rational& a, int n, const VerifyConfig& config);

/// Q''_k = delta_odd Q'_k and rescale_first(delta_even Q''_k) = Q'_{k-1},
/// exactly in M_n and, with `numeric`, on solution vectors: the module
/// vectors instantiated on Psi^1..Psi^n against the path combinations.
std::vector<CheckRecord> consecutive_bases_check(int k, int n, const VerifyConfig& config, bool numeric = true);

/// Seeded z with lpp margin >= 0.25: real parts in [-1, 1], imaginary parts
/// in [-0.3, 0.3], rounded to 1e-6 so the decimal form is exact.
ComplexVector sample_z(int n, std::mt19937_64& rng);
/// |p| log-uniform in [lo, hi], arg p uniform in [-pi, pi].
ArgTracked sample_p(std::mt19937_64& rng, double lo, double hi);

/// sum_j comps[j](Z~) Psi^j over labels 1..n.
ComplexVector instantiate(const ModuleVector& v, SolutionCache& cache);

/// Residuals used by the numeric suites, relative to the size of the solution.
double qde_residual(const SolutionRequest& req, int m);
double qkz_residual(const SolutionRequest& req, int m, int i);
double relation_residual(const SolutionRequest& req, int k);
double monodromy_residual(const SolutionRequest& req, int k);

/// max_I |R_J(p)_I - delta_{IJ}| for the normalised Psi_J at |p| = p_mod, arg 0.
double gamma_deviation(int J, const ComplexVector& z, double p_mod, unsigned digits);

}  // namespace stokeslab
