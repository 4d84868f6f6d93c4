#pragma once

// The stokeslab command line: eval (CSV plus JSON sidecar), verify (JSON
// report), table (CSV traces). Exit codes: 0 pass, 1 check failure, 2 usage,
// 3 convergence.

#include "stokeslab/verify.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace stokeslab {

enum ExitCode : int { exit_pass = 0, exit_check_failure = 1, exit_usage = 2, exit_convergence = 3 };

struct RunConfig {
  std::string command;  // eval | verify | table
  std::optional<int> n;
  std::optional<std::string> z;  // "a,b,c" reals, or "re,im;re,im;..." complex entries
  std::optional<std::uint64_t> z_seed;
  std::optional<std::string> p_mod, p_arg;
  std::optional<std::string> sector_r, sector_phi;  // phi in turns
  std::optional<int> m;
  std::optional<int> J;
  std::optional<std::string> Q;
  int k = 0;
  std::optional<std::string> a;
  std::optional<unsigned> precision;
  int r_max = 400;
  double tol = 0;
  std::string evaluator = "jackson";
  std::string suite = "all";
  std::optional<std::string> out;
  std::uint64_t seed = 1;
  int n_max = 0;
  int samples = 3;
  std::optional<std::string> family;
  std::string trace;
  bool timing = false;
};

nlohmann::json to_json(const RunConfig& c);

/// --precision, else STOKESLAB_PRECISION, else the fallback.
unsigned resolve_precision(const RunConfig& c, unsigned fallback);

/// Entries from --z: commas separate reals unless ';' is present, in which
/// case ';' separates "re,im" entries.
ComplexVector parse_z_list(const std::string& text);

/// z from --z or --z-seed (exactly one), checked against n when given.
ComplexVector resolve_z(const RunConfig& c);

/// p from (--p-mod, --p-arg) or from the sector form; mixing both is a usage error.
ArgTracked resolve_p(const RunConfig& c, int n);

Family parse_family(const std::string& text);

/// Full driver; never throws. Reports go to --out when given, else to `out`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace stokeslab
