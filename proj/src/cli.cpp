#include "stokeslab/cli.hpp"

#include "stokeslab/errors.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace stokeslab {

using json = nlohmann::json;

namespace {

template <class T>
json opt_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!text.empty() && text.back() == sep) out.emplace_back();
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

Real parse_real(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  try {
    if (t.empty()) throw std::invalid_argument("empty");
    return Real(t);
  } catch (const std::exception&) {
    throw UsageError("cannot parse " + what + " '" + text + "'");
  }
}

int rank_of(const RunConfig& c, const ComplexVector& z) {
  const int n = static_cast<int>(z.size());
  if (c.n && *c.n != n) throw UsageError("--n does not match the number of z entries");
  return n;
}

SolutionRequest make_request(const RunConfig& c, unsigned digits) {
  SolutionRequest req;
  req.z = resolve_z(c);
  req.p = resolve_p(c, rank_of(c, req.z));
  req.digits = digits;
  req.r_max = c.r_max;
  req.tol = c.tol;
  req.validate();
  return req;
}

/// Output stream: the --out file when given, else the fallback.
class Sink {
 public:
  Sink(const std::optional<std::string>& path, std::ostream& fallback) : os_(&fallback) {
    if (path) {
      file_.open(*path, std::ios::binary);
      if (!file_) throw UsageError("cannot open output file '" + *path + "'");
      os_ = &file_;
    }
  }
  std::ostream& stream() { return *os_; }

 private:
  std::ofstream file_;
  std::ostream* os_;
};

int cmd_eval(const RunConfig& c, std::ostream& out) {
  const unsigned digits = resolve_precision(c, 40);
  PrecisionScope scope(digits);
  const auto req = make_request(c, digits);
  const int n = static_cast<int>(req.z.size());
  const int selectors = (c.m ? 1 : 0) + (c.J ? 1 : 0) + (c.Q ? 1 : 0);
  if (selectors != 1) throw UsageError("eval needs exactly one of --m, --J, --Q");
  if (c.evaluator != "jackson" && c.evaluator != "parabola") throw UsageError("unknown evaluator '" + c.evaluator + "'");
  const bool parabola = c.evaluator == "parabola";

  SolutionVector v;
  std::string solution;
  if (c.m) {
    v = parabola ? psi_m_parabola(*c.m, req) : psi_m(*c.m, req);
    solution = "Psi^" + std::to_string(*c.m);
  } else if (c.J) {
    if (*c.J < 1 || *c.J > n) throw UsageError("--J must lie in 1..n");
    if (parabola) throw UsageError("Psi_J is available from the jackson evaluator only");
    v = psi_J_jackson(*c.J, req);
    solution = "Psi_" + std::to_string(*c.J);
  } else {
    const KClass q = parse_kclass(*c.Q, n);
    v = parabola ? psi_Q_parabola(q, req) : psi_Q_jackson(q, req);
    solution = "Psi_Q";
  }

  {
    Sink sink(c.out, out);
    auto& os = sink.stream();
    os << "component,re,im,evaluator,digits\n";
    for (int I = 0; I < n; ++I)
      os << I + 1 << ',' << to_string(v.values[I].re()) << ',' << to_string(v.values[I].im()) << ',' << v.evaluator
         << ',' << v.digits << '\n';
  }
  if (c.out) {
    json side{{"solution", solution},      {"evaluator", v.evaluator}, {"basis", to_string(v.basis)},
              {"digits", v.digits},        {"working_digits", v.working_digits},
              {"terms", v.terms},          {"lost_digits", v.lost_digits},
              {"p", {{"mod", to_string(req.p.modulus())}, {"arg", to_string(req.p.argument())}}},
              {"config", to_json(c)}};
    if (parabola) side["s_max"] = v.s_max;
    std::ofstream f(*c.out + ".json", std::ios::binary);
    if (!f) throw UsageError("cannot open sidecar '" + *c.out + ".json'");
    f << side.dump(2) << '\n';
  }
  return exit_pass;
}

int cmd_verify(const RunConfig& c, std::ostream& out) {
  VerifyConfig vc;
  vc.n = c.n;
  vc.n_max = c.n_max;
  vc.digits = resolve_precision(c, 40);
  vc.seed = c.seed;
  vc.samples = c.samples;
  vc.k = c.k;
  if (c.a) vc.a = parse_rational(*c.a);
  if (c.family) vc.family = parse_family(*c.family);
  vc.timing = c.timing;
  if (vc.n && *vc.n < 2) throw UsageError("--n must be at least 2");

  const auto records = run_suite(c.suite, vc);
  json report;
  report["config"] = to_json(vc);
  report["config"]["suite"] = c.suite;
  report["records"] = json::array();
  int pass = 0, fail = 0;
  for (const auto& r : records) {
    report["records"].push_back(to_json(r));
    (r.pass ? pass : fail)++;
  }
  report["summary"] = {{"pass", pass}, {"fail", fail}};
  Sink sink(c.out, out);
  sink.stream() << report.dump(2) << '\n';
  return fail == 0 ? exit_pass : exit_check_failure;
}

// Every trace shares one header: index is J, m or k; phi is set for stokes only.
constexpr const char* kTraceHeader = "trace,index,phi,x,y";

void gamma_trace(const RunConfig& c, unsigned digits, std::ostream& os) {
  ComplexVector z;
  {
    PrecisionScope scope(digits);
    z = resolve_z(c);
  }
  const int n = rank_of(c, z);
  for (int J = 1; J <= n; ++J)
    for (double p : {1e-1, 1e-2, 1e-3, 1e-4})
      os << "gamma," << J << ",," << p << ',' << gamma_deviation(J, z, p, digits) << '\n';
}

void stokes_trace(const RunConfig& c, unsigned digits, std::ostream& os) {
  const unsigned d = std::max(digits, 60u);
  PrecisionScope scope(d);
  const ComplexVector z = resolve_z(c);
  const int n = rank_of(c, z);
  std::vector<Rational> phis;
  if (c.sector_phi) {
    phis.push_back(parse_rational(*c.sector_phi));
  } else {
    for (int j = -n; j < n; ++j) phis.emplace_back(2 * j + 1, 4 * n);  // subinterval midpoints in (-1/2, 1/2)
  }
  for (const auto& phi : phis) {
    for (int m : admissible_ms(phi, n)) {
      const auto chk = path_asymptotics(make_path(m, m, n, PathKind::direct), phi, z, d, {4, 8, 16, 32}, 0, 1, 4000);
      for (std::size_t i = 0; i < chk.errors.size(); ++i)
        os << "stokes," << m << ',' << rational_to_string(phi) << ',' << chk.radii[i] << ',' << chk.errors[i] << '\n';
    }
  }
}

void monodromy_trace(const RunConfig& c, unsigned digits, std::ostream& os) {
  PrecisionScope scope(digits);
  SolutionRequest req;
  req.z = resolve_z(c);
  rank_of(c, req.z);
  req.digits = digits;
  req.r_max = c.r_max;
  req.tol = c.tol;
  const Real mod = c.p_mod ? parse_real(*c.p_mod, "--p-mod") : Real(1);
  for (int j = -4; j <= 4; ++j) {
    const double theta = 3.14159 * j / 4;
    req.p = ArgTracked(mod, Real(theta));
    req.validate();
    os << "monodromy," << c.k << ",," << theta << ',' << monodromy_residual(req, c.k) << '\n';
  }
}

int cmd_table(const RunConfig& c, std::ostream& out) {
  const unsigned digits = resolve_precision(c, 40);
  std::vector<std::string> names;
  for (const auto& t : split(c.trace, ','))
    if (!trim(t).empty()) names.push_back(trim(t));
  for (const auto& t : names)
    if (t != "gamma" && t != "stokes" && t != "monodromy") throw UsageError("unknown trace '" + t + "'");
  std::ostringstream buf;
  buf << std::setprecision(17) << kTraceHeader << '\n';
  for (const auto& t : names) {
    if (t == "gamma") gamma_trace(c, digits, buf);
    if (t == "stokes") stokes_trace(c, digits, buf);
    if (t == "monodromy") monodromy_trace(c, digits, buf);
  }
  Sink sink(c.out, out);
  sink.stream() << buf.str();
  return exit_pass;
}

}  // namespace

json to_json(const RunConfig& c) {
  json j;
  j["command"] = c.command;
  j["n"] = opt_json(c.n);
  j["z"] = opt_json(c.z);
  j["z_seed"] = opt_json(c.z_seed);
  j["p_mod"] = opt_json(c.p_mod);
  j["p_arg"] = opt_json(c.p_arg);
  j["sector_r"] = opt_json(c.sector_r);
  j["sector_phi"] = opt_json(c.sector_phi);
  j["m"] = opt_json(c.m);
  j["J"] = opt_json(c.J);
  j["Q"] = opt_json(c.Q);
  j["k"] = c.k;
  j["a"] = opt_json(c.a);
  j["precision"] = resolve_precision(c, 40);
  j["r_max"] = c.r_max;
  j["tol"] = c.tol;
  j["evaluator"] = c.evaluator;
  j["suite"] = c.suite;
  j["seed"] = c.seed;
  j["n_max"] = c.n_max;
  j["samples"] = c.samples;
  j["family"] = opt_json(c.family);
  j["trace"] = c.trace;
  return j;
}

unsigned resolve_precision(const RunConfig& c, unsigned fallback) {
  unsigned d = fallback;
  if (c.precision) {
    d = *c.precision;
  } else if (const char* env = std::getenv("STOKESLAB_PRECISION"); env && *env) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v <= 0) throw UsageError(std::string("bad STOKESLAB_PRECISION '") + env + "'");
    d = static_cast<unsigned>(v);
  }
  if (d < 10 || d > 2000) throw UsageError("precision must lie in [10, 2000] digits");
  return d;
}

ComplexVector parse_z_list(const std::string& text) {
  ComplexVector z;
  if (text.find(';') != std::string::npos) {
    for (const auto& e : split(text, ';')) {
      const auto parts = split(e, ',');
      if (parts.size() != 2) throw UsageError("z entry '" + e + "' is not a re,im pair");
      z.emplace_back(parse_real(parts[0], "z"), parse_real(parts[1], "z"));
    }
  } else {
    for (const auto& e : split(text, ',')) z.emplace_back(parse_real(e, "z"), Real(0));
  }
  if (z.size() < 2) throw UsageError("z needs at least two entries");
  return z;
}

ComplexVector resolve_z(const RunConfig& c) {
  if (c.z.has_value() == c.z_seed.has_value()) throw UsageError("give exactly one of --z and --z-seed");
  if (c.z) {
    auto z = parse_z_list(*c.z);
    if (c.n && *c.n != static_cast<int>(z.size())) throw UsageError("--n does not match the number of z entries");
    return z;
  }
  if (!c.n || *c.n < 2) throw UsageError("--z-seed needs --n >= 2");
  std::mt19937_64 rng(*c.z_seed);
  return sample_z(*c.n, rng);
}

ArgTracked resolve_p(const RunConfig& c, int n) {
  const bool polar = c.p_mod || c.p_arg, sector = c.sector_r || c.sector_phi;
  if (polar && sector) throw UsageError("give p either as --p-mod/--p-arg or as --sector-r/--sector-phi");
  if (sector) {
    if (!c.sector_r || !c.sector_phi) throw UsageError("--sector-r and --sector-phi go together");
    const SectorPoint sp{parse_real(*c.sector_r, "--sector-r"), parse_rational(*c.sector_phi)};
    if (sp.r <= 0) throw UsageError("--sector-r must be positive");
    return sp.p(n);
  }
  if (!c.p_mod) throw UsageError("p is required: --p-mod [--p-arg] or --sector-r --sector-phi");
  const Real mod = parse_real(*c.p_mod, "--p-mod");
  if (mod <= 0) throw UsageError("--p-mod must be positive");
  return ArgTracked(mod, c.p_arg ? parse_real(*c.p_arg, "--p-arg") : Real(0));
}

Family parse_family(const std::string& text) {
  if (text == "qprime" || text == "Qprime" || text == "q_prime") return Family::q_prime;
  if (text == "qdoubleprime" || text == "Qdoubleprime" || text == "q_double_prime") return Family::q_double_prime;
  throw UsageError("unknown family '" + text + "' (use Qprime or Qdoubleprime)");
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"stokeslab: q-difference solutions, braid actions and Stokes bases"};
  app.require_subcommand(1, 1);
  RunConfig c;

  // Optional inputs are collected as strings and copied into the config after parsing.
  std::string z, p_mod, p_arg, sector_r, sector_phi, Q, a, out_path, family;
  std::uint64_t z_seed = 0;
  int n = 0, m = 0, J = 0;
  unsigned precision = 0;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--n", n, "rank");
    sub->add_option("--precision", precision, "working precision D in decimal digits");
    sub->add_option("--out", out_path, "output path (default stdout)");
    sub->add_option("--k", c.k, "label shift k");
    sub->add_option("--r-max", c.r_max, "series term budget");
    sub->add_option("--tol", c.tol, "truncation tolerance (0: 10^-(D+5))");
  };
  auto points = [&](CLI::App* sub) {
    sub->add_option("--z", z, "equivariant parameters: 'a,b,c' or 're,im;re,im;...'");
    sub->add_option("--z-seed", z_seed, "seed for a sampled z");
    sub->add_option("--p-mod", p_mod, "|p|");
    sub->add_option("--p-arg", p_arg, "arg p in radians, unbounded");
    sub->add_option("--sector-r", sector_r, "r with s = r e^{-2 pi i phi}, p = s^n");
    sub->add_option("--sector-phi", sector_phi, "phi in turns");
  };

  auto* eval = app.add_subcommand("eval", "evaluate a solution to CSV");
  common(eval);
  points(eval);
  eval->add_option("--m", m, "Psi^m");
  eval->add_option("--J", J, "Psi_J");
  eval->add_option("--Q", Q, "Psi_Q for a class in X, Z1..Zn");
  eval->add_option("--evaluator", c.evaluator, "jackson or parabola");

  auto* verify = app.add_subcommand("verify", "run verification suites to a JSON report");
  common(verify);
  verify->add_option("--suite", c.suite, "algebra|braid|operators|solutions|gamma|monodromy|stokes|all");
  verify->add_option("--seed", c.seed, "seed");
  verify->add_option("--n-max", c.n_max, "largest rank (0: suite default)");
  verify->add_option("--samples", c.samples, "seeded samples per rank");
  verify->add_option("--a", a, "stokes suite: certify at this a");
  verify->add_option("--family", family, "Qprime or Qdoubleprime");
  verify->add_flag("--timing", c.timing, "record wall time per check");

  auto* table = app.add_subcommand("table", "emit CSV traces");
  common(table);
  points(table);
  table->add_option("--trace", c.trace, "comma-separated: gamma, stokes, monodromy");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_pass;
  } catch (const CLI::ParseError& e) {
    err << "stokeslab: " << e.what() << '\n';
    return exit_usage;
  }

  CLI::App* sub = app.get_subcommands().front();
  c.command = sub->get_name();
  auto given = [&](const char* flag) { return sub->count(flag) > 0; };
  if (given("--n")) c.n = n;
  if (given("--precision")) c.precision = precision;
  if (given("--out")) c.out = out_path;
  if (c.command != "verify") {
    if (given("--z")) c.z = z;
    if (given("--z-seed")) c.z_seed = z_seed;
    if (given("--p-mod")) c.p_mod = p_mod;
    if (given("--p-arg")) c.p_arg = p_arg;
    if (given("--sector-r")) c.sector_r = sector_r;
    if (given("--sector-phi")) c.sector_phi = sector_phi;
  }
  if (c.command == "eval") {
    if (given("--m")) c.m = m;
    if (given("--J")) c.J = J;
    if (given("--Q")) c.Q = Q;
  }
  if (c.command == "verify") {
    if (given("--a")) c.a = a;
    if (given("--family")) c.family = family;
  }

  try {
    if (c.command == "eval") return cmd_eval(c, out);
    if (c.command == "verify") return cmd_verify(c, out);
    return cmd_table(c, out);
  } catch (const ConvergenceError& e) {
    err << "stokeslab: convergence failure: " << e.what() << '\n';
    return exit_convergence;
  } catch (const UsageError& e) {
    err << "stokeslab: " << e.what() << '\n';
    return exit_usage;
  } catch (const DomainError& e) {
    err << "stokeslab: " << e.what() << '\n';
    return exit_usage;
  } catch (const std::exception& e) {
    err << "stokeslab: internal error: " << e.what() << '\n';
    return exit_check_failure;
  }
}

}  // namespace stokeslab
