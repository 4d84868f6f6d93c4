#include "stokeslab/cli.hpp"
#include "stokeslab/errors.hpp"

#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

using namespace stokeslab;
using json = nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "stokeslab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("records serialize with the full field set") {
  CheckRecord r;
  r.check_id = "x.y";
  r.residual = 1e-30;
  r.threshold = 1e-25;
  r.pass = true;
  const json j = to_json(r);
  for (const char* key : {"check_id", "parameters", "kind", "residual", "threshold", "pass", "wall_time", "diagnostic"})
    CHECK(j.contains(key));
  CHECK(j["kind"] == "numeric");
  CHECK(j["wall_time"].is_null());
}

TEST_CASE("suites are deterministic and complete") {
  VerifyConfig cfg;
  cfg.seed = 7;
  const auto a = run_suite("algebra", cfg), b = run_suite("algebra", cfg);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(to_json(a[i]).dump() == to_json(b[i]).dump());
    CHECK(a[i].pass);
  }
  CHECK_THROWS_AS(run_suite("nope", cfg), UsageError);
  CHECK(suite_names().back() == "all");

  VerifyConfig mono;
  mono.n = 3;
  mono.samples = 1;
  for (const auto& r : run_suite("monodromy", mono)) {
    CHECK(r.pass);
    CHECK(*r.residual <= 1e-25);
  }
}

TEST_CASE("a failing member check does not stop the suite") {
  VerifyConfig cfg;
  const auto recs = certify_stokes_basis(Family::q_double_prime, 0, Rational(1, 5), 3, cfg);
  REQUIRE(!recs.empty());
  CHECK(recs.front().check_id == "stokes.interval_precondition");
  CHECK(!recs.front().pass);
  CHECK(recs.size() > 1);
}

TEST_CASE("seeded samples respect the margin") {
  std::mt19937_64 rng(1);
  PrecisionScope scope(30);
  for (int t = 0; t < 20; ++t) {
    const auto z = sample_z(4, rng);
    CHECK(lpp_margin(z) >= 0.25);
    const auto p = sample_p(rng, 0.1, 5);
    CHECK(p.modulus() >= Real("0.099"));
    CHECK(p.modulus() <= Real("5.01"));
  }
}

TEST_CASE("z and p on the command line") {
  PrecisionScope scope(30);
  const auto re = parse_z_list("0.31, -0.36,-0.02");
  REQUIRE(re.size() == 3);
  CHECK(re[1].re() == Real("-0.36"));
  const auto cx = parse_z_list("0.1,0.2;-0.3,0");
  REQUIRE(cx.size() == 2);
  CHECK(cx[0].im() == Real("0.2"));
  CHECK_THROWS_AS(parse_z_list("0.1"), UsageError);
  CHECK_THROWS_AS(parse_z_list("0.1,x"), UsageError);
  CHECK_THROWS_AS(parse_z_list("0.1;0.2,0.3"), UsageError);

  RunConfig c;
  c.sector_r = "10";
  c.sector_phi = "0.2";
  const auto p = resolve_p(c, 3);
  CHECK(p.modulus() == 1000);
  CHECK(to_double(p.argument()) == doctest::Approx(-2 * M_PI * 3 * 0.2));
  c.p_mod = "1";
  CHECK_THROWS_AS(resolve_p(c, 3), UsageError);

  RunConfig both;
  both.z = "0.1,0.6";
  both.z_seed = 3;
  CHECK_THROWS_AS(resolve_z(both), UsageError);
  RunConfig neither;
  CHECK_THROWS_AS(resolve_z(neither), UsageError);
  RunConfig seeded;
  seeded.z_seed = 3;
  seeded.n = 3;
  CHECK(resolve_z(seeded).size() == 3);
  CHECK(parse_family("Qprime") == Family::q_prime);
  CHECK_THROWS_AS(parse_family("Q"), UsageError);
}

TEST_CASE("precision from flag or environment") {
  RunConfig c;
  ::unsetenv("STOKESLAB_PRECISION");
  CHECK(resolve_precision(c, 40) == 40);
  ::setenv("STOKESLAB_PRECISION", "55", 1);
  CHECK(resolve_precision(c, 40) == 55);
  c.precision = 30;
  CHECK(resolve_precision(c, 40) == 30);
  ::setenv("STOKESLAB_PRECISION", "abc", 1);
  c.precision.reset();
  CHECK_THROWS_AS(resolve_precision(c, 40), UsageError);
  ::unsetenv("STOKESLAB_PRECISION");
}

TEST_CASE("eval writes CSV and a provenance sidecar") {
  const std::string path = "unit_eval_out.csv";
  const auto r = cli({"eval", "--n", "3", "--z", "0.31,-0.36,-0.02", "--p-mod", "1", "--p-arg", "0", "--m", "1", "--out", path});
  CHECK(r.code == exit_pass);
  const auto rows = csv_rows(slurp(path));
  REQUIRE(rows.size() == 4);
  CHECK(rows[0] == std::vector<std::string>{"component", "re", "im", "evaluator", "digits"});
  CHECK(rows[1][3] == "jackson");
  CHECK(rows[1][4] == "40");
  CHECK(rows[1][1].find('.') != std::string::npos);
  const json side = json::parse(slurp(path + ".json"));
  CHECK(side["evaluator"] == "jackson");
  CHECK(side["digits"] == 40);
  CHECK(side["terms"].get<int>() > 0);
  CHECK(side["config"]["z"] == "0.31,-0.36,-0.02");
  std::remove(path.c_str());
  std::remove((path + ".json").c_str());

  const auto ideal = cli({"eval", "--n", "2", "--z", "0.3,-0.2", "--p-mod", "2", "--Q", "(X-Z1)*(X-Z2)"});
  CHECK(ideal.code == exit_pass);
  for (std::size_t i = 1; i < csv_rows(ideal.out).size(); ++i) CHECK(std::stod(csv_rows(ideal.out)[i][1]) == 0.0);

  const auto sector = cli({"eval", "--n", "3", "--z", "0.31,-0.36,-0.02", "--sector-r", "2", "--sector-phi", "0.2", "--J", "2"});
  CHECK(sector.code == exit_pass);
}

TEST_CASE("exit codes") {
  CHECK(cli({}).code == exit_usage);
  CHECK(cli({"frobnicate"}).code == exit_usage);
  CHECK(cli({"eval", "--n", "3", "--z", "0.31,-0.17,0.52", "--p-mod", "1", "--m", "1"}).code == exit_usage);
  CHECK(cli({"eval", "--z", "0.3,-0.2", "--z-seed", "1", "--p-mod", "1", "--m", "1"}).code == exit_usage);
  CHECK(cli({"eval", "--z", "0.3,-0.2", "--p-mod", "1", "--m", "1", "--sector-r", "1"}).code == exit_usage);
  CHECK(cli({"eval", "--z", "0.3,-0.2", "--p-mod", "1"}).code == exit_usage);
  CHECK(cli({"eval", "--z", "0.3,-0.2", "--p-mod", "50", "--m", "1", "--r-max", "5"}).code == exit_convergence);
  CHECK(cli({"verify", "--suite", "bogus"}).code == exit_usage);
  CHECK(cli({"table", "--trace", "bogus", "--n", "2", "--z-seed", "1"}).code == exit_usage);
  CHECK(cli({"--help"}).code == exit_pass);
}

TEST_CASE("verify reports") {
  const auto good = cli({"verify", "--suite", "stokes", "--n", "3", "--k", "0", "--a", "0.25"});
  CHECK(good.code == exit_pass);
  const json rep = json::parse(good.out);
  CHECK(rep["summary"]["fail"] == 0);
  CHECK(rep["summary"]["pass"].get<int>() == static_cast<int>(rep["records"].size()));
  CHECK(rep["config"]["a"] == "1/4");
  CHECK(rep["config"]["suite"] == "stokes");

  const auto bad = cli({"verify", "--suite", "stokes", "--n", "3", "--a", "0.2", "--family", "Qdoubleprime"});
  CHECK(bad.code == exit_check_failure);
  CHECK(json::parse(bad.out)["summary"]["fail"].get<int>() > 0);

  const auto again = cli({"verify", "--suite", "stokes", "--n", "3", "--k", "0", "--a", "0.25"});
  CHECK(again.out == good.out);

  const auto timed = cli({"verify", "--suite", "algebra", "--n", "2", "--timing"});
  CHECK(json::parse(timed.out)["records"][0]["wall_time"].is_number());
}

TEST_CASE("tables") {
  const auto empty = cli({"table", "--trace", "", "--n", "2", "--z-seed", "1"});
  CHECK(empty.code == exit_pass);
  CHECK(empty.out == "trace,index,phi,x,y\n");

  const auto t = cli({"table", "--trace", "gamma,monodromy", "--n", "2", "--z-seed", "4", "--p-mod", "1.5"});
  CHECK(t.code == exit_pass);
  const auto rows = csv_rows(t.out);
  int gamma = 0, mono = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    REQUIRE(rows[i].size() == 5);
    if (rows[i][0] == "gamma") ++gamma;
    if (rows[i][0] == "monodromy") {
      ++mono;
      CHECK(std::stod(rows[i][4]) < 1e-25);
    }
  }
  CHECK(gamma == 8);
  CHECK(mono == 9);

  const auto s = cli({"table", "--trace", "stokes", "--n", "2", "--z-seed", "4", "--sector-phi", "1/8"});
  CHECK(s.code == exit_pass);
  const auto srows = csv_rows(s.out);
  CHECK(srows.size() == 1 + 2 * 4);
  CHECK(srows[1][2] == "1/8");
}

TEST_CASE("a report's config re-runs to the same records") {
  const auto first = cli({"verify", "--suite", "solutions", "--n", "2", "--samples", "1", "--seed", "5", "--precision", "30"});
  const json cfg = json::parse(first.out)["config"];
  std::vector<std::string> args{"verify", "--suite", cfg["suite"].get<std::string>(), "--seed",
                                std::to_string(cfg["seed"].get<std::uint64_t>()), "--samples",
                                std::to_string(cfg["samples"].get<int>()), "--precision",
                                std::to_string(cfg["digits"].get<unsigned>()), "--k", std::to_string(cfg["k"].get<int>())};
  if (!cfg["n"].is_null()) args.insert(args.end(), {"--n", std::to_string(cfg["n"].get<int>())});
  const auto again = cli(args);
  CHECK(json::parse(again.out)["records"] == json::parse(first.out)["records"]);
}
