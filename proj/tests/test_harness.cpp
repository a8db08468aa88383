#include "dunkl/harness.hpp"

#include "doctest.h"
#include "json.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace dunkl;

namespace {

std::string error_of(const std::string& text)
{
  try {
    parse_config(text, "cfg.ini");
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

bool contains(const std::string& s, const std::string& part) { return s.find(part) != std::string::npos; }

}  // namespace

TEST_CASE("fnv1a64 test vectors")
{
  CHECK(fnv1a64("") == 0xcbf29ce484222325ull);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cull);
  CHECK(fnv1a64("foobar") == 0x85944171f73967e8ull);
}

TEST_CASE("defaults")
{
  const auto cfg = parse_config("");
  CHECK(cfg.group == GroupKind::RankOne);
  REQUIRE(cfg.multiplicities.size() == 1);
  CHECK(cfg.multiplicities[0] == Rational(1));
  CHECK(cfg.alpha == Rational(1, 2));
  CHECK(cfg.p == Rational(3, 2));
  CHECK(cfg.hom_dim() == Rational(3));
  CHECK(cfg.dim() == 1);
  CHECK(cfg.experiments.empty());
  // 1/q = 1/p - alpha/N = 2/3 - 1/6
  CHECK(cfg.exponents().q == Rational(2));
}

TEST_CASE("full config")
{
  const auto cfg = parse_config(R"(
# comment
[group]
kind = product
multiplicities = 1/2, 0, 3/2   ; trailing comment

[exponents]
alpha = 1
p = 2

[quadrature]
rel_tol = 1e-6
shell_floor = 0.01

[run]
seed = 7
samples = 8
workers = 3
out = somewhere
experiments = reflection-group, riesz-lp-lq
)");
  CHECK(cfg.group == GroupKind::Product);
  REQUIRE(cfg.multiplicities.size() == 3);
  CHECK(cfg.multiplicities[0] == Rational(1, 2));
  CHECK(cfg.multiplicities[2] == Rational(3, 2));
  CHECK(cfg.dim() == 3);
  CHECK(cfg.hom_dim() == Rational(7));
  CHECK(cfg.exponents().q == Rational(14, 5));
  CHECK(cfg.rel_tol == 1e-6);
  CHECK(cfg.shell_floor == 0.01);
  CHECK(cfg.seed == 7u);
  CHECK(cfg.samples == 8);
  CHECK(cfg.workers == 3);
  CHECK(cfg.out == "somewhere");
  CHECK(cfg.experiments == std::vector<std::string>{"reflection-group", "riesz-lp-lq"});
  CHECK(cfg.roots().dim() == 3);
}

TEST_CASE("errors name the line and key")
{
  CHECK(contains(error_of("[group]\nmultiplicity = 1\n[bogus]\n"), "cfg.ini:3: key 'bogus'"));
  CHECK(contains(error_of("[group]\ncolour = red\n"), "cfg.ini:2: key 'group.colour': unknown key"));
  CHECK(contains(error_of("[run]\nseed = 1\nseed = 2\n"), "cfg.ini:3: key 'run.seed': duplicate key"));
  CHECK(contains(error_of("[run]\nout =\n"), "cfg.ini:2: key 'run.out': empty value"));
  CHECK(contains(error_of("[run]\nsamples = 3\n"), "cfg.ini:2: key 'run.samples'"));
  CHECK(contains(error_of("[run]\nworkers = 0\n"), "key 'run.workers'"));
  CHECK(contains(error_of("[run]\nseed = -4\n"), "key 'run.seed'"));
  CHECK(contains(error_of("[quadrature]\nrel_tol = abc\n"), "key 'quadrature.rel_tol'"));
  CHECK(contains(error_of("[quadrature]\nshell_floor = -1\n"), "key 'quadrature.shell_floor'"));
  CHECK(contains(error_of("[group]\nkind = dihedral\n"), "cfg.ini:2: key 'group.kind'"));
  CHECK(contains(error_of("[exponents]\n\nalpha = x/2\n"), "cfg.ini:3: key 'exponents.alpha'"));
  CHECK(contains(error_of("seed = 1\n"), "key outside a section"));
  CHECK(contains(error_of("[run\n"), "unterminated section header"));
  CHECK(contains(error_of("[run]\nseed\n"), "expected key = value"));
  CHECK(contains(error_of("[group]\nmultiplicity = 1\nmultiplicities = 1\n"), "not both"));
  CHECK(contains(error_of("[group]\nmultiplicities = 1, 2\n"), "rank-one takes exactly one multiplicity"));
  CHECK(contains(error_of("[group]\nmultiplicity = -1/2\n"), "cfg.ini:2: key 'group.multiplicities'"));
}

TEST_CASE("exponent constraints are config errors")
{
  // N = 3 at k = 1, so p must stay below N / alpha = 6.
  CHECK(contains(error_of("[exponents]\nalpha = 1/2\np = 6\n"), "cfg.ini:3: key 'exponents.p'"));
  CHECK(contains(error_of("[exponents]\np = 7\n"), "key 'exponents.p'"));
  CHECK(contains(error_of("[exponents]\np = 1\n"), "key 'exponents.p'"));
  CHECK(contains(error_of("[exponents]\nalpha = 1\n"), "cfg.ini:2: key 'exponents.alpha'"));
  CHECK(contains(error_of("[exponents]\nalpha = 0\n"), "key 'exponents.alpha'"));
  CHECK(error_of("[exponents]\np = 599/100\n").empty());

  ExperimentConfig cfg;
  cfg.p = Rational(6);
  CHECK_THROWS_AS(validate(cfg), ConfigError);
  CHECK_THROWS_AS(run_experiments(cfg), ConfigError);
}

TEST_CASE("canonical form and hash")
{
  const auto a = parse_config("[group]\nmultiplicity = 2/4\n[run]\nworkers = 4\nout = x\n");
  const auto b = parse_config("[run]\nout = y\n\n[group]\nkind = rank-one\nmultiplicities = 1/2\n");
  CHECK(a.canonical() == b.canonical());
  CHECK(a.hash() == b.hash());
  CHECK(a.hash() == fnv1a64(a.canonical()));
  CHECK_FALSE(contains(a.canonical(), "workers"));
  CHECK_FALSE(contains(a.canonical(), "out"));
  CHECK_FALSE(contains(a.canonical(), "exponents.q"));
  auto c = a;
  c.seed += 1;
  CHECK(c.hash() != a.hash());
  c = a;
  c.alpha = Rational(1, 3);
  CHECK(c.hash() != a.hash());
  CHECK(parse_config("[run]\nexperiments = all\n").experiments.empty());
}

TEST_CASE("registry and listing")
{
  const auto& reg = experiment_registry();
  CHECK(reg.size() == 16);
  for (std::size_t i = 1; i < reg.size(); ++i) CHECK(static_cast<int>(reg[i - 1].stage) <= static_cast<int>(reg[i].stage));
  const std::string all = list_experiments("");
  CHECK(contains(all, "lemma-3.1-size\triesz\tsize condition and smoothness condition\n"));
  CHECK(list_experiments("no-such-experiment").empty());
  CHECK(select_experiments("commutator").size() == 4);
  CHECK(select_experiments("", {"riesz-lp-lq"}).size() == 1);
  for (Stage s : {Stage::Geometry, Stage::Measure, Stage::Heat, Stage::Riesz, Stage::Bmo, Stage::Commutator})
    CHECK(stage_from_string(to_string(s)) == s);
  CHECK_THROWS_AS(stage_from_string("nope"), std::invalid_argument);

  ExperimentConfig cfg;
  cfg.experiments = {"reflection-group", "not-an-id"};
  CHECK_THROWS_AS(run_experiments(cfg), ConfigError);
}

TEST_CASE("report is deterministic")
{
  ExperimentConfig cfg;
  cfg.experiments = {"reflection-group", "measure-geometry", "bmo-algebra"};
  RunOptions opt;
  opt.serial = true;
  const auto r1 = run_experiments(cfg, opt);
  const auto r2 = run_experiments(cfg, opt);
  opt.serial = false;
  cfg.workers = 3;
  const auto r3 = run_experiments(cfg, opt);
  REQUIRE(r1.outcomes.size() == 3);
  CHECK(r1.failures() == 0);
  CHECK(r1.exit_code() == 0);
  const std::string j1 = report_json(cfg, r1);
  CHECK(j1 == report_json(cfg, r2));
  CHECK(j1 == report_json(cfg, r3));

  const auto doc = nlohmann::json::parse(j1);
  CHECK(doc["schema"] == kReportSchema);
  CHECK(doc["environment"]["version"] == kVersion);
  CHECK(doc["config_hash"].get<std::string>().size() == 16);
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(cfg.hash()));
  CHECK(doc["config_hash"] == hex);
  CHECK(doc["summary"]["checks"] == r1.checks());
  CHECK(doc["summary"]["exit_code"] == 0);
  CHECK(doc["experiments"][0]["id"] == "reflection-group");
  CHECK(doc["experiments"][2]["id"] == "bmo-algebra");
  for (const auto& ex : doc["experiments"])
    for (const auto& c : ex["checks"]) CHECK(c["anchor"] == ex["anchor"]);
  CHECK_FALSE(contains(j1, "workers"));

  // Stage and filter narrow the selection.
  RunOptions only;
  only.stage = Stage::Measure;
  CHECK(run_experiments(cfg, only).outcomes.size() == 1);
  only = {};
  only.filter = "zzz";
  const auto none = run_experiments(cfg, only);
  CHECK(none.outcomes.empty());
  CHECK(none.exit_code() == 0);

  const auto dir = std::filesystem::temp_directory_path() / "dunkl_harness_test";
  std::filesystem::remove_all(dir);
  write_outputs(dir, cfg, r1);
  std::ifstream in(dir / "report.json");
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == j1);
  std::filesystem::remove_all(dir);
}
