// Acceptance suite: one PASS/FAIL line per criterion, exit 0 iff all pass.

#include "dunkl/harness.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

using namespace dunkl;

namespace {

// Smallest riesz-lower-bound inf ratio at the default seed, recorded from a
// reference run. The criterion asks for at least 1% of it.
const std::map<std::string, double> kLowerBoundBaseline{
    {"1", 0.004716052567077136},
    {"1/2", 0.03577503067940575},
};

struct Verdict {
  std::vector<std::string> problems;

  void need(bool ok, const std::string& what)
  {
    if (!ok) problems.push_back(what);
  }
};

ExperimentConfig rank_one(const Rational& k)
{
  ExperimentConfig cfg;
  cfg.multiplicities = {k};
  return cfg;
}

ExperimentConfig product(std::vector<Rational> ks)
{
  ExperimentConfig cfg;
  cfg.group = GroupKind::Product;
  cfg.multiplicities = std::move(ks);
  return cfg;
}

RunResult run(ExperimentConfig cfg, std::vector<std::string> ids)
{
  cfg.experiments = std::move(ids);
  return run_experiments(cfg);
}

std::string label(const ExperimentConfig& cfg)
{
  std::string s = to_string(cfg.group);
  s += " k =";
  for (const auto& k : cfg.multiplicities) s += " " + k.str();
  return s;
}

const Outcome* outcome(const RunResult& r, const std::string& id)
{
  for (const auto& o : r.outcomes)
    if (o.report.id == id) return &o;
  return nullptr;
}

const Check* find_check(const Outcome& o, const std::string& name)
{
  for (const auto& c : o.report.checks)
    if (c.name == name) return &c;
  return nullptr;
}

/// The named check exists, passed, and (when given) used exactly `tol`.
void passed(Verdict& v, const RunResult& r, const std::string& where, const std::string& id, const std::string& name,
            std::optional<double> tol = std::nullopt)
{
  const auto* o = outcome(r, id);
  const std::string tag = where + " " + id + " '" + name + "'";
  if (!o) return v.need(false, tag + " not run");
  const auto* c = find_check(*o, name);
  if (!c) return v.need(false, tag + " missing");
  v.need(c->status == CheckStatus::Pass, tag + " did not pass");
  if (tol) v.need(c->tolerance && *c->tolerance == *tol, tag + " tolerance changed");
}

void experiment_passed(Verdict& v, const RunResult& r, const std::string& where, const std::string& id)
{
  const auto* o = outcome(r, id);
  v.need(o && o->report.passed(), where + " " + id + " has failing checks");
}

double metric(const RunResult& r, const std::string& id, const std::string& key)
{
  const auto* o = outcome(r, id);
  if (!o || !o->report.metrics.count(key)) return std::nan("");
  return o->report.metrics.at(key);
}

std::string read_file(const std::filesystem::path& p)
{
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Serial default runs shared by several criteria.
struct Runs {
  RunResult k1a, k1b, khalf;
  ExperimentConfig k1_cfg = rank_one(Rational(1));
  ExperimentConfig khalf_cfg = rank_one(Rational(1, 2));

  struct Named {
    std::string where;
    const RunResult* result;
    const ExperimentConfig* cfg;
  };
  std::vector<Named> full() const { return {{label(k1_cfg), &k1a, &k1_cfg}, {label(khalf_cfg), &khalf, &khalf_cfg}}; }
};

// ---------------------------------------------------------------------------

void classical(Verdict& v, const Runs&)
{
  for (const auto& cfg : {rank_one(Rational(0)), product({Rational(0), Rational(0)})}) {
    const auto r = run(cfg, {"dunkl-kernel", "heat-axioms", "riesz-classical"});
    const auto w = label(cfg);
    passed(v, r, w, "dunkl-kernel", "exponential at zero multiplicity", 1e-12);
    passed(v, r, w, "heat-axioms", "Gaussian at zero multiplicity", 1e-8);
    passed(v, r, w, "riesz-classical", "kernel against the closed form", 1e-5);
    passed(v, r, w, "riesz-classical", "time integral against the closed form", 1e-5);
    for (const auto* id : {"dunkl-kernel", "heat-axioms", "riesz-classical"}) experiment_passed(v, r, w, id);
  }
}

void heat_axioms(Verdict& v, const Runs& runs)
{
  const auto& r = runs.k1a;
  const std::string w = "rank-one k = 1";
  passed(v, r, w, "heat-axioms", "symmetry", 1e-8);
  passed(v, r, w, "heat-axioms", "positivity", 0.0);
  passed(v, r, w, "heat-axioms", "unit mass", 1e-5);
  passed(v, r, w, "heat-axioms", "semigroup", 1e-4);
  passed(v, r, w, "heat-axioms", "dual-route agreement", 1e-5);
  const auto* o = outcome(r, "heat-axioms");
  const auto* c = o ? find_check(*o, "positivity") : nullptr;
  v.need(c && c->statistic == 0.0, "nonpositive heat kernel values");
}

void gaussian_envelopes(Verdict& v, const Runs& runs)
{
  std::vector<std::pair<std::string, RunResult>> rs;
  for (const auto& n : runs.full()) rs.emplace_back(n.where, *n.result);
  for (const auto& cfg : {rank_one(Rational(0)), product({Rational(1, 2), Rational(1)})})
    rs.emplace_back(label(cfg), run(cfg, {"heat-gaussian-bounds"}));
  for (const auto& [w, r] : rs) {
    passed(v, r, w, "heat-gaussian-bounds", "upper ratio sup finite");
    passed(v, r, w, "heat-gaussian-bounds", "lower ratio inf positive");
    passed(v, r, w, "heat-gaussian-bounds", "upper sup stable under grid doubling", 0.1);
    passed(v, r, w, "heat-gaussian-bounds", "lower inf stable under grid doubling", 0.1);
  }
}

void measure(Verdict& v, const Runs& runs)
{
  std::vector<std::tuple<std::string, RunResult, double>> rs;
  for (const auto& n : runs.full()) rs.emplace_back(n.where, *n.result, n.cfg->hom_dim().value());
  for (const auto& cfg : {rank_one(Rational(0)), product({Rational(1, 2), Rational(1)}), product({Rational(1), Rational(1)})})
    rs.emplace_back(label(cfg), run(cfg, {"measure-geometry"}), cfg.hom_dim().value());
  for (const auto& [w, r, N] : rs) {
    passed(v, r, w, "measure-geometry", "scaling", 1e-5);
    passed(v, r, w, "measure-geometry", "doubling", std::pow(2.0, N) * (1.0 + 1e-5));
    passed(v, r, w, "measure-geometry", "growth sandwich");
    passed(v, r, w, "measure-geometry", "surrogate bracket stable (sup)", 0.1);
    passed(v, r, w, "measure-geometry", "surrogate bracket stable (inf)", 0.1);
  }
}

void kernel_estimates(Verdict& v, const Runs& runs)
{
  for (const auto& [w, r, cfg] : runs.full()) {
    passed(v, *r, w, "lemma-3.1-size", "size: sup finite");
    passed(v, *r, w, "lemma-3.1-size", "size sup stable under refinement", 0.1);
    passed(v, *r, w, "lemma-3.1-size", "smoothness in y: sup finite");
    passed(v, *r, w, "lemma-3.1-size", "smoothness in x: sup finite");
    experiment_passed(v, *r, w, "riesz-lower-bound");
    const auto* o = outcome(*r, "riesz-lower-bound");
    std::size_t coherent = 0;
    if (o)
      for (const auto& c : o->report.checks)
        if (c.name.find("sign coherence") != std::string::npos && c.status == CheckStatus::Pass) ++coherent;
    v.need(coherent == 8, w + " sign coherence on " + std::to_string(coherent) + " of 8 ball pairs");
    const double inf = metric(*r, "riesz-lower-bound", "inf_ratio");
    v.need(inf > 0.01 * kLowerBoundBaseline.at(cfg->multiplicities[0].str()), w + " inf ratio below 1% of its baseline");
  }
}

void riesz_bounds(Verdict& v, const Runs& runs)
{
  for (const auto& [w, r, cfg] : runs.full()) {
    passed(v, *r, w, "riesz-pointwise", "gaussian: ratio finite");
    passed(v, *r, w, "riesz-pointwise", "zero function gives zero");
    passed(v, *r, w, "riesz-lp-lq", "bumps: dilation invariance", 1e-3);
    passed(v, *r, w, "riesz-lp-lq", "bumps: ratio finite");
    passed(v, *r, w, "riesz-lp-lq", "exponent guard rejects p = 1");
  }
  passed(v, runs.k1a, "rank-one k = 1", "riesz-lp-lq", "exponent guard rejects p = 6");
  passed(v, runs.khalf, "rank-one k = 1/2", "riesz-lp-lq", "exponent guard rejects p = 4");
  auto bad = runs.k1_cfg;
  bad.p = Rational(6);
  bool rejected = false;
  try {
    validate(bad);
  } catch (const ConfigError&) {
    rejected = true;
  }
  v.need(rejected, "config with p = N / alpha accepted");
}

void commutator_bounds(Verdict& v, const Runs& runs)
{
  for (const auto& [w, r, cfg] : runs.full()) {
    passed(v, *r, w, "commutator-upper", "log: ratio finite");
    passed(v, *r, w, "commutator-upper", "constant symbol gives zero ratio", 0.0);
    experiment_passed(v, *r, w, "commutator-lower");
    passed(v, *r, w, "commutator-lower", "chain holds on every ball");
    const auto* o = outcome(*r, "commutator-lower");
    const auto* c = o ? find_check(*o, "chain holds on every ball") : nullptr;
    v.need(c && c->statistic == 10.0, w + " lower chain not recorded on 10 balls");
    for (int i = 0; i < 10; ++i) {
      const double C = metric(*r, "commutator-lower", "B" + std::to_string(i) + ".C");
      v.need(std::isfinite(C) && C > 0.0, w + " no finite constant on ball " + std::to_string(i));
    }
    passed(v, *r, w, "commutator-lower", "constant symbol gives exact zeros", 0.0);
    passed(v, *r, w, "commutator-norm", "constant symbol gives zero", 0.0);
  }
}

void compactness(Verdict& v, const Runs& runs)
{
  for (const auto& [w, r, cfg] : runs.full()) {
    passed(v, *r, w, "commutator-compactness", "smooth: tail exponent", 0.25);
    passed(v, *r, w, "commutator-compactness", "smooth: small-ball curve decreasing");
    const auto* o = outcome(*r, "commutator-compactness");
    const auto* c = o ? find_check(*o, "sign: small-ball last/first") : nullptr;
    v.need(c && c->status == CheckStatus::Info, w + " sign plateau not reported");
    const auto& tables = o ? o->tables : std::vector<Table>{};
    v.need(tables.size() == 4, w + " compactness curves missing");
  }
}

void oscillation(Verdict& v, const Runs& runs)
{
  for (const auto& [w, r, cfg] : runs.full()) {
    for (const std::string space : {"dunkl", "central", "dunkl-metric"}) {
      passed(v, *r, w, "bmo-algebra", space + ": constant gives zero", 0.0);
      passed(v, *r, w, "bmo-algebra", space + ": scales under 2b", 1e-12);
      passed(v, *r, w, "bmo-algebra", space + ": scales under -b/2", 1e-12);
      passed(v, *r, w, "bmo-algebra", space + ": invariant under b + 3", 1e-8);
      passed(v, *r, w, "bmo-algebra", space + ": p-mean ratio finite and >= 1");
    }
    passed(v, *r, w, "bmo-algebra", "median half-measure inequalities", 1e-6);
  }
}

void reproducibility(Verdict& v, const Runs& runs)
{
  const auto base = std::filesystem::temp_directory_path() / "dunkl_acceptance";
  std::filesystem::remove_all(base);
  write_outputs(base / "a", runs.k1_cfg, runs.k1a);
  write_outputs(base / "b", runs.k1_cfg, runs.k1b);
  std::size_t files = 0;
  for (const auto& entry : std::filesystem::directory_iterator(base / "a")) {
    ++files;
    const auto other = base / "b" / entry.path().filename();
    v.need(std::filesystem::exists(other) && read_file(entry.path()) == read_file(other),
           entry.path().filename().string() + " differs between runs");
  }
  v.need(files > 1, "no outputs written");
  v.need(runs.k1a.outcomes.size() == experiment_registry().size(), "full run skipped experiments");
  for (const auto* r : {&runs.k1a, &runs.k1b, &runs.khalf})
    v.need(r->exit_code() == (r->failures() == 0 ? 0 : 1), "exit code does not reflect failures");
  std::filesystem::remove_all(base);
}

}  // namespace

int main()
{
  Runs runs;
  runs.k1a = run_experiments(runs.k1_cfg);
  runs.k1b = run_experiments(runs.k1_cfg);
  runs.khalf = run_experiments(runs.khalf_cfg);

  const std::vector<std::pair<std::string, std::function<void(Verdict&, const Runs&)>>> criteria{
      {"classical reduction at zero multiplicity", classical},
      {"heat kernel axioms", heat_axioms},
      {"Gaussian envelopes", gaussian_envelopes},
      {"measure geometry", measure},
      {"kernel size, smoothness and lower bound", kernel_estimates},
      {"Riesz transform bounds", riesz_bounds},
      {"commutator upper and lower bounds", commutator_bounds},
      {"compactness probes", compactness},
      {"oscillation space algebra", oscillation},
      {"reproducibility", reproducibility},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      criteria[i].second(v, runs);
    } catch (const std::exception& e) {
      v.problems.push_back(std::string("exception: ") + e.what());
    }
    std::printf("%s %2zu %s\n", v.problems.empty() ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str());
    for (const auto& p : v.problems) std::printf("       %s\n", p.c_str());
    if (!v.problems.empty()) ++failed;
  }
  std::fflush(stdout);
  return failed == 0 ? 0 : 1;
}
