#include "dunkl/harness.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <map>
#include <sstream>

namespace dunkl {

namespace {

const std::vector<std::pair<Stage, const char*>>& stage_names()
{
  static const std::vector<std::pair<Stage, const char*>> names{
      {Stage::Geometry, "geometry"}, {Stage::Measure, "measure"}, {Stage::Heat, "heat"},
      {Stage::Riesz, "riesz"},       {Stage::Bmo, "bmo"},         {Stage::Commutator, "commutator"},
  };
  return names;
}

using nlohmann::json;

json number(double x)
{
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

json numbers(const std::vector<double>& v)
{
  json a = json::array();
  for (double x : v) a.push_back(number(x));
  return a;
}

json to_json(const RatioStats& s)
{
  return {{"count", s.count}, {"sup", number(s.sup)},   {"inf", number(s.inf)},        {"q10", number(s.q10)},
          {"q50", number(s.q50)}, {"q90", number(s.q90)}, {"sup_at", numbers(s.sup_at)}, {"inf_at", numbers(s.inf_at)}};
}

json to_json(const Check& c)
{
  json j{{"name", c.name},
         {"anchor", c.anchor},
         {"status", to_string(c.status)},
         {"statistic", number(c.statistic)},
         {"note", c.note}};
  j["tolerance"] = c.tolerance ? number(*c.tolerance) : json(nullptr);
  return j;
}

std::string hex(std::uint64_t h)
{
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void run_one(const Experiment& ex, const RunContext& ctx, Outcome& out)
{
  out.report.id = ex.id;
  out.report.anchor = ex.anchor;
  try {
    ex.run(ctx, out);
  } catch (const Error& e) {
    out.report.error(std::string("experiment aborted (") + e.kind() + ")", e);
  } catch (const std::exception& e) {
    out.report.error("experiment aborted", e);
  }
  for (auto& c : out.report.checks) c.anchor = ex.anchor;
  if (out.report.checks.empty()) out.report.inform("no checks", 0.0);
}

}  // namespace

const char* to_string(Stage s)
{
  for (const auto& [st, name] : stage_names())
    if (st == s) return name;
  return "?";
}

Stage stage_from_string(const std::string& s)
{
  for (const auto& [st, name] : stage_names())
    if (s == name) return st;
  throw std::invalid_argument("unknown stage '" + s + "'");
}

RunContext::RunContext(const ExperimentConfig& cfg)
    : config(cfg), geometry(cfg.roots()), heat(geometry), exponents(cfg.exponents())
{
  riesz = std::make_unique<RieszKernel>(heat, 0, cfg.alpha.value());
  apply.rel_tol = cfg.rel_tol;
  apply.shell_floor = cfg.shell_floor;
}

std::vector<const Experiment*> select_experiments(const std::string& filter, const std::vector<std::string>& ids)
{
  std::vector<const Experiment*> out;
  for (const auto& ex : experiment_registry()) {
    if (!filter.empty() && ex.id.find(filter) == std::string::npos) continue;
    if (!ids.empty() && std::find(ids.begin(), ids.end(), ex.id) == ids.end()) continue;
    out.push_back(&ex);
  }
  return out;
}

std::string list_experiments(const std::string& filter)
{
  std::string s;
  for (const auto* ex : select_experiments(filter))
    s += ex->id + "\t" + to_string(ex->stage) + "\t" + ex->anchor + "\n";
  return s;
}

std::size_t RunResult::checks() const
{
  std::size_t n = 0;
  for (const auto& o : outcomes) n += o.report.checks.size();
  return n;
}

std::size_t RunResult::failures() const
{
  std::size_t n = 0;
  for (const auto& o : outcomes) n += o.report.failures();
  return n;
}

RunResult run_experiments(const ExperimentConfig& cfg, const RunOptions& opt)
{
  for (const auto& id : cfg.experiments)
    if (select_experiments("", {id}).empty()) throw ConfigError("key 'run.experiments': unknown experiment '" + id + "'");
  validate(cfg);

  std::vector<const Experiment*> chosen;
  for (const auto* ex : select_experiments(opt.filter, cfg.experiments))
    if (!opt.stage || ex->stage == *opt.stage) chosen.push_back(ex);

  RunResult result;
  result.config_hash = cfg.hash();
  result.outcomes.resize(chosen.size());
  if (chosen.empty()) return result;

  const RunContext ctx(cfg);
  const std::size_t workers = opt.serial ? 1 : static_cast<std::size_t>(std::max(1, cfg.workers));
  for (const auto& [stage, name] : stage_names()) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < chosen.size(); ++i)
      if (chosen[i]->stage == stage) idx.push_back(i);
    for (std::size_t start = 0; start < idx.size(); start += workers) {
      const std::size_t stop = std::min(idx.size(), start + workers);
      if (workers == 1) {
        run_one(*chosen[idx[start]], ctx, result.outcomes[idx[start]]);
        continue;
      }
      std::vector<std::future<void>> jobs;
      for (std::size_t k = start; k < stop; ++k) {
        const std::size_t i = idx[k];
        jobs.push_back(std::async(std::launch::async, [&, i] { run_one(*chosen[i], ctx, result.outcomes[i]); }));
      }
      for (auto& j : jobs) j.get();
    }
  }
  return result;
}

std::string report_json(const ExperimentConfig& cfg, const RunResult& result)
{
  json config = json::object();
  std::istringstream lines(cfg.canonical());
  for (std::string line; std::getline(lines, line);) {
    const auto eq = line.find(" = ");
    config[line.substr(0, eq)] = line.substr(eq + 3);
  }
  json experiments = json::array();
  for (const auto& o : result.outcomes) {
    const auto& r = o.report;
    json checks = json::array();
    for (const auto& c : r.checks) checks.push_back(to_json(c));
    json metrics = json::object();
    for (const auto& [k, v] : r.metrics) metrics[k] = number(v);
    json stats = json::object();
    for (const auto& [k, v] : r.stats) stats[k] = to_json(v);
    json tables = json::array();
    for (const auto& t : o.tables) tables.push_back(t.name + ".csv");
    experiments.push_back({{"id", r.id},
                           {"anchor", r.anchor},
                           {"passed", r.passed()},
                           {"checks", checks},
                           {"metrics", metrics},
                           {"stats", stats},
                           {"tables", tables}});
  }
  json doc{{"schema", kReportSchema},
           {"config_hash", hex(result.config_hash)},
           {"config", config},
           {"environment",
            {{"version", kVersion},
             {"seed", cfg.seed},
             {"rel_tol", number(cfg.rel_tol)},
             {"shell_floor", number(cfg.shell_floor)}}},
           {"experiments", experiments},
           {"summary",
            {{"checks", result.checks()}, {"failures", result.failures()}, {"exit_code", result.exit_code()}}}};
  return doc.dump(2) + "\n";
}

void write_outputs(const std::filesystem::path& dir, const ExperimentConfig& cfg, const RunResult& result)
{
  std::filesystem::create_directories(dir);
  auto write = [&](const std::filesystem::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + p.string());
    out << text;
  };
  write(dir / "report.json", report_json(cfg, result));
  for (const auto& o : result.outcomes)
    for (const auto& t : o.tables) write(dir / (t.name + ".csv"), t.csv());
}

}  // namespace dunkl
