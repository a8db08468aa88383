// Command-line front end: run, list and per-stage subcommands.

#include "dunkl/harness.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <iostream>

using namespace dunkl;

namespace {

struct Flags {
  std::string config;
  std::optional<std::uint64_t> seed;
  bool serial = false;
  std::string out;
  std::string filter;
};

void add_run_flags(CLI::App* cmd, Flags& f)
{
  cmd->add_option("--config", f.config, "INI configuration file")->check(CLI::ExistingFile);
  cmd->add_option("--seed", f.seed, "override run.seed");
  cmd->add_flag("--serial", f.serial, "run experiments one at a time");
  cmd->add_option("--out", f.out, "output directory (overrides run.out)");
  cmd->add_option("--filter", f.filter, "only experiments whose id contains this string");
}

void print_summary(const RunResult& r)
{
  for (const auto& o : r.outcomes) {
    const auto& rep = o.report;
    std::printf("%-24s %s\n", rep.id.c_str(), rep.passed() ? "pass" : "FAIL");
    for (const auto& c : rep.checks)
      if (c.status == CheckStatus::Fail)
        std::printf("    fail: %s (statistic %.6g)%s%s\n", c.name.c_str(), c.statistic, c.note.empty() ? "" : " ",
                    c.note.c_str());
  }
  std::printf("%zu checks, %zu failures\n", r.checks(), r.failures());
}

int execute(const Flags& f, std::optional<Stage> stage)
{
  ExperimentConfig cfg = f.config.empty() ? ExperimentConfig{} : load_config(f.config);
  if (f.seed) cfg.seed = *f.seed;
  if (!f.out.empty()) cfg.out = f.out;
  RunOptions opt;
  opt.filter = f.filter;
  opt.stage = stage;
  opt.serial = f.serial;
  const auto result = run_experiments(cfg, opt);
  write_outputs(cfg.out, cfg, result);
  print_summary(result);
  std::printf("report: %s/report.json\n", cfg.out.c_str());
  return result.exit_code();
}

}  // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Numerical experiments for fractional Riesz transforms in the Dunkl setting"};
  app.require_subcommand(1);

  Flags flags;
  auto* run = app.add_subcommand("run", "run the selected experiments (all by default)");
  add_run_flags(run, flags);

  std::string list_filter;
  auto* list = app.add_subcommand("list", "list experiment ids with their anchors");
  list->add_option("--filter", list_filter, "only ids containing this string");

  std::vector<std::pair<CLI::App*, Stage>> stages;
  for (Stage s : {Stage::Geometry, Stage::Measure, Stage::Heat, Stage::Riesz, Stage::Bmo, Stage::Commutator}) {
    auto* cmd = app.add_subcommand(to_string(s), std::string("run the ") + to_string(s) + " experiments");
    add_run_flags(cmd, flags);
    stages.emplace_back(cmd, s);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (list->parsed()) {
      std::cout << list_experiments(list_filter);
      return 0;
    }
    if (run->parsed()) return execute(flags, std::nullopt);
    for (const auto& [cmd, s] : stages)
      if (cmd->parsed()) return execute(flags, s);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
