#ifndef DUNKL_HARNESS_HPP
#define DUNKL_HARNESS_HPP

#include "dunkl/config.hpp"
#include "dunkl/heat.hpp"
#include "dunkl/report.hpp"
#include "dunkl/riesz.hpp"

#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace dunkl {

/// Dependency order of the experiment groups.
enum class Stage { Geometry, Measure, Heat, Riesz, Bmo, Commutator };

const char* to_string(Stage s);
/// Throws std::invalid_argument for an unknown name.
Stage stage_from_string(const std::string& s);

/// Objects shared by every experiment of one run.
struct RunContext {
  explicit RunContext(const ExperimentConfig& cfg);

  ExperimentConfig config;
  Geometry geometry;
  HeatKernel heat;
  /// R_0^alpha; present when 0 < alpha < N.
  std::unique_ptr<RieszKernel> riesz;
  Exponents exponents;
  RieszApplyOptions apply;

  bool rank_one() const { return geometry.dim() == 1; }
};

struct Outcome {
  VerificationReport report;
  std::vector<Table> tables;
};

struct Experiment {
  std::string id;
  std::string anchor;
  Stage stage;
  std::function<void(const RunContext&, Outcome&)> run;
};

/// All experiments in dependency order.
const std::vector<Experiment>& experiment_registry();

/// Experiments whose id contains `filter` (all when empty) and, when `ids` is
/// nonempty, whose id is listed there.
std::vector<const Experiment*> select_experiments(const std::string& filter, const std::vector<std::string>& ids = {});

/// id, anchor and stage of the selected experiments, tab separated.
std::string list_experiments(const std::string& filter);

struct RunOptions {
  std::string filter;
  /// Restrict to one stage.
  std::optional<Stage> stage;
  bool serial = true;
};

struct RunResult {
  std::uint64_t config_hash = 0;
  std::vector<Outcome> outcomes;

  std::size_t checks() const;
  std::size_t failures() const;
  /// 0 when every pass/fail check passed, 1 otherwise.
  int exit_code() const { return failures() == 0 ? 0 : 1; }
};

/// Runs the selected experiments. Library errors become failed checks.
/// Throws ConfigError for an unknown experiment id in the config.
RunResult run_experiments(const ExperimentConfig& cfg, const RunOptions& opt = {});

inline constexpr const char* kReportSchema = "dunkl-lab-report/1";
inline constexpr const char* kVersion = "0.1.0";

/// JSON summary, keys sorted, no timestamps; byte-identical for identical
/// runs.
std::string report_json(const ExperimentConfig& cfg, const RunResult& result);

/// Writes report.json and one CSV per table into `dir`.
void write_outputs(const std::filesystem::path& dir, const ExperimentConfig& cfg, const RunResult& result);

}  // namespace dunkl

#endif
