#ifndef DUNKL_REPORT_HPP
#define DUNKL_REPORT_HPP

#include "dunkl/core.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace dunkl {

/// Order statistics of a sample of ratios with the argmax/argmin locations.
struct RatioStats {
  std::size_t count = 0;
  double sup = 0.0;
  double inf = 0.0;
  double q10 = 0.0;
  double q50 = 0.0;
  double q90 = 0.0;
  std::vector<double> sup_at;
  std::vector<double> inf_at;

  /// `where[i]` describes sample i (for example (t, x, y)). Non-finite values
  /// are kept: a sup of +inf is itself a finding.
  static RatioStats from(const std::vector<double>& values, const std::vector<std::vector<double>>& where = {});
};

enum class CheckStatus { Pass, Fail, Info };

const char* to_string(CheckStatus s);

struct Check {
  std::string name;
  std::string anchor;
  CheckStatus status = CheckStatus::Info;
  double statistic = 0.0;
  std::optional<double> tolerance;
  std::string note;
};

struct VerificationReport {
  std::string id;
  std::string anchor;
  std::vector<Check> checks;
  std::map<std::string, double> metrics;
  std::map<std::string, RatioStats> stats;

  /// statistic <= tolerance passes.
  Check& require_at_most(std::string name, double statistic, double tolerance, std::string note = {});
  /// statistic >= bound passes.
  Check& require_at_least(std::string name, double statistic, double bound, std::string note = {});
  Check& require(std::string name, bool ok, double statistic = 0.0, std::string note = {});
  Check& inform(std::string name, double statistic, std::string note = {});
  /// Records a failed check for an error raised while computing `name`.
  Check& error(std::string name, const std::exception& e);

  bool passed() const;
  std::size_t failures() const;
};

/// Named numeric table written as CSV (header row, %.17g cells).
struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  void add(std::vector<double> row) { rows.push_back(std::move(row)); }
  std::vector<double> column(std::size_t i) const;
  std::string csv() const;
};

}  // namespace dunkl

#endif
