#include "dunkl/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

namespace dunkl {

namespace {

double quantile(std::vector<double> v, double q)
{
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const double pos = q * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

}  // namespace

RatioStats RatioStats::from(const std::vector<double>& values, const std::vector<std::vector<double>>& where)
{
  RatioStats s;
  s.count = values.size();
  if (values.empty()) return s;
  std::size_t imax = 0, imin = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[imax] || std::isnan(values[i])) imax = i;
    if (values[i] < values[imin]) imin = i;
  }
  s.sup = values[imax];
  s.inf = values[imin];
  s.q10 = quantile(values, 0.1);
  s.q50 = quantile(values, 0.5);
  s.q90 = quantile(values, 0.9);
  if (!where.empty()) {
    s.sup_at = where[imax];
    s.inf_at = where[imin];
  }
  return s;
}

const char* to_string(CheckStatus s)
{
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Info: return "info";
  }
  return "info";
}

Check& VerificationReport::require_at_most(std::string name, double statistic, double tolerance, std::string note)
{
  const bool ok = statistic <= tolerance;
  checks.push_back({std::move(name), anchor, ok ? CheckStatus::Pass : CheckStatus::Fail, statistic, tolerance,
                    std::move(note)});
  return checks.back();
}

Check& VerificationReport::require_at_least(std::string name, double statistic, double bound, std::string note)
{
  const bool ok = statistic >= bound;
  checks.push_back(
      {std::move(name), anchor, ok ? CheckStatus::Pass : CheckStatus::Fail, statistic, bound, std::move(note)});
  return checks.back();
}

Check& VerificationReport::require(std::string name, bool ok, double statistic, std::string note)
{
  checks.push_back(
      {std::move(name), anchor, ok ? CheckStatus::Pass : CheckStatus::Fail, statistic, 0.0, std::move(note)});
  return checks.back();
}

Check& VerificationReport::inform(std::string name, double statistic, std::string note)
{
  checks.push_back({std::move(name), anchor, CheckStatus::Info, statistic, std::nullopt, std::move(note)});
  return checks.back();
}

Check& VerificationReport::error(std::string name, const std::exception& e)
{
  std::string what = e.what();
  if (const auto* de = dynamic_cast<const Error*>(&e)) what = std::string(de->kind()) + ": " + what;
  checks.push_back({std::move(name), anchor, CheckStatus::Fail, std::nan(""), 0.0, what});
  return checks.back();
}

bool VerificationReport::passed() const { return failures() == 0; }

std::size_t VerificationReport::failures() const
{
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [](const Check& c) { return c.status == CheckStatus::Fail; }));
}

std::vector<double> Table::column(std::size_t i) const
{
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r.at(i));
  return out;
}

std::string Table::csv() const
{
  std::string out;
  for (std::size_t i = 0; i < columns.size(); ++i) out += (i ? "," : "") + columns[i];
  out += "\n";
  char buf[40];
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", r[i]);
      if (i) out += ",";
      out += buf;
    }
    out += "\n";
  }
  return out;
}

}  // namespace dunkl
