#include "dunkl/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace dunkl {

namespace {

struct Entry {
  std::string value;
  int line = 0;
};

std::string trim(std::string_view s)
{
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string_view::npos) return {};
  const auto b = s.find_last_not_of(" \t\r");
  return std::string(s.substr(a, b - a + 1));
}

std::vector<std::string> split_list(const std::string& s)
{
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, ',')) {
    cur = trim(cur);
    if (!cur.empty()) out.push_back(cur);
  }
  return out;
}

[[noreturn]] void fail(const std::string& origin, int line, const std::string& key, const std::string& msg)
{
  throw ConfigError(origin + ":" + std::to_string(line) + ": key '" + key + "': " + msg);
}

const std::map<std::string, std::vector<std::string>>& schema()
{
  static const std::map<std::string, std::vector<std::string>> s{
      {"group", {"kind", "multiplicity", "multiplicities"}},
      {"exponents", {"alpha", "p"}},
      {"quadrature", {"rel_tol", "shell_floor"}},
      {"run", {"seed", "samples", "workers", "out", "experiments"}},
  };
  return s;
}

std::string fmt_double(double x)
{
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

const char* to_string(GroupKind g)
{
  return g == GroupKind::RankOne ? "rank-one" : "product";
}

int ExperimentConfig::dim() const
{
  return group == GroupKind::RankOne ? 1 : static_cast<int>(multiplicities.size());
}

Rational ExperimentConfig::hom_dim() const
{
  Rational n(dim());
  for (const auto& k : multiplicities) n = n + Rational(2) * k;
  return n;
}

RootSystem<double> ExperimentConfig::roots() const
{
  if (group == GroupKind::RankOne) return rank_one_roots(multiplicities.front().value());
  std::vector<double> k;
  for (const auto& m : multiplicities) k.push_back(m.value());
  return product_roots(k);
}

Exponents ExperimentConfig::exponents() const
{
  return make_exponents(alpha, p, hom_dim(), dim());
}

std::string ExperimentConfig::canonical() const
{
  std::string ks;
  for (std::size_t i = 0; i < multiplicities.size(); ++i) ks += (i ? ", " : "") + multiplicities[i].str();
  std::string ex;
  for (std::size_t i = 0; i < experiments.size(); ++i) ex += (i ? ", " : "") + experiments[i];
  std::string s;
  s += "group.kind = " + std::string(to_string(group)) + "\n";
  s += "group.multiplicities = " + ks + "\n";
  s += "exponents.alpha = " + alpha.str() + "\n";
  s += "exponents.p = " + p.str() + "\n";
  s += "quadrature.rel_tol = " + fmt_double(rel_tol) + "\n";
  s += "quadrature.shell_floor = " + fmt_double(shell_floor) + "\n";
  s += "run.seed = " + std::to_string(seed) + "\n";
  s += "run.samples = " + std::to_string(samples) + "\n";
  s += "run.experiments = " + (ex.empty() ? std::string("all") : ex) + "\n";
  return s;
}

std::uint64_t ExperimentConfig::hash() const { return fnv1a64(canonical()); }

std::uint64_t fnv1a64(std::string_view bytes)
{
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

void validate(const ExperimentConfig& cfg, const std::string& origin)
{
  if (cfg.multiplicities.empty()) throw ConfigError(origin + ": key 'group.multiplicities': no multiplicity given");
  for (const auto& k : cfg.multiplicities)
    if (k < Rational(0)) throw ConfigError(origin + ": key 'group.multiplicities': multiplicities must be >= 0");
  try {
    cfg.exponents();
  } catch (const ExponentViolation& e) {
    throw ConfigError(origin + ": key 'exponents': " + e.what());
  }
}

ExperimentConfig parse_config(std::string_view text, const std::string& origin)
{
  std::map<std::string, Entry> entries;
  std::string section;
  std::istringstream in{std::string(text)};
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const auto hash = raw.find_first_of("#;");
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail(origin, lineno, line, "unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (!schema().count(section)) fail(origin, lineno, section, "unknown section");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail(origin, lineno, line, "expected key = value");
    const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    if (section.empty()) fail(origin, lineno, key, "key outside a section");
    const auto& allowed = schema().at(section);
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      fail(origin, lineno, section + "." + key, "unknown key");
    const std::string full = section + "." + key;
    if (entries.count(full)) fail(origin, lineno, full, "duplicate key");
    if (value.empty()) fail(origin, lineno, full, "empty value");
    entries[full] = {value, lineno};
  }

  ExperimentConfig cfg;
  auto rational = [&](const std::string& key, const Entry& e) {
    try {
      return Rational::parse(e.value);
    } catch (const std::exception&) {
      fail(origin, e.line, key, "'" + e.value + "' is not a rational number");
    }
  };
  auto real = [&](const std::string& key, const Entry& e) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(e.value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != e.value.size() || !std::isfinite(v) || !(v > 0.0))
      fail(origin, e.line, key, "'" + e.value + "' is not a positive number");
    return v;
  };
  auto integer = [&](const std::string& key, const Entry& e, long long lo) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(e.value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != e.value.size() || v < lo) fail(origin, e.line, key, "'" + e.value + "' is not an integer >= " + std::to_string(lo));
    return v;
  };

  int kind_line = 0;
  for (const auto& [key, e] : entries) {
    if (key == "group.kind") {
      kind_line = e.line;
      if (e.value == "rank-one")
        cfg.group = GroupKind::RankOne;
      else if (e.value == "product")
        cfg.group = GroupKind::Product;
      else
        fail(origin, e.line, key, "expected rank-one or product");
    } else if (key == "group.multiplicity") {
      cfg.multiplicities = {rational(key, e)};
    } else if (key == "group.multiplicities") {
      cfg.multiplicities.clear();
      for (const auto& s : split_list(e.value)) cfg.multiplicities.push_back(rational(key, {s, e.line}));
    } else if (key == "exponents.alpha") {
      cfg.alpha = rational(key, e);
    } else if (key == "exponents.p") {
      cfg.p = rational(key, e);
    } else if (key == "quadrature.rel_tol") {
      cfg.rel_tol = real(key, e);
    } else if (key == "quadrature.shell_floor") {
      cfg.shell_floor = real(key, e);
    } else if (key == "run.seed") {
      std::size_t used = 0;
      unsigned long long v = 0;
      try {
        v = std::stoull(e.value, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != e.value.size() || e.value.front() == '-') fail(origin, e.line, key, "expected an unsigned integer");
      cfg.seed = v;
    } else if (key == "run.samples") {
      cfg.samples = static_cast<int>(integer(key, e, 4));
    } else if (key == "run.workers") {
      cfg.workers = static_cast<int>(integer(key, e, 1));
    } else if (key == "run.out") {
      cfg.out = e.value;
    } else if (key == "run.experiments") {
      const auto list = split_list(e.value);
      if (!(list.size() == 1 && list.front() == "all")) cfg.experiments = list;
    }
  }

  const bool both = entries.count("group.multiplicity") && entries.count("group.multiplicities");
  if (both) fail(origin, entries.at("group.multiplicities").line, "group.multiplicities", "give multiplicity or multiplicities, not both");
  if (cfg.group == GroupKind::RankOne && cfg.multiplicities.size() != 1)
    fail(origin, kind_line, "group.multiplicities", "rank-one takes exactly one multiplicity");
  for (const auto& k : cfg.multiplicities)
    if (k < Rational(0)) {
      const auto& e = entries.count("group.multiplicity") ? entries.at("group.multiplicity") : entries.at("group.multiplicities");
      fail(origin, e.line, "group.multiplicities", "multiplicities must be >= 0");
    }
  try {
    cfg.exponents();
  } catch (const ExponentViolation& ex) {
    const bool alpha_bad = !(cfg.alpha > Rational(0) && cfg.alpha < Rational(cfg.dim()));
    const std::string key = alpha_bad ? "exponents.alpha" : "exponents.p";
    const int line = entries.count(key) ? entries.at(key).line : 0;
    fail(origin, line, key, ex.what());
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path.string() + ": cannot open config file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path.string());
}

}  // namespace dunkl
