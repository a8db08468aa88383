#ifndef DUNKL_CONFIG_HPP
#define DUNKL_CONFIG_HPP

#include "dunkl/exponents.hpp"
#include "dunkl/geometry.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace dunkl {

enum class GroupKind { RankOne, Product };

const char* to_string(GroupKind g);

/// Everything a run depends on. q is derived from (alpha, p, group) and never
/// stored.
struct ExperimentConfig {
  GroupKind group = GroupKind::RankOne;
  /// One entry for rank one, one per axis for the product group Z_2^d.
  std::vector<Rational> multiplicities{Rational(1)};
  Rational alpha{1, 2};
  Rational p{3, 2};

  double rel_tol = 1e-8;
  double shell_floor = 1e-4;

  std::uint64_t seed = 20261017;
  int samples = 24;
  int workers = 1;
  std::string out = "report";
  /// Experiment ids; empty selects all.
  std::vector<std::string> experiments;

  int dim() const;
  Rational hom_dim() const;
  RootSystem<double> roots() const;
  Exponents exponents() const;

  /// Canonical "section.key = value" lines in a fixed order; equal configs
  /// give equal text.
  std::string canonical() const;
  /// FNV-1a 64 of canonical().
  std::uint64_t hash() const;
};

/// Parses the INI text. Throws ConfigError naming the line and key.
ExperimentConfig parse_config(std::string_view text, const std::string& origin = "<config>");
ExperimentConfig load_config(const std::filesystem::path& path);

/// Throws ConfigError unless 0 < alpha < N and 1 < p < hom_dim / alpha.
void validate(const ExperimentConfig& cfg, const std::string& origin = "<config>");

std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace dunkl

#endif
