#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "chow/exterior.hpp"
#include "chow/ns_jordan.hpp"
#include "chow/subring.hpp"

namespace chow {

inline constexpr std::string_view kConfigSchema = "chowlab-config/1";

inline constexpr std::array<std::string_view, 9> kSuiteNames = {
    "sl2", "exp-lem", "fourier", "diff-order", "sl2-lem", "biext", "ns-jordan", "jacobian", "subring"};

struct NamedEndo {
  std::string name;
  Endo endo;
};

struct SampleSettings {
  std::uint64_t seed = 20261015;
  int pairs = 500;
  int triples = 200;
  int random_endos = 100;
  int jordan_y = 50;
};

struct BracketEntry {
  int s = 0;
  int t = 0;
  std::string value;  // TautPoly text
};

struct WitnessFixture {
  std::string x, y, lhs, rhs;
};

struct JacobianSettings {
  int n = 8;
  std::vector<BracketEntry> bracket_table;
  std::optional<WitnessFixture> witness;
};

struct RunConfig {
  explicit RunConfig(ModelContext c) : ctx(c) {}

  ModelContext ctx;
  std::vector<NamedPolarization> polarizations;
  std::string reference = "d";
  std::vector<NamedEndo> endomorphisms;
  JacobianSettings jacobian;
  SampleSettings samples;
  std::vector<std::string> suites;  // empty selects every suite

  /// Throws ConfigError for unknown names.
  const NamedPolarization& polarization(std::string_view name) const;
  const NamedPolarization& reference_polarization() const { return polarization(reference); }
  const NamedEndo& endomorphism(std::string_view name) const;

  /// Standard form plus two perturbed forms, a small endomorphism library
  /// and the generator bracket table for s + t <= 8.
  static RunConfig defaults(int g);
};

/// Throws ConfigError (bad JSON, schema, matrices, names) naming the offending field.
RunConfig parse_config(std::string_view json_text);
RunConfig load_config(const std::filesystem::path& path);

/// Inverse of parse_config up to key order.
std::string config_to_json(const RunConfig& cfg);

/// Nondegenerate integral perturbation of the standard form; k >= 1 selects the variant.
Matrix perturbed_form(const ModelContext& ctx, int k);

}  // namespace chow
