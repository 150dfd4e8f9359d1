#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ringside/types.hpp"

namespace ringside::cli {

struct Preset {
  std::string_view name;
  int rounds;
  int judges;
  double alpha;
  double s;
  int partisans;
  int default_b_true;  // used by `curve` when --b-true is absent
  std::string_view description;
};

const std::vector<Preset>& presets();
const Preset& find_preset(std::string_view name);

/// Values supplied by one configuration layer (config file or flags).
struct Overrides {
  std::optional<std::string> preset;
  std::optional<double> alpha;
  std::optional<double> s;
  std::optional<int> rounds;
  std::optional<int> judges;
  std::optional<int> partisans;
  std::optional<std::string> rule;
  std::optional<std::int64_t> trials;
  std::optional<std::uint64_t> seed;
  std::optional<int> b_true;
  std::optional<int> k;
};

/// Parses a JSON object with the same keys as the command-line flags
/// (alpha, s, rounds, judges, partisans, rule, trials, seed, preset, b_true, k).
Overrides overrides_from_json(std::string_view text);
Overrides overrides_from_file(const std::string& path);

struct RunConfig {
  std::string preset = "benchmark";
  double alpha = 0.1;
  double s = 0.8;
  int rounds = 12;
  int judges = 3;
  int partisans = 1;
  std::string rule = "both";
  std::int64_t trials = 100000;
  std::uint64_t seed = 1;
  std::optional<int> b_true;
  std::optional<int> k;

  // Which values came from a file or flag rather than preset defaults.
  bool alpha_explicit = false;
  bool shape_explicit = false;  // rounds, judges or preset chosen explicitly

  std::vector<ScoringRule> rules() const;
  BoutConfig bout(ScoringRule rule) const;
  /// Throws ConfigError naming the violated invariant.
  void validate() const;
};

/// Preset defaults, then config-file keys, then flags.
RunConfig resolve(const Overrides& file, const Overrides& flags);

}  // namespace ringside::cli
