#include "ringside/run_config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace ringside::cli {

const std::vector<Preset>& presets() {
  static const std::vector<Preset> kPresets = {
      {"benchmark", 12, 3, 0.1, 0.8, 1, 6, "12 rounds, 3 judges, alpha 0.1, S 0.8, one partisan"},
      {"high-disagreement", 12, 3, 0.2, 0.8, 1, 6, "benchmark with alpha 0.2"},
      {"high-favoritism", 12, 3, 0.1, 1.0, 1, 6, "benchmark with S 1.0"},
      {"womens-pro", 10, 3, 0.1, 0.8, 1, 5, "10 rounds, 3 judges"},
      {"mens-olympic", 3, 5, 0.1, 0.8, 1, 1, "3 rounds, 5 judges"},
      {"womens-olympic", 4, 5, 0.1, 0.8, 1, 2, "4 rounds, 5 judges"},
      {"all-fair", 12, 3, 0.1, 0.8, 0, 6, "benchmark with every judge fair"},
  };
  return kPresets;
}

const Preset& find_preset(std::string_view name) {
  for (const auto& p : presets()) {
    if (p.name == name) return p;
  }
  std::string known;
  for (const auto& p : presets()) {
    if (!known.empty()) known += ", ";
    known += p.name;
  }
  throw ConfigError("unknown preset '" + std::string(name) + "' (known: " + known + ")");
}

Overrides overrides_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("config file is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config file must hold a JSON object");
  Overrides o;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "preset") {
        o.preset = value.get<std::string>();
      } else if (key == "alpha") {
        o.alpha = value.get<double>();
      } else if (key == "s") {
        o.s = value.get<double>();
      } else if (key == "rounds") {
        o.rounds = value.get<int>();
      } else if (key == "judges") {
        o.judges = value.get<int>();
      } else if (key == "partisans") {
        o.partisans = value.get<int>();
      } else if (key == "rule") {
        o.rule = value.get<std::string>();
      } else if (key == "trials") {
        o.trials = value.get<std::int64_t>();
      } else if (key == "seed") {
        o.seed = value.get<std::uint64_t>();
      } else if (key == "b_true") {
        o.b_true = value.get<int>();
      } else if (key == "k") {
        o.k = value.get<int>();
      } else {
        throw ConfigError("unknown config key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::type_error& e) {
    throw ConfigError(std::string("config file has a value of the wrong type: ") + e.what());
  }
  return o;
}

Overrides overrides_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return overrides_from_json(buf.str());
}

namespace {

void apply(RunConfig& c, const Overrides& o) {
  if (o.alpha) {
    c.alpha = *o.alpha;
    c.alpha_explicit = true;
  }
  if (o.s) c.s = *o.s;
  if (o.rounds) {
    c.rounds = *o.rounds;
    c.shape_explicit = true;
  }
  if (o.judges) {
    c.judges = *o.judges;
    c.shape_explicit = true;
  }
  if (o.partisans) c.partisans = *o.partisans;
  if (o.rule) c.rule = *o.rule;
  if (o.trials) c.trials = *o.trials;
  if (o.seed) c.seed = *o.seed;
  if (o.b_true) c.b_true = *o.b_true;
  if (o.k) c.k = *o.k;
}

}  // namespace

RunConfig resolve(const Overrides& file, const Overrides& flags) {
  RunConfig c;
  const std::optional<std::string>& chosen = flags.preset ? flags.preset : file.preset;
  const Preset& p = find_preset(chosen.value_or("benchmark"));
  c.preset = std::string(p.name);
  c.rounds = p.rounds;
  c.judges = p.judges;
  c.alpha = p.alpha;
  c.s = p.s;
  c.partisans = p.partisans;
  c.shape_explicit = chosen.has_value();
  apply(c, file);
  apply(c, flags);
  return c;
}

std::vector<ScoringRule> RunConfig::rules() const {
  if (rule == "both") return {ScoringRule::MajorityJudges, ScoringRule::MajorityRounds};
  return {parse_rule(rule)};
}

BoutConfig RunConfig::bout(ScoringRule r) const {
  if (partisans > 1) throw ConfigError("at most one partisan judge is supported");
  if (partisans < 0) throw ConfigError("partisans must be 0 or 1");
  return BoutConfig::make(rounds, judges, alpha, s, partisans, r);
}

void RunConfig::validate() const {
  for (ScoringRule r : rules()) bout(r);
  if (!(s >= 0.0)) throw ConfigError("favoritism S must be nonnegative");
  if (trials < 1) throw ConfigError("trials must be at least 1");
  if (b_true && (*b_true < 0 || *b_true > rounds)) {
    throw ConfigError("b_true must lie in [0, rounds]");
  }
  if (k && (*k < 0 || *k > rounds)) throw ConfigError("k must lie in [0, rounds]");
}

}  // namespace ringside::cli
