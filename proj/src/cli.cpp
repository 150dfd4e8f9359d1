#include "ringside/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <variant>

#include <CLI11.hpp>
#include <json.hpp>

#include "ringside/core_model.hpp"
#include "ringside/exact.hpp"
#include "ringside/monte_carlo.hpp"
#include "ringside/run_config.hpp"
#include "ringside/strategy.hpp"

namespace ringside::cli {

namespace {

using Cell = std::variant<std::int64_t, double, std::string>;

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row) { rows.push_back(std::move(row)); }
};

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string format_cell(const Cell& c) {
  if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&c)) return format_double(*d);
  return std::get<std::string>(c);
}

void write_csv(const Table& t, std::ostream& out) {
  for (std::size_t i = 0; i < t.header.size(); ++i) out << (i ? "," : "") << t.header[i];
  out << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_cell(row[i]);
    out << '\n';
  }
}

nlohmann::ordered_json cell_json(const Cell& c) {
  if (const auto* i = std::get_if<std::int64_t>(&c)) return *i;
  if (const auto* d = std::get_if<double>(&c)) {
    if (!std::isfinite(*d)) return format_double(*d);
    return *d;
  }
  return std::get<std::string>(c);
}

void write_json(const Table& t, std::ostream& out) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json obj;
    for (std::size_t i = 0; i < row.size(); ++i) obj[t.header[i]] = cell_json(row[i]);
    arr.push_back(std::move(obj));
  }
  out << arr.dump(2) << '\n';
}

struct Output {
  std::string path;
  std::string format = "csv";
};

void emit(const Table& t, const Output& o, std::ostream& out) {
  if (o.format != "csv" && o.format != "json") {
    throw ConfigError("format must be csv or json");
  }
  std::ofstream file;
  std::ostream* sink = &out;
  if (!o.path.empty()) {
    file.open(o.path, std::ios::binary);
    if (!file) throw ConfigError("cannot open output file '" + o.path + "'");
    sink = &file;
  }
  if (o.format == "json") {
    write_json(t, *sink);
  } else {
    write_csv(t, *sink);
  }
}

std::int64_t as_int(int v) { return v; }

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

// With --k the partisan awards exactly k rounds to Blue whatever it observes.
ResponseTable response_for(const RunConfig& rc, const BoutConfig& config) {
  if (!config.sole_partisan()) return fair_response(config.rounds);
  if (rc.k) return forced_response(config.rounds, *rc.k);
  return best_response_table(config);
}

Table cmd_simulate(const RunConfig& rc, bool robbery) {
  Table t;
  const unsigned workers = worker_count();
  if (robbery) {
    t.header = {"rule", "alpha", "s", "rounds", "judges", "partisans", "trials",
                "robberies_blue", "robberies_red", "rate_blue", "rate_red", "ratio"};
    for (ScoringRule rule : rc.rules()) {
      CampaignSpec spec{rc.bout(rule), rc.trials, rc.seed, Conditioning::BinomialPrior,
                        std::nullopt, workers};
      const TallyTable tally = run_campaign(spec, response_for(rc, spec.config));
      const RobberyStats s = robbery_stats(tally, rc.rounds);
      t.add({std::string(to_string(rule)), rc.alpha, rc.s, as_int(rc.rounds), as_int(rc.judges),
             as_int(rc.partisans), s.trials, s.robberies_blue, s.robberies_red, s.rate_blue,
             s.rate_red, s.ratio});
    }
    return t;
  }
  t.header = {"rule",   "alpha",  "s",      "rounds",    "judges",  "partisans",
              "b_true", "trials", "p_blue", "p_red",     "p_draw",  "p_correct",
              "se_blue", "se_red", "se_draw"};
  for (ScoringRule rule : rc.rules()) {
    CampaignSpec spec{rc.bout(rule), rc.trials, rc.seed, Conditioning::PerTrueCount, rc.b_true,
                      workers};
    const TallyTable tally = run_campaign(spec, response_for(rc, spec.config));
    for (const auto& r : tally.rows) {
      t.add({std::string(to_string(rule)), rc.alpha, rc.s, as_int(rc.rounds), as_int(rc.judges),
             as_int(rc.partisans), as_int(r.b_true), r.trials, r.p_blue(), r.p_red(), r.p_draw(),
             r.p_correct(), r.standard_error(r.blue), r.standard_error(r.red),
             r.standard_error(r.draw)});
    }
  }
  return t;
}


Table cmd_exact(const RunConfig& rc, bool robbery) {
  Table t;
  if (robbery) {
    t.header = {"rule", "alpha", "s", "rounds", "judges", "partisans",
                "rate_blue", "rate_red", "ratio"};
    for (ScoringRule rule : rc.rules()) {
      const BoutConfig config = rc.bout(rule);
      const auto rates = exact::robbery_rates(config, response_for(rc, config));
      t.add({std::string(to_string(rule)), rc.alpha, rc.s, as_int(rc.rounds), as_int(rc.judges),
             as_int(rc.partisans), rates.rate_blue, rates.rate_red, rates.ratio()});
    }
    return t;
  }
  t.header = {"rule", "alpha", "s", "rounds", "judges", "partisans", "b_true",
              "p_blue", "p_red", "p_draw", "p_correct"};
  for (ScoringRule rule : rc.rules()) {
    const BoutConfig config = rc.bout(rule);
    const ResponseTable response = response_for(rc, config);
    for (int bt = 0; bt <= rc.rounds; ++bt) {
      if (rc.b_true && *rc.b_true != bt) continue;
      const OutcomeDist d = exact::outcome_given_true(config, bt, response);
      t.add({std::string(to_string(rule)), rc.alpha, rc.s, as_int(rc.rounds), as_int(rc.judges),
             as_int(rc.partisans), as_int(bt), d.p_blue, d.p_red, d.p_draw,
             exact::correct_probability(d, bt, rc.rounds)});
    }
  }
  return t;
}

Table cmd_best_response(const RunConfig& rc) {
  Table t;
  t.header = {"rule", "alpha", "s", "rounds", "judges", "b_observed",
              "k_best", "utility_fair", "utility_best"};
  if (rc.partisans != 1) throw ConfigError("best-response requires exactly one partisan judge");
  for (ScoringRule rule : rc.rules()) {
    const BoutConfig config = rc.bout(rule);
    for (int b = 0; b <= rc.rounds; ++b) {
      const int k = best_response(b, config).k_awarded;
      t.add({std::string(to_string(rule)), rc.alpha, rc.s, as_int(rc.rounds), as_int(rc.judges),
             as_int(b), as_int(k), expected_utility(b, b, config),
             expected_utility(b, k, config)});
    }
  }
  return t;
}

Table cmd_critical_s(const RunConfig& rc, const std::optional<std::string>& info_set) {
  const int rounds = rc.shape_explicit ? rc.rounds : 3;
  const int judges = rc.shape_explicit ? rc.judges : 3;
  const bool closed_form_available = rounds == 3 && judges == 3;
  std::vector<double> grid;
  if (rc.alpha_explicit) {
    grid.push_back(rc.alpha);
  } else {
    for (int i = 1; i <= 49; ++i) grid.push_back(i / 100.0);
  }
  std::optional<int> wanted;
  if (info_set) {
    if (static_cast<int>(info_set->size()) != rounds) {
      throw ConfigError("info set '" + *info_set + "' must have one letter per round");
    }
    wanted = parse_info_set(*info_set);
  }

  Table t;
  t.header = {"alpha", "rule", "info_set", "method", "s_hat"};
  for (double alpha : grid) {
    if (!(alpha > 0.0 && alpha < 0.5)) throw ConfigError("alpha must lie in (0, 0.5)");
    for (ScoringRule rule : rc.rules()) {
      for (int b = 0; b <= rounds; ++b) {
        if (wanted && *wanted != b) continue;
        const std::string label = info_set_label(b, rounds);
        if (closed_form_available) {
          try {
            const CriticalS c = critical_s_closed_form(alpha, rule, b);
            t.add({alpha, std::string(to_string(rule)), label,
                   std::string(to_string(c.method)), c.s_hat});
          } catch (const ConfigError&) {
            if (wanted) throw;
            continue;  // no threshold in this cell
          }
        }
        try {
          const CriticalS c = critical_s_numeric(alpha, rule, b, rounds, judges);
          t.add({alpha, std::string(to_string(rule)), label, std::string(to_string(c.method)),
                 c.s_hat});
        } catch (const NumericError&) {
          if (wanted) throw ConfigError("fair play optimal at " + label + "; no threshold");
        }
      }
    }
  }
  return t;
}

Table cmd_curve(const RunConfig& rc, const Preset& preset, bool noiseless) {
  if (rc.partisans != 1) throw ConfigError("curve requires exactly one partisan judge");
  const int b_true = rc.b_true.value_or(std::min(preset.default_b_true, rc.rounds));
  Table t;
  t.header = {"rule", "b_true", "k_awarded", "p_blue_win"};
  const auto signals = noiseless ? exact::PartisanSignals::Noiseless : exact::PartisanSignals::Noisy;
  for (ScoringRule rule : rc.rules()) {
    const auto curve = win_curve(rc.bout(rule), b_true, signals);
    for (int k = 0; k <= rc.rounds; ++k) {
      if (rc.k && *rc.k != k) continue;
      t.add({std::string(to_string(rule)), as_int(b_true), as_int(k), curve[k]});
    }
  }
  return t;
}

void cmd_flip_count(const RunConfig& rc, const std::optional<std::string>& tau_text,
                    const Output& o, std::ostream& out) {
  if (!tau_text) throw ConfigError("flip-count needs --tau, e.g. --tau BBR");
  const TrueSequence tau = TrueSequence::parse(*tau_text);
  if (rc.judges < 3 || rc.judges % 2 == 0) throw ConfigError("judges must be an odd number >= 3");
  Table t;
  t.header = {"rule", "tau", "pairs"};
  for (ScoringRule rule : rc.rules()) {
    t.add({std::string(to_string(rule)), tau.str(),
           as_int(count_result_flipping_pairs(tau, rc.judges, rule))});
  }
  if (o.format == "csv") {
    emit(t, o, out);
    return;
  }
  Output json_out = o;
  json_out.format = "json";
  if (t.rows.size() == 1) {
    // A single rule prints one object rather than an array.
    nlohmann::ordered_json obj;
    for (std::size_t i = 0; i < t.header.size(); ++i) obj[t.header[i]] = cell_json(t.rows[0][i]);
    std::ofstream file;
    std::ostream* sink = &out;
    if (!o.path.empty()) {
      file.open(o.path, std::ios::binary);
      if (!file) throw ConfigError("cannot open output file '" + o.path + "'");
      sink = &file;
    }
    *sink << obj.dump() << '\n';
    return;
  }
  emit(t, json_out, out);
}

}  // namespace

unsigned worker_count() {
  if (const char* env = std::getenv("RINGSIDE_THREADS"); env && *env) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 1 || v > 1024) {
      throw ConfigError("RINGSIDE_THREADS must be an integer in [1, 1024]");
    }
    return static_cast<unsigned>(v);
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Judged-bout simulator: partisan best responses under majority-judges and "
               "majority-rounds scoring"};
  app.name("ringside");
  app.fallthrough();
  app.require_subcommand(1);
  app.footer(
      "Configuration precedence: flags override --config file keys, which override preset "
      "defaults.\nPresets: benchmark (default), high-disagreement, high-favoritism, womens-pro, "
      "mens-olympic, womens-olympic, all-fair.\nRINGSIDE_THREADS sets the simulation worker "
      "count.\nExit codes: 0 success, 2 invalid configuration, 3 numeric failure.");

  Overrides flags;
  double alpha = 0;
  double s = 0;
  int rounds = 0;
  int judges = 0;
  int partisans = 0;
  std::string rule;
  std::int64_t trials = 0;
  std::uint64_t seed = 0;
  std::string preset;
  int b_true = 0;
  int k = 0;
  std::string config_path;
  Output output;

  auto* o_alpha = app.add_option("--alpha", alpha, "Signal error probability, in (0, 0.5)");
  auto* o_s = app.add_option("--s", s, "Partisan's utility from a Blue win (S >= 0)");
  auto* o_rounds = app.add_option("--rounds", rounds, "Rounds per bout");
  auto* o_judges = app.add_option("--judges", judges, "Judges (odd, >= 3)");
  auto* o_partisans = app.add_option("--partisans", partisans, "Partisan judges (0 or 1)");
  auto* o_rule = app.add_option("--rule", rule, "majority-judges | majority-rounds | both");
  auto* o_trials = app.add_option("--trials", trials, "Monte Carlo trials per condition");
  auto* o_seed = app.add_option("--seed", seed, "Master seed");
  auto* o_preset = app.add_option("--preset", preset, "Configuration preset");
  auto* o_btrue = app.add_option("--b-true", b_true, "Rounds Blue truly won");
  auto* o_k = app.add_option("--k", k, "Rounds the partisan awards to Blue");
  app.add_option("--config", config_path, "JSON file with configuration keys");
  app.add_option("--out", output.path, "Write output to this file instead of stdout");
  auto* o_format = app.add_option("--format", output.format, "csv | json");

  bool robbery = false;
  bool noiseless = false;
  std::string info_set_text;
  std::string tau_text;

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo outcome table per b_true");
  simulate->add_flag("--robbery", robbery, "Robbery rates under the binomial prior instead");
  auto* exact_cmd = app.add_subcommand("exact", "Exact outcome table per b_true");
  exact_cmd->add_flag("--robbery", robbery, "Exact robbery rates under the binomial prior");
  app.add_subcommand("best-response", "Partisan best response for every observation");
  auto* critical = app.add_subcommand("critical-s", "Critical favoritism thresholds");
  auto* o_info = critical->add_option("--info-set", info_set_text, "e.g. BRR");
  auto* curve = app.add_subcommand("curve", "P(Blue wins) against rounds awarded");
  curve->add_flag("--noiseless-partisan", noiseless, "Partisan observes the true rounds");
  auto* flips = app.add_subcommand("flip-count", "Outcome-changing pairs of signal errors");
  auto* o_tau = flips->add_option("--tau", tau_text, "True rounds, e.g. BBR");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidConfig;
  }

  if (*o_alpha) flags.alpha = alpha;
  if (*o_s) flags.s = s;
  if (*o_rounds) flags.rounds = rounds;
  if (*o_judges) flags.judges = judges;
  if (*o_partisans) flags.partisans = partisans;
  if (*o_rule) flags.rule = rule;
  if (*o_trials) flags.trials = trials;
  if (*o_seed) flags.seed = seed;
  if (*o_preset) flags.preset = preset;
  if (*o_btrue) flags.b_true = b_true;
  if (*o_k) flags.k = k;

  try {
    const Overrides file = config_path.empty() ? Overrides{} : overrides_from_file(config_path);
    const RunConfig rc = resolve(file, flags);
    const bool is_flip = flips->parsed();
    if (!is_flip) rc.validate();
    if (is_flip && !*o_format) output.format = "json";

    if (simulate->parsed()) {
      emit(cmd_simulate(rc, robbery), output, out);
    } else if (exact_cmd->parsed()) {
      emit(cmd_exact(rc, robbery), output, out);
    } else if (app.got_subcommand("best-response")) {
      emit(cmd_best_response(rc), output, out);
    } else if (critical->parsed()) {
      emit(cmd_critical_s(rc, *o_info ? std::optional(info_set_text) : std::nullopt), output,
           out);
    } else if (curve->parsed()) {
      emit(cmd_curve(rc, find_preset(rc.preset), noiseless), output, out);
    } else if (is_flip) {
      cmd_flip_count(rc, *o_tau ? std::optional(tau_text) : std::nullopt, output, out);
    }
  } catch (const ConfigError& e) {
    err << "invalid configuration: " << e.what() << '\n';
    return kExitInvalidConfig;
  } catch (const NumericError& e) {
    err << "numeric failure: " << e.what() << '\n';
    return kExitNumericFailure;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitNumericFailure;
  }
  return kExitOk;
}

}  // namespace ringside::cli
