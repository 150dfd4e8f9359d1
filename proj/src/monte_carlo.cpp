#include "ringside/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "ringside/core_model.hpp"
#include "ringside/exact.hpp"
#include "ringside/rng.hpp"
#include "ringside/strategy.hpp"

namespace ringside {

namespace {

// Condition id used for binomial-prior campaigns; PerTrueCount campaigns use
// b_true itself, so a restricted campaign reproduces the matching full row.
constexpr std::uint64_t kPriorCondition = 0xFFFFFFFFULL;

struct Condition {
  std::uint64_t id;
  std::optional<int> b_true;
};

/// Awards k rounds to Blue on judge p's column in place, canonical order.
void apply_canonical_in_place(ScorecardSet& scores, int p, int k) {
  const int n = scores.rounds();
  int b = 0;
  for (int t = 0; t < n; ++t) b += scores.at(t, p) == Corner::B;
  const Corner from = k > b ? Corner::R : Corner::B;
  int remaining = std::abs(k - b);
  for (int t = 0; t < n && remaining > 0; ++t) {
    if (scores.at(t, p) == from) {
      scores.at(t, p) = flip(from);
      --remaining;
    }
  }
}

void simulate_range(const CampaignSpec& spec, const ResponseTable& response,
                    const std::vector<Condition>& conditions, std::int64_t begin,
                    std::int64_t end, std::vector<TallyRow>& rows) {
  const BoutConfig& config = spec.config;
  const auto partisan = config.sole_partisan();
  const int n = config.rounds;
  SignalMatrix scores(n, config.judges);
  for (std::int64_t g = begin; g < end; ++g) {
    const auto& cond = conditions[static_cast<std::size_t>(g / spec.trials_per_condition)];
    const auto trial = static_cast<std::uint64_t>(g % spec.trials_per_condition);
    Stream rng(spec.master_seed, cond.id, trial);
    const TrueSequence tau = cond.b_true ? sample_true_sequence_given(config, *cond.b_true, rng)
                                         : sample_true_sequence(config, rng);
    sample_signals_into(tau, config, rng, scores);
    if (partisan) {
      int b = 0;
      for (int t = 0; t < n; ++t) b += scores.at(t, *partisan) == Corner::B;
      apply_canonical_in_place(scores, *partisan, response[b]);
    }
    const Outcome o = bout_outcome(scores, config.rule);
    const int b_true = tau.blue_count();
    TallyRow& row = rows[b_true];
    ++row.trials;
    switch (o) {
      case Outcome::BlueWin: ++row.blue; break;
      case Outcome::RedWin: ++row.red; break;
      case Outcome::Draw: ++row.draw; break;
    }
    row.correct += o == truth_verdict(b_true, n);
  }
}

ResponseTable default_response(const BoutConfig& config) {
  return config.sole_partisan() ? best_response_table(config) : fair_response(config.rounds);
}

}  // namespace

double TallyRow::standard_error(std::int64_t count) const {
  if (trials == 0) return 0.0;
  const double p = ratio(count);
  return std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

TallyRow& TallyRow::operator+=(const TallyRow& other) {
  trials += other.trials;
  blue += other.blue;
  red += other.red;
  draw += other.draw;
  correct += other.correct;
  return *this;
}

const TallyRow& TallyTable::row(int b_true) const {
  for (const auto& r : rows) {
    if (r.b_true == b_true) return r;
  }
  throw ConfigError("no tally row for b_true = " + std::to_string(b_true));
}

std::int64_t TallyTable::total_trials() const {
  std::int64_t total = 0;
  for (const auto& r : rows) total += r.trials;
  return total;
}

TallyTable run_campaign(const CampaignSpec& spec) {
  spec.config.validate();
  return run_campaign(spec, default_response(spec.config));
}

TallyTable run_campaign(const CampaignSpec& spec, const ResponseTable& response) {
  const BoutConfig& config = spec.config;
  config.validate();
  const int n = config.rounds;
  if (spec.trials_per_condition < 1) throw ConfigError("trials must be at least 1");
  if (config.sole_partisan() && static_cast<int>(response.size()) != n + 1) {
    throw ConfigError("response table must have rounds + 1 entries");
  }

  std::vector<Condition> conditions;
  if (spec.conditioning == Conditioning::BinomialPrior) {
    conditions.push_back({kPriorCondition, std::nullopt});
  } else if (spec.only_b_true) {
    if (*spec.only_b_true < 0 || *spec.only_b_true > n) {
      throw ConfigError("b_true must lie in [0, rounds]");
    }
    conditions.push_back({static_cast<std::uint64_t>(*spec.only_b_true), spec.only_b_true});
  } else {
    for (int t = 0; t <= n; ++t) conditions.push_back({static_cast<std::uint64_t>(t), t});
  }

  const std::int64_t total = spec.trials_per_condition * static_cast<std::int64_t>(conditions.size());
  const auto workers = static_cast<std::int64_t>(
      std::clamp<std::int64_t>(spec.workers, 1, std::max<std::int64_t>(total, 1)));

  std::vector<std::vector<TallyRow>> partial(static_cast<std::size_t>(workers),
                                             std::vector<TallyRow>(static_cast<std::size_t>(n) + 1));
  {
    std::vector<std::jthread> pool;
    for (std::int64_t w = 0; w < workers; ++w) {
      const std::int64_t begin = total * w / workers;
      const std::int64_t end = total * (w + 1) / workers;
      pool.emplace_back([&, w, begin, end] {
        simulate_range(spec, response, conditions, begin, end, partial[w]);
      });
    }
  }

  TallyTable table;
  for (int t = 0; t <= n; ++t) {
    TallyRow row;
    row.b_true = t;
    for (const auto& p : partial) row += p[t];
    const bool requested = spec.conditioning == Conditioning::BinomialPrior ||
                           !spec.only_b_true || *spec.only_b_true == t;
    if (requested) table.rows.push_back(row);
  }
  return table;
}

RobberyStats robbery_stats(const TallyTable& tally, int rounds) {
  RobberyStats s;
  for (const auto& r : tally.rows) {
    s.trials += r.trials;
    if (2 * r.b_true < rounds) s.robberies_blue += r.blue;
    if (2 * r.b_true > rounds) s.robberies_red += r.red;
  }
  if (s.trials > 0) {
    s.rate_blue = static_cast<double>(s.robberies_blue) / static_cast<double>(s.trials);
    s.rate_red = static_cast<double>(s.robberies_red) / static_cast<double>(s.trials);
  }
  if (s.robberies_red == 0) {
    s.ratio = std::numeric_limits<double>::infinity();
    s.diagnostic = "no robbery in favour of Red observed; ratio reported as infinite";
  } else {
    s.ratio = s.rate_blue / s.rate_red;
  }
  return s;
}

RobberyStats robbery_ratio(const CampaignSpec& spec) {
  if (spec.conditioning != Conditioning::BinomialPrior) {
    throw ConfigError("robbery ratios require binomial-prior conditioning");
  }
  return robbery_stats(run_campaign(spec), spec.config.rounds);
}

int CrossCheckReport::flagged_count() const {
  return static_cast<int>(std::count_if(cells.begin(), cells.end(),
                                        [](const CrossCheckCell& c) { return c.flagged; }));
}

CrossCheckReport exact_cross_check(const CampaignSpec& spec, const TallyTable& tally,
                                   double sigma_limit) {
  const BoutConfig& config = spec.config;
  const ResponseTable response = default_response(config);
  CrossCheckReport report;
  report.sigma_limit = sigma_limit;
  for (const auto& row : tally.rows) {
    if (row.trials == 0) continue;
    const OutcomeDist exact = exact::outcome_given_true(config, row.b_true, response);
    const std::pair<Outcome, std::int64_t> counts[] = {
        {Outcome::BlueWin, row.blue}, {Outcome::RedWin, row.red}, {Outcome::Draw, row.draw}};
    for (const auto& [outcome, count] : counts) {
      CrossCheckCell cell;
      cell.b_true = row.b_true;
      cell.outcome = outcome;
      cell.simulated = static_cast<double>(count) / static_cast<double>(row.trials);
      cell.exact = std::clamp(exact.probability(outcome), 0.0, 1.0);
      cell.standard_error =
          std::sqrt(cell.exact * (1.0 - cell.exact) / static_cast<double>(row.trials));
      const double diff = std::abs(cell.simulated - cell.exact);
      cell.flagged = cell.standard_error > 0.0 ? diff > sigma_limit * cell.standard_error
                                               : diff > 1e-12;
      report.cells.push_back(cell);
    }
  }
  return report;
}

CrossCheckReport exact_cross_check(const CampaignSpec& spec, double sigma_limit) {
  return exact_cross_check(spec, run_campaign(spec), sigma_limit);
}

}  // namespace ringside
