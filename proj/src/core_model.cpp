#include "ringside/core_model.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <string>

namespace ringside {

// ---------------------------------------------------------------------------
// Domain types
// ---------------------------------------------------------------------------

std::string_view to_string(ScoringRule rule) {
  return rule == ScoringRule::MajorityJudges ? "majority-judges" : "majority-rounds";
}

std::string_view to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::BlueWin: return "blue";
    case Outcome::RedWin: return "red";
    case Outcome::Draw: return "draw";
  }
  return "?";
}

ScoringRule parse_rule(std::string_view name) {
  if (name == "majority-judges" || name == "judges") return ScoringRule::MajorityJudges;
  if (name == "majority-rounds" || name == "rounds") return ScoringRule::MajorityRounds;
  throw ConfigError("unknown scoring rule '" + std::string(name) +
                    "' (expected majority-judges or majority-rounds)");
}

BoutConfig BoutConfig::make(int rounds, int judges, double alpha, double favoritism,
                            int partisan_count, ScoringRule rule) {
  if (partisan_count < 0 || partisan_count > judges) {
    throw ConfigError("partisan count must lie in [0, judges]");
  }
  BoutConfig c;
  c.rounds = rounds;
  c.judges = judges;
  c.alpha = alpha;
  c.rule = rule;
  c.profiles.assign(static_cast<std::size_t>(std::max(judges, 0)), JudgeProfile{});
  for (int j = 0; j < partisan_count; ++j) c.profiles[j].favoritism_blue = favoritism;
  c.validate();
  return c;
}

void BoutConfig::validate() const {
  if (rounds < 1) throw ConfigError("rounds must be at least 1");
  if (judges < 3 || judges % 2 == 0) throw ConfigError("judges must be an odd number >= 3");
  if (!(alpha > 0.0 && alpha < 0.5)) throw ConfigError("alpha must lie in (0, 0.5)");
  if (static_cast<int>(profiles.size()) != judges) {
    throw ConfigError("one judge profile is required per judge");
  }
  for (const auto& p : profiles) {
    if (!(p.favoritism_blue >= 0.0) || !(p.favoritism_red >= 0.0)) {
      throw ConfigError("favoritism S and G must be nonnegative");
    }
  }
}

std::vector<int> BoutConfig::partisan_indices() const {
  std::vector<int> out;
  for (int j = 0; j < static_cast<int>(profiles.size()); ++j) {
    if (!profiles[j].is_fair()) out.push_back(j);
  }
  return out;
}

std::optional<int> BoutConfig::sole_partisan() const {
  const auto idx = partisan_indices();
  if (idx.size() > 1) throw ConfigError("at most one partisan judge is supported");
  if (idx.empty()) return std::nullopt;
  return idx.front();
}

JudgeProfile BoutConfig::partisan_profile() const {
  const auto p = sole_partisan();
  return p ? profiles[*p] : JudgeProfile{};
}

int TrueSequence::blue_count() const {
  return static_cast<int>(std::count(rounds.begin(), rounds.end(), Corner::B));
}

TrueSequence TrueSequence::parse(std::string_view letters) {
  TrueSequence tau;
  for (char ch : letters) {
    if (ch == 'B' || ch == 'b') {
      tau.rounds.push_back(Corner::B);
    } else if (ch == 'R' || ch == 'r') {
      tau.rounds.push_back(Corner::R);
    } else {
      throw ConfigError("round sequence must contain only B and R");
    }
  }
  if (tau.rounds.empty()) throw ConfigError("round sequence must not be empty");
  return tau;
}

std::string TrueSequence::str() const {
  std::string s;
  for (Corner c : rounds) s.push_back(to_char(c));
  return s;
}

std::vector<Corner> CornerMatrix::card(int judge) const {
  std::vector<Corner> out(static_cast<std::size_t>(rounds_));
  for (int t = 0; t < rounds_; ++t) out[t] = at(t, judge);
  return out;
}

void CornerMatrix::set_card(int judge, std::span<const Corner> card) {
  for (int t = 0; t < rounds_; ++t) at(t, judge) = card[t];
}

double OutcomeDist::probability(Outcome o) const {
  switch (o) {
    case Outcome::BlueWin: return p_blue;
    case Outcome::RedWin: return p_red;
    case Outcome::Draw: return p_draw;
  }
  return 0.0;
}

OutcomeDist& OutcomeDist::operator+=(const OutcomeDist& other) {
  p_blue += other.p_blue;
  p_red += other.p_red;
  p_draw += other.p_draw;
  return *this;
}

ResponseTable fair_response(int rounds) {
  ResponseTable r(static_cast<std::size_t>(rounds) + 1);
  for (int b = 0; b <= rounds; ++b) r[b] = b;
  return r;
}

ResponseTable forced_response(int rounds, int k) {
  return ResponseTable(static_cast<std::size_t>(rounds) + 1, k);
}

Outcome truth_verdict(int blue_rounds, int rounds) {
  if (2 * blue_rounds > rounds) return Outcome::BlueWin;
  if (2 * blue_rounds < rounds) return Outcome::RedWin;
  return Outcome::Draw;
}

// ---------------------------------------------------------------------------
// Sampling
// ---------------------------------------------------------------------------

TrueSequence sample_true_sequence(const BoutConfig& config, Stream& rng) {
  TrueSequence tau;
  tau.rounds.resize(static_cast<std::size_t>(config.rounds));
  std::uint64_t bits = 0;
  for (int t = 0; t < config.rounds; ++t) {
    if (t % 64 == 0) bits = rng();
    tau.rounds[t] = (bits & 1U) ? Corner::B : Corner::R;
    bits >>= 1;
  }
  return tau;
}

TrueSequence sample_true_sequence_given(const BoutConfig& config, int blue_rounds,
                                        Stream& rng) {
  if (blue_rounds < 0 || blue_rounds > config.rounds) {
    throw ConfigError("blue round count must lie in [0, rounds]");
  }
  std::vector<int> order(static_cast<std::size_t>(config.rounds));
  for (int t = 0; t < config.rounds; ++t) order[t] = t;
  TrueSequence tau;
  tau.rounds.assign(static_cast<std::size_t>(config.rounds), Corner::R);
  // Partial Fisher-Yates: the first blue_rounds slots become B.
  for (int i = 0; i < blue_rounds; ++i) {
    const auto j = i + static_cast<int>(rng.below(static_cast<std::uint64_t>(config.rounds - i)));
    std::swap(order[i], order[j]);
    tau.rounds[order[i]] = Corner::B;
  }
  return tau;
}

void sample_signals_into(const TrueSequence& tau, const BoutConfig& config, Stream& rng,
                         SignalMatrix& out) {
  if (tau.size() != config.rounds) throw ConfigError("true sequence length must equal rounds");
  if (out.rounds() != config.rounds || out.judges() != config.judges) {
    out = SignalMatrix(config.rounds, config.judges);
  }
  for (int t = 0; t < config.rounds; ++t) {
    for (int j = 0; j < config.judges; ++j) {
      const Corner truth = tau.rounds[t];
      out.at(t, j) = rng.bernoulli(config.alpha) ? flip(truth) : truth;
    }
  }
}

SignalMatrix sample_signals(const TrueSequence& tau, const BoutConfig& config, Stream& rng) {
  SignalMatrix out(config.rounds, config.judges);
  sample_signals_into(tau, config, rng, out);
  return out;
}

// ---------------------------------------------------------------------------
// Scoring
// ---------------------------------------------------------------------------

double backlash(std::span<const Corner> card, const TrueSequence& tau) {
  if (card.size() != tau.rounds.size()) {
    throw ConfigError("scorecard and true sequence lengths differ");
  }
  if (card.empty()) throw ConfigError("scorecard must not be empty");
  int wrong = 0;
  for (std::size_t t = 0; t < card.size(); ++t) wrong += card[t] != tau.rounds[t];
  return static_cast<double>(wrong) / static_cast<double>(card.size());
}

Corner round_winner(std::span<const Corner> votes) {
  if (votes.empty() || votes.size() % 2 == 0) {
    throw ConfigError("round winner needs an odd number of votes");
  }
  const auto blue = std::count(votes.begin(), votes.end(), Corner::B);
  return 2 * static_cast<std::size_t>(blue) > votes.size() ? Corner::B : Corner::R;
}

CardResult card_result(std::span<const Corner> card) {
  const auto blue = static_cast<std::size_t>(std::count(card.begin(), card.end(), Corner::B));
  const auto red = card.size() - blue;
  if (blue > red) return CardResult::Blue;
  if (red > blue) return CardResult::Red;
  return CardResult::Tie;
}

Outcome bout_outcome(const ScorecardSet& scores, ScoringRule rule) {
  const int n = scores.rounds();
  const int judges = scores.judges();
  if (judges % 2 == 0) throw ConfigError("judges must be odd");
  if (rule == ScoringRule::MajorityJudges) {
    int blue_cards = 0;
    int red_cards = 0;
    for (int j = 0; j < judges; ++j) {
      int b = 0;
      for (int t = 0; t < n; ++t) b += scores.at(t, j) == Corner::B;
      if (2 * b > n) {
        ++blue_cards;
      } else if (2 * b < n) {
        ++red_cards;
      }
    }
    if (2 * blue_cards > judges) return Outcome::BlueWin;
    if (2 * red_cards > judges) return Outcome::RedWin;
    return Outcome::Draw;
  }
  int blue_rounds = 0;
  for (int t = 0; t < n; ++t) blue_rounds += round_winner(scores.round(t)) == Corner::B;
  return truth_verdict(blue_rounds, n);
}

std::vector<Corner> award_canonical(std::span<const Corner> signals, PartisanStrategy strategy) {
  const int n = static_cast<int>(signals.size());
  const int k = strategy.k_awarded;
  if (k < 0 || k > n) throw ConfigError("k_awarded must lie in [0, rounds]");
  std::vector<Corner> card(signals.begin(), signals.end());
  int b = static_cast<int>(std::count(card.begin(), card.end(), Corner::B));
  if (k > b) {
    for (int t = 0; t < n && b < k; ++t) {
      if (card[t] == Corner::R) {
        card[t] = Corner::B;
        ++b;
      }
    }
  } else if (k < b) {
    for (int t = 0; t < n && b > k; ++t) {
      if (card[t] == Corner::B) {
        card[t] = Corner::R;
        --b;
      }
    }
  }
  return card;
}

ScorecardSet score_bout(const SignalMatrix& signals, const BoutConfig& config,
                        const ResponseTable& response) {
  ScorecardSet scores = signals;
  if (const auto p = config.sole_partisan()) {
    const auto card = signals.card(*p);
    const int b = static_cast<int>(std::count(card.begin(), card.end(), Corner::B));
    scores.set_card(*p, award_canonical(card, PartisanStrategy{response.at(b)}));
  }
  return scores;
}

int count_result_flipping_pairs(const TrueSequence& tau, int judges, ScoringRule rule) {
  const int n = tau.size();
  if (n < 1) throw ConfigError("true sequence must not be empty");
  if (judges < 3 || judges % 2 == 0) throw ConfigError("judges must be an odd number >= 3");
  const int cells = n * judges;
  if (cells > kMaxFlipPairCells) {
    throw ConfigError("instance too large: rounds x judges must be at most " +
                      std::to_string(kMaxFlipPairCells));
  }
  ScorecardSet base(n, judges);
  for (int t = 0; t < n; ++t) {
    for (int j = 0; j < judges; ++j) base.at(t, j) = tau.rounds[t];
  }
  const Outcome baseline = bout_outcome(base, rule);
  int pairs = 0;
  for (int a = 0; a < cells; ++a) {
    for (int c = a + 1; c < cells; ++c) {
      ScorecardSet s = base;
      s.at(a / judges, a % judges) = flip(s.at(a / judges, a % judges));
      s.at(c / judges, c % judges) = flip(s.at(c / judges, c % judges));
      pairs += bout_outcome(s, rule) != baseline;
    }
  }
  return pairs;
}

// ---------------------------------------------------------------------------
// Exhaustive oracle
// ---------------------------------------------------------------------------

namespace {

double binomial_coefficient(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

void add_outcome(OutcomeDist& d, Outcome o, double w) {
  switch (o) {
    case Outcome::BlueWin: d.p_blue += w; break;
    case Outcome::RedWin: d.p_red += w; break;
    case Outcome::Draw: d.p_draw += w; break;
  }
}

}  // namespace

EnumerationResult enumerate_exact(const BoutConfig& config, const ResponseTable& response,
                                  const TrueSequence& tau) {
  config.validate();
  const int n = config.rounds;
  const int judges = config.judges;
  if (tau.size() != n) throw ConfigError("true sequence length must equal rounds");
  const int cells = n * judges;
  if (cells > kMaxEnumeratedCells) {
    throw ConfigError("instance too large: rounds x judges must be at most " +
                      std::to_string(kMaxEnumeratedCells) + " for exhaustive enumeration");
  }
  const auto partisan = config.sole_partisan();
  if (partisan && static_cast<int>(response.size()) != n + 1) {
    throw ConfigError("response table must have rounds + 1 entries");
  }

  // weight[w] = alpha^w (1 - alpha)^(cells - w) for w wrong signals.
  std::vector<double> weight(static_cast<std::size_t>(cells) + 1);
  for (int w = 0; w <= cells; ++w) {
    weight[w] = std::pow(config.alpha, w) * std::pow(1.0 - config.alpha, cells - w);
  }

  EnumerationResult result;
  if (partisan) result.by_observation.assign(static_cast<std::size_t>(n) + 1, OutcomeDist{});

  ScorecardSet scores(n, judges);
  std::vector<int> eligible;
  eligible.reserve(static_cast<std::size_t>(n));
  const std::uint32_t total_masks = 1U << cells;
  for (std::uint32_t mask = 0; mask < total_masks; ++mask) {
    const double w = weight[std::popcount(mask)];
    for (int t = 0; t < n; ++t) {
      for (int j = 0; j < judges; ++j) {
        const bool wrong = (mask >> (t * judges + j)) & 1U;
        scores.at(t, j) = wrong ? flip(tau.rounds[t]) : tau.rounds[t];
      }
    }
    if (!partisan) {
      add_outcome(result.total, bout_outcome(scores, config.rule), w);
      continue;
    }

    const int p = *partisan;
    int b = 0;
    for (int t = 0; t < n; ++t) b += scores.at(t, p) == Corner::B;
    const int k = response[b];
    if (k < 0 || k > n) throw ConfigError("response entries must lie in [0, rounds]");
    const Corner from = k > b ? Corner::R : Corner::B;
    const int m = std::abs(k - b);
    eligible.clear();
    for (int t = 0; t < n; ++t) {
      if (scores.at(t, p) == from) eligible.push_back(t);
    }
    const int e = static_cast<int>(eligible.size());
    const double subset_weight = w / binomial_coefficient(e, m);
    OutcomeDist& slot = result.by_observation[b];
    for (std::uint32_t sub = 0; sub < (1U << e); ++sub) {
      if (std::popcount(sub) != m) continue;
      for (int i = 0; i < e; ++i) {
        if ((sub >> i) & 1U) scores.at(eligible[i], p) = flip(from);
      }
      const Outcome o = bout_outcome(scores, config.rule);
      add_outcome(slot, o, subset_weight);
      add_outcome(result.total, o, subset_weight);
      for (int i = 0; i < e; ++i) scores.at(eligible[i], p) = from;
    }
  }
  return result;
}

OutcomeDist enumerate_exact(const BoutConfig& config, PartisanStrategy strategy,
                            const TrueSequence& tau) {
  return enumerate_exact(config, forced_response(config.rounds, strategy.k_awarded), tau).total;
}

}  // namespace ringside
