#include "ringside/exact.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace ringside::exact {

namespace {

/// Compensated (Kahan-Babuska) summation.
class KahanSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

double choose(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  if (k > n - k) k = n - k;
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

void require_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 0.5)) throw ConfigError("alpha must lie in (0, 0.5)");
}

void require_count(int value, int rounds, const char* what) {
  if (value < 0 || value > rounds) {
    throw ConfigError(std::string(what) + " must lie in [0, rounds]");
  }
}

CardResult card_for_count(int blue_rounds, int rounds) {
  if (2 * blue_rounds > rounds) return CardResult::Blue;
  if (2 * blue_rounds < rounds) return CardResult::Red;
  return CardResult::Tie;
}

OutcomeDist outcome_from_round_total(const std::vector<double>& dist, int rounds) {
  KahanSum blue;
  KahanSum red;
  KahanSum draw;
  for (int t = 0; t <= rounds; ++t) {
    if (2 * t > rounds) {
      blue.add(dist[t]);
    } else if (2 * t < rounds) {
      red.add(dist[t]);
    } else {
      draw.add(dist[t]);
    }
  }
  return {blue.value(), red.value(), draw.value()};
}

int majority_need(int judges) { return (judges + 1) / 2; }

/// P(Blue wins a round | true winner, partisan's vote), from the fair judges.
double round_win_given_truth(Corner truth, Corner vote, const BoutConfig& config) {
  const int fair = config.judges - 1;
  const int need = majority_need(config.judges) - (vote == Corner::B ? 1 : 0);
  const double p = truth == Corner::B ? 1.0 - config.alpha : config.alpha;
  return binom_tail({fair, p}, need);
}

void check_response(const ResponseTable& response, int rounds) {
  if (static_cast<int>(response.size()) != rounds + 1) {
    throw ConfigError("response table must have rounds + 1 entries");
  }
  for (int k : response) require_count(k, rounds, "response entries");
}

void append_repeated(std::vector<double>& probs, double p, int count) {
  probs.insert(probs.end(), static_cast<std::size_t>(count), p);
}

}  // namespace

double binom_pmf(BinomialSpec spec, int k) {
  if (k < 0 || k > spec.trials) return 0.0;
  return choose(spec.trials, k) * std::pow(spec.success_prob, k) *
         std::pow(1.0 - spec.success_prob, spec.trials - k);
}

double binom_tail(BinomialSpec spec, int k) {
  if (k <= 0) return 1.0;
  if (k > spec.trials) return 0.0;
  KahanSum s;
  for (int i = k; i <= spec.trials; ++i) s.add(binom_pmf(spec, i));
  return s.value();
}

double hypergeom_pmf(int population, int successes, int draws, int k) {
  if (draws < 0 || draws > population || successes < 0 || successes > population) return 0.0;
  return choose(successes, k) * choose(population - successes, draws - k) /
         choose(population, draws);
}

std::vector<double> poisson_binomial(std::span<const double> probs) {
  std::vector<double> dist(probs.size() + 1, 0.0);
  dist[0] = 1.0;
  std::size_t used = 0;
  for (double p : probs) {
    ++used;
    for (std::size_t i = used; i > 0; --i) dist[i] = dist[i] * (1.0 - p) + dist[i - 1] * p;
    dist[0] *= 1.0 - p;
  }
  return dist;
}

double q_fair_given_signal(double alpha, Corner observed) {
  require_alpha(alpha);
  if (observed == Corner::B) return (1.0 - alpha) * (1.0 - alpha) + alpha * alpha;
  return 2.0 * alpha * (1.0 - alpha);
}

CardProbTriple card_prob_given_true(int b_true, const BoutConfig& config) {
  const int n = config.rounds;
  require_count(b_true, n, "b_true");
  const BinomialSpec hits{b_true, 1.0 - config.alpha};
  const BinomialSpec false_alarms{n - b_true, config.alpha};
  KahanSum blue;
  KahanSum tie;
  for (int x = 0; x <= b_true; ++x) {
    const double fx = binom_pmf(hits, x);
    for (int y = 0; y <= n - b_true; ++y) {
      const double w = fx * binom_pmf(false_alarms, y);
      const int total = x + y;
      if (2 * total > n) {
        blue.add(w);
      } else if (2 * total == n) {
        tie.add(w);
      }
    }
  }
  CardProbTriple c;
  c.p_blue = blue.value();
  c.p_tie = tie.value();
  c.p_red = 1.0 - c.p_blue - c.p_tie;
  if (c.p_red < 0.0) c.p_red = 0.0;
  return c;
}

double observation_likelihood(int b, int b_true, const BoutConfig& config) {
  const int n = config.rounds;
  require_count(b, n, "b");
  require_count(b_true, n, "b_true");
  const BinomialSpec hits{b_true, 1.0 - config.alpha};
  const BinomialSpec false_alarms{n - b_true, config.alpha};
  KahanSum s;
  for (int x = 0; x <= b_true; ++x) s.add(binom_pmf(hits, x) * binom_pmf(false_alarms, b - x));
  return s.value();
}

Posterior posterior_true_rounds(int b, const BoutConfig& config) {
  const int n = config.rounds;
  require_count(b, n, "b");
  Posterior post;
  post.weights.resize(static_cast<std::size_t>(n) + 1);
  KahanSum norm;
  for (int t = 0; t <= n; ++t) {
    post.weights[t] = binom_pmf({n, 0.5}, t) * observation_likelihood(b, t, config);
    norm.add(post.weights[t]);
  }
  const double z = norm.value();
  for (double& w : post.weights) w /= z;
  return post;
}

double c_given_b(int b, const BoutConfig& config) {
  const auto post = posterior_true_rounds(b, config);
  KahanSum s;
  for (int t = 0; t <= config.rounds; ++t) {
    s.add(post.weights[t] * card_prob_given_true(t, config).p_blue);
  }
  return s.value();
}

double round_win_prob(Corner observed, Corner action, const BoutConfig& config) {
  if (config.judges < 3 || config.judges % 2 == 0) {
    throw ConfigError("judges must be an odd number >= 3");
  }
  // Per-round posterior: the partisan's signal is right with probability
  // 1 - alpha (uniform prior on each round).
  return (1.0 - config.alpha) * round_win_given_truth(observed, action, config) +
         config.alpha * round_win_given_truth(flip(observed), action, config);
}

RoundClassProbs round_class_probs(const BoutConfig& config) {
  return {round_win_prob(Corner::B, Corner::B, config),
          round_win_prob(Corner::R, Corner::B, config),
          round_win_prob(Corner::B, Corner::R, config),
          round_win_prob(Corner::R, Corner::R, config)};
}

double f_two_of_three(double p1, double p2, double p3) {
  return p1 * p2 * (1 - p3) + p1 * (1 - p2) * p3 + (1 - p1) * p2 * p3 + p1 * p2 * p3;
}

RoundClassCounts canonical_counts(int b, int k, int rounds) {
  require_count(b, rounds, "b");
  require_count(k, rounds, "k");
  if (k >= b) return {b, k - b, 0, rounds - k};
  return {k, 0, b - k, rounds - b};
}

OutcomeDist bout_dist_majority_rounds(const RoundClassCounts& counts, const BoutConfig& config) {
  if (counts.total() != config.rounds || counts.obsB_doB < 0 || counts.obsR_doB < 0 ||
      counts.obsB_doR < 0 || counts.obsR_doR < 0) {
    throw ConfigError("round class counts must be nonnegative and sum to rounds");
  }
  const auto q = round_class_probs(config);
  std::vector<double> probs;
  probs.reserve(static_cast<std::size_t>(config.rounds));
  append_repeated(probs, q.q_obsB_doB, counts.obsB_doB);
  append_repeated(probs, q.q_obsR_doB, counts.obsR_doB);
  append_repeated(probs, q.q_obsB_doR, counts.obsB_doR);
  append_repeated(probs, q.q_obsR_doR, counts.obsR_doR);
  return outcome_from_round_total(poisson_binomial(probs), config.rounds);
}

OutcomeDist majority_judges_kernel(std::optional<CardResult> fixed, int fair_cards,
                                   const CardProbTriple& fair) {
  const int judges = fair_cards + (fixed ? 1 : 0);
  const int fixed_blue = fixed == CardResult::Blue ? 1 : 0;
  const int fixed_red = fixed == CardResult::Red ? 1 : 0;
  KahanSum blue;
  KahanSum red;
  KahanSum draw;
  for (int nb = 0; nb <= fair_cards; ++nb) {
    for (int nt = 0; nb + nt <= fair_cards; ++nt) {
      const int nr = fair_cards - nb - nt;
      const double w = choose(fair_cards, nb) * choose(fair_cards - nb, nt) *
                       std::pow(fair.p_blue, nb) * std::pow(fair.p_tie, nt) *
                       std::pow(fair.p_red, nr);
      if (2 * (nb + fixed_blue) > judges) {
        blue.add(w);
      } else if (2 * (nr + fixed_red) > judges) {
        red.add(w);
      } else {
        draw.add(w);
      }
    }
  }
  return {blue.value(), red.value(), draw.value()};
}

OutcomeDist bout_dist_majority_judges(int b, int k, const BoutConfig& config,
                                      FairCardBelief belief) {
  const int n = config.rounds;
  require_count(b, n, "b");
  require_count(k, n, "k");
  const CardResult own = card_for_count(k, n);
  const int fair_cards = config.judges - 1;
  const auto post = posterior_true_rounds(b, config);

  if (belief == FairCardBelief::Independent) {
    KahanSum pb;
    KahanSum pt;
    for (int t = 0; t <= n; ++t) {
      const auto c = card_prob_given_true(t, config);
      pb.add(post.weights[t] * c.p_blue);
      pt.add(post.weights[t] * c.p_tie);
    }
    CardProbTriple mixed{pb.value(), pt.value(), 0.0};
    mixed.p_red = 1.0 - mixed.p_blue - mixed.p_tie;
    return majority_judges_kernel(own, fair_cards, mixed);
  }

  OutcomeDist out;
  for (int t = 0; t <= n; ++t) {
    if (post.weights[t] == 0.0) continue;
    out += majority_judges_kernel(own, fair_cards, card_prob_given_true(t, config))
               .scaled(post.weights[t]);
  }
  return out;
}

OutcomeDist partisan_belief(int b, int k, const BoutConfig& config, FairCardBelief belief) {
  if (config.rule == ScoringRule::MajorityJudges) {
    return bout_dist_majority_judges(b, k, config, belief);
  }
  return bout_dist_majority_rounds(canonical_counts(b, k, config.rounds), config);
}

double expected_backlash(int b, int k, const BoutConfig& config) {
  const auto c = canonical_counts(b, k, config.rounds);
  const double a = config.alpha;
  return (c.obsB_doB * a + c.obsR_doB * (1.0 - a) + c.obsB_doR * (1.0 - a) + c.obsR_doR * a) /
         config.rounds;
}

// ---------------------------------------------------------------------------
// Truth-conditioned distributions
// ---------------------------------------------------------------------------

std::vector<OutcomeDist> outcome_given_true_by_observation(const BoutConfig& config, int b_true,
                                                           const ResponseTable& response,
                                                           PartisanSignals signals) {
  config.validate();
  const int n = config.rounds;
  require_count(b_true, n, "b_true");
  if (!config.sole_partisan()) {
    throw ConfigError("observation breakdown requires exactly one partisan judge");
  }
  check_response(response, n);
  std::vector<OutcomeDist> joint(static_cast<std::size_t>(n) + 1);
  const int fair_cards = config.judges - 1;
  const double a = config.alpha;

  if (config.rule == ScoringRule::MajorityJudges) {
    const auto fair = card_prob_given_true(b_true, config);
    for (int b = 0; b <= n; ++b) {
      const double w = signals == PartisanSignals::Noiseless
                           ? (b == b_true ? 1.0 : 0.0)
                           : observation_likelihood(b, b_true, config);
      if (w == 0.0) continue;
      joint[b] += majority_judges_kernel(card_for_count(response[b], n), fair_cards, fair)
                      .scaled(w);
    }
    return joint;
  }

  const double win_bb = round_win_given_truth(Corner::B, Corner::B, config);
  const double win_br = round_win_given_truth(Corner::B, Corner::R, config);
  const double win_rb = round_win_given_truth(Corner::R, Corner::B, config);
  const double win_rr = round_win_given_truth(Corner::R, Corner::R, config);
  std::vector<double> probs;
  probs.reserve(static_cast<std::size_t>(n));

  // x1: true-B rounds the partisan saw as B; y1: true-R rounds seen as B.
  for (int x1 = 0; x1 <= b_true; ++x1) {
    for (int y1 = 0; y1 <= n - b_true; ++y1) {
      double w = 0.0;
      if (signals == PartisanSignals::Noiseless) {
        w = (x1 == b_true && y1 == 0) ? 1.0 : 0.0;
      } else {
        w = binom_pmf({b_true, 1.0 - a}, x1) * binom_pmf({n - b_true, a}, y1);
      }
      if (w == 0.0) continue;
      const int b = x1 + y1;
      const int k = response[b];
      // Flipped rounds are an exchangeable draw from the eligible class; h is
      // the number of truly-Blue rounds among them.
      const bool upward = k >= b;
      const int eligible = upward ? n - b : b;
      const int eligible_true_b = upward ? b_true - x1 : x1;
      const int m = upward ? k - b : b - k;
      for (int h = 0; h <= m; ++h) {
        const double ph = hypergeom_pmf(eligible, eligible_true_b, m, h);
        if (ph == 0.0) continue;
        int true_b_vote_b = x1;
        int true_r_vote_b = y1;
        if (upward) {
          true_b_vote_b += h;
          true_r_vote_b += m - h;
        } else {
          true_b_vote_b -= h;
          true_r_vote_b -= m - h;
        }
        probs.clear();
        append_repeated(probs, win_bb, true_b_vote_b);
        append_repeated(probs, win_br, b_true - true_b_vote_b);
        append_repeated(probs, win_rb, true_r_vote_b);
        append_repeated(probs, win_rr, n - b_true - true_r_vote_b);
        joint[b] += outcome_from_round_total(poisson_binomial(probs), n).scaled(w * ph);
      }
    }
  }
  return joint;
}

OutcomeDist outcome_given_true(const BoutConfig& config, int b_true,
                               const ResponseTable& response, PartisanSignals signals) {
  config.validate();
  const int n = config.rounds;
  require_count(b_true, n, "b_true");
  if (config.sole_partisan()) {
    OutcomeDist total;
    for (const auto& d : outcome_given_true_by_observation(config, b_true, response, signals)) {
      total += d;
    }
    return total;
  }

  if (config.rule == ScoringRule::MajorityJudges) {
    return majority_judges_kernel(std::nullopt, config.judges,
                                  card_prob_given_true(b_true, config));
  }
  const int need = majority_need(config.judges);
  const double win_b = binom_tail({config.judges, 1.0 - config.alpha}, need);
  const double win_r = binom_tail({config.judges, config.alpha}, need);
  std::vector<double> probs;
  append_repeated(probs, win_b, b_true);
  append_repeated(probs, win_r, n - b_true);
  return outcome_from_round_total(poisson_binomial(probs), n);
}

double correct_probability(const OutcomeDist& dist, int b_true, int rounds) {
  return dist.probability(truth_verdict(b_true, rounds));
}

double RobberyRates::ratio() const {
  if (rate_red == 0.0) return std::numeric_limits<double>::infinity();
  return rate_blue / rate_red;
}

RobberyRates robbery_rates(const BoutConfig& config, const ResponseTable& response) {
  const int n = config.rounds;
  KahanSum blue;
  KahanSum red;
  for (int t = 0; t <= n; ++t) {
    const double prior = binom_pmf({n, 0.5}, t);
    if (2 * t < n) {
      blue.add(prior * outcome_given_true(config, t, response).p_blue);
    } else if (2 * t > n) {
      red.add(prior * outcome_given_true(config, t, response).p_red);
    }
  }
  return {blue.value(), red.value()};
}

}  // namespace ringside::exact
