#pragma once

#include <span>
#include <vector>

#include "ringside/types.hpp"

// Closed-form and convolution-based probabilities for bouts with at most one
// partisan judge. Two families of functions live here:
//
//  * the partisan's beliefs, conditioned on what they observed (b B-signals);
//    these feed expected utility and best responses;
//  * outcome distributions conditioned on the truth (b_true Blue rounds),
//    integrating over everyone's signals; these are what a simulation
//    campaign estimates.

namespace ringside::exact {

struct BinomialSpec {
  int trials = 0;
  double success_prob = 0.0;
};

double binom_pmf(BinomialSpec spec, int k);

/// P(Y >= k) for Y ~ Binomial(spec).
double binom_tail(BinomialSpec spec, int k);

double hypergeom_pmf(int population, int successes, int draws, int k);

/// Distribution of the number of successes among independent Bernoulli
/// trials with the given probabilities (exact convolution).
std::vector<double> poisson_binomial(std::span<const double> probs);

/// Probability a fair judge scores a round B given the partisan's signal in
/// that round (three-judge panel, one fair co-judge's view).
double q_fair_given_signal(double alpha, Corner observed);

struct CardProbTriple {
  double p_blue = 0.0;
  double p_tie = 0.0;
  double p_red = 0.0;
};

/// Verdict distribution of one fair card when Blue truly won b_true rounds.
CardProbTriple card_prob_given_true(int b_true, const BoutConfig& config);

/// P(a judge sees exactly b B-signals | b_true).
double observation_likelihood(int b, int b_true, const BoutConfig& config);

struct Posterior {
  std::vector<double> weights;  // indexed by b_true
};

/// P(b_true | b) under the Binomial(N, 1/2) prior on b_true.
Posterior posterior_true_rounds(int b, const BoutConfig& config);

/// Probability that a fair card favours Blue given the partisan saw b
/// B-signals.
double c_given_b(int b, const BoutConfig& config);

/// P(Blue wins a round | partisan's signal and vote), any odd panel size.
double round_win_prob(Corner observed, Corner action, const BoutConfig& config);

struct RoundClassProbs {
  double q_obsB_doB = 0.0;
  double q_obsR_doB = 0.0;
  double q_obsB_doR = 0.0;
  double q_obsR_doR = 0.0;
};

RoundClassProbs round_class_probs(const BoutConfig& config);

/// Probability of at least two successes among three independent trials.
double f_two_of_three(double p1, double p2, double p3);

/// How many rounds fall in each (partisan signal, partisan vote) class.
struct RoundClassCounts {
  int obsB_doB = 0;
  int obsR_doB = 0;
  int obsB_doR = 0;
  int obsR_doR = 0;

  int total() const { return obsB_doB + obsR_doB + obsB_doR + obsR_doR; }
};

/// Class counts produced by the canonical policy for b observed, k awarded.
RoundClassCounts canonical_counts(int b, int k, int rounds);

OutcomeDist bout_dist_majority_rounds(const RoundClassCounts& counts, const BoutConfig& config);

/// How the partisan models the fair cards under majority judges.
enum class FairCardBelief {
  /// Each fair card favours Blue independently with probability C|b (the
  /// utility-table form S(1-(1-C)^2), S*C^2).
  Independent,
  /// Fair cards are i.i.d. only given b_true; the partisan mixes the joint
  /// card distribution over the posterior. Matches exhaustive enumeration.
  Exact,
};

OutcomeDist bout_dist_majority_judges(int b, int k, const BoutConfig& config,
                                      FairCardBelief belief = FairCardBelief::Independent);

/// Outcome when one card has a fixed verdict (or none, if every judge is
/// fair) and `fair_cards` further cards are i.i.d. with the given triple.
OutcomeDist majority_judges_kernel(std::optional<CardResult> fixed, int fair_cards,
                                   const CardProbTriple& fair);

/// Partisan's belief about the bout for (b observed, k awarded) under the
/// config's rule.
OutcomeDist partisan_belief(int b, int k, const BoutConfig& config,
                            FairCardBelief belief = FairCardBelief::Independent);

/// Expected backlash of awarding k rounds to Blue after observing b.
double expected_backlash(int b, int k, const BoutConfig& config);

// ---------------------------------------------------------------------------
// Outcome distributions conditioned on the truth.
// ---------------------------------------------------------------------------

enum class PartisanSignals {
  Noisy,
  /// The partisan sees the true rounds exactly; fair judges remain noisy.
  Noiseless,
};

/// Joint mass P(partisan observes b, outcome | b_true), indexed by b. Sums to
/// outcome_given_true. Requires exactly one partisan.
std::vector<OutcomeDist> outcome_given_true_by_observation(
    const BoutConfig& config, int b_true, const ResponseTable& response,
    PartisanSignals signals = PartisanSignals::Noisy);

/// P(outcome | Blue truly won b_true rounds). With no partisan the response
/// table is ignored.
OutcomeDist outcome_given_true(const BoutConfig& config, int b_true,
                               const ResponseTable& response,
                               PartisanSignals signals = PartisanSignals::Noisy);

double correct_probability(const OutcomeDist& dist, int b_true, int rounds);

struct RobberyRates {
  double rate_blue = 0.0;  // P(b_true < N/2 and Blue wins)
  double rate_red = 0.0;   // P(b_true > N/2 and Red wins)
  double ratio() const;
};

/// Robbery rates under the Binomial(N, 1/2) prior on b_true.
RobberyRates robbery_rates(const BoutConfig& config, const ResponseTable& response);

}  // namespace ringside::exact
