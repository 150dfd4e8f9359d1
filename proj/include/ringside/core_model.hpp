#pragma once

#include <span>
#include <vector>

#include "ringside/rng.hpp"
#include "ringside/types.hpp"

namespace ringside {

// Sampling. Every round is B with probability 1/2; each signal matches the
// true round with probability 1 - alpha, independently.

TrueSequence sample_true_sequence(const BoutConfig& config, Stream& rng);

/// Uniformly random arrangement of exactly `blue_rounds` B rounds.
TrueSequence sample_true_sequence_given(const BoutConfig& config, int blue_rounds,
                                        Stream& rng);

SignalMatrix sample_signals(const TrueSequence& tau, const BoutConfig& config, Stream& rng);
void sample_signals_into(const TrueSequence& tau, const BoutConfig& config, Stream& rng,
                         SignalMatrix& out);

/// Fraction of rounds on `card` that disagree with the truth.
double backlash(std::span<const Corner> card, const TrueSequence& tau);

/// Strict majority of an odd number of votes.
Corner round_winner(std::span<const Corner> votes);

CardResult card_result(std::span<const Corner> card);

Outcome bout_outcome(const ScorecardSet& scores, ScoringRule rule);

/// Applies the canonical flip policy to a partisan's signal card: B-signalled
/// rounds are awarded B first; if k exceeds the B count, the earliest
/// R-signalled rounds are also awarded B; if k is below it, the earliest
/// B-signalled rounds are awarded R.
std::vector<Corner> award_canonical(std::span<const Corner> signals, PartisanStrategy strategy);

/// Scores awarded by every judge: fair judges copy their signals, the sole
/// partisan (if any) plays `response` via the canonical policy.
ScorecardSet score_bout(const SignalMatrix& signals, const BoutConfig& config,
                        const ResponseTable& response);

/// Number of unordered pairs of cells whose joint flip changes the outcome
/// relative to the noiseless, all-fair baseline (signals equal truth).
int count_result_flipping_pairs(const TrueSequence& tau, int judges, ScoringRule rule);

/// Exhaustive outcome distribution for a fixed truth, summing over every
/// signal realisation. When the partisan must flip m of e eligible rounds,
/// every m-subset is weighted equally (the exchangeable reading of the
/// canonical policy).
struct EnumerationResult {
  OutcomeDist total;
  /// Joint mass P(partisan observes b B-signals, outcome | tau), indexed by b.
  /// Empty when every judge is fair.
  std::vector<OutcomeDist> by_observation;
};

EnumerationResult enumerate_exact(const BoutConfig& config, const ResponseTable& response,
                                  const TrueSequence& tau);
OutcomeDist enumerate_exact(const BoutConfig& config, PartisanStrategy strategy,
                            const TrueSequence& tau);

inline constexpr int kMaxEnumeratedCells = 20;
inline constexpr int kMaxFlipPairCells = 25;

}  // namespace ringside
