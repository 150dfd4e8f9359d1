#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ringside/types.hpp"

namespace ringside {

enum class Conditioning {
  /// Every b_true in 0..N gets trials_per_condition bouts with exactly that
  /// many truly-Blue rounds (uniformly arranged).
  PerTrueCount,
  /// Rounds are i.i.d. fair coins; bouts are tallied by their realised b_true.
  BinomialPrior,
};

struct CampaignSpec {
  BoutConfig config;
  std::int64_t trials_per_condition = 100000;
  std::uint64_t master_seed = 1;
  Conditioning conditioning = Conditioning::PerTrueCount;
  /// Restrict a PerTrueCount campaign to one b_true.
  std::optional<int> only_b_true;
  /// Worker threads; results do not depend on this.
  unsigned workers = 1;
};

struct TallyRow {
  int b_true = 0;
  std::int64_t trials = 0;
  std::int64_t blue = 0;
  std::int64_t red = 0;
  std::int64_t draw = 0;
  std::int64_t correct = 0;

  double p_blue() const { return ratio(blue); }
  double p_red() const { return ratio(red); }
  double p_draw() const { return ratio(draw); }
  double p_correct() const { return ratio(correct); }
  /// sqrt(p (1 - p) / n) for the empirical p of a count.
  double standard_error(std::int64_t count) const;

  TallyRow& operator+=(const TallyRow& other);
  bool operator==(const TallyRow&) const = default;

 private:
  double ratio(std::int64_t count) const {
    return trials ? static_cast<double>(count) / static_cast<double>(trials) : 0.0;
  }
};

struct TallyTable {
  std::vector<TallyRow> rows;  // one per b_true, ascending

  const TallyRow& row(int b_true) const;
  std::int64_t total_trials() const;
  bool operator==(const TallyTable&) const = default;
};

/// Simulates bouts: fair judges score their signals, the sole partisan (if
/// any) plays its best response to the observed B count. Bit-identical for
/// identical (spec, seed) regardless of `workers`.
TallyTable run_campaign(const CampaignSpec& spec);

/// Same as run_campaign but with an explicit partisan response table.
TallyTable run_campaign(const CampaignSpec& spec, const ResponseTable& response);

struct RobberyStats {
  double rate_blue = 0.0;  // robberies for Blue / all trials
  double rate_red = 0.0;
  double ratio = 0.0;      // +inf when no Red robbery was observed
  std::int64_t trials = 0;
  std::int64_t robberies_blue = 0;
  std::int64_t robberies_red = 0;
  std::string diagnostic;  // non-empty when the ratio is degenerate
};

RobberyStats robbery_stats(const TallyTable& tally, int rounds);

/// Runs a binomial-prior campaign and reports robbery rates and their ratio.
/// Throws ConfigError for a PerTrueCount spec.
RobberyStats robbery_ratio(const CampaignSpec& spec);

struct CrossCheckCell {
  int b_true = 0;
  Outcome outcome = Outcome::BlueWin;
  double simulated = 0.0;
  double exact = 0.0;
  double standard_error = 0.0;
  bool flagged = false;
};

struct CrossCheckReport {
  std::vector<CrossCheckCell> cells;
  double sigma_limit = 4.0;

  int flagged_count() const;
};

/// Compares every (b_true, outcome) cell of a tally with the exact engine,
/// flagging deviations beyond sigma_limit standard errors.
CrossCheckReport exact_cross_check(const CampaignSpec& spec, const TallyTable& tally,
                                   double sigma_limit = 4.0);
CrossCheckReport exact_cross_check(const CampaignSpec& spec, double sigma_limit = 4.0);

}  // namespace ringside
