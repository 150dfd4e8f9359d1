#pragma once

#include <string>
#include <vector>

#include "ringside/exact.hpp"
#include "ringside/types.hpp"

namespace ringside {

/// U = S * P(Blue wins) + G * P(Red wins) - E[backlash] for the sole
/// partisan who saw b B-signals and awards k rounds to Blue.
double expected_utility(int b, int k, const BoutConfig& config,
                        exact::FairCardBelief belief = exact::FairCardBelief::Independent);

/// Utility-maximising award; ties go to the smaller k.
PartisanStrategy best_response(int b, const BoutConfig& config,
                               exact::FairCardBelief belief = exact::FairCardBelief::Independent);

/// best_response for every possible observation b = 0..N.
ResponseTable best_response_table(const BoutConfig& config,
                                  exact::FairCardBelief belief = exact::FairCardBelief::Independent);

/// Expected utility per (observed b, awarded k); rows are b, columns k.
struct UtilityTable {
  std::vector<std::vector<double>> entries;

  double at(int b, int k) const { return entries.at(b).at(k); }
  int row_argmax(int b) const;
};

UtilityTable utility_table(const BoutConfig& config,
                           exact::FairCardBelief belief = exact::FairCardBelief::Independent);

enum class ThresholdMethod { ClosedForm, NumericBisection };

std::string_view to_string(ThresholdMethod method);

/// Favoritism at which the partisan is indifferent between fair scoring and
/// the best deviation, for one information set.
struct CriticalS {
  ScoringRule rule = ScoringRule::MajorityJudges;
  int info_set = 0;  // observed B-signal count
  double alpha = 0.0;
  double s_hat = 0.0;
  ThresholdMethod method = ThresholdMethod::ClosedForm;
  int deviation_k = -1;  // award that first beats fair play (numeric only)
};

/// Sorted signal label, e.g. info_set_label(1, 3) == "BRR".
std::string info_set_label(int b, int rounds);
int parse_info_set(std::string_view label);

/// Three rounds, three judges. Supported cells: majority judges at BRR and
/// RRR; majority rounds at BBR, BRR and RRR. Other cells throw ConfigError
/// because fair play is optimal there for every S.
CriticalS critical_s_closed_form(double alpha, ScoringRule rule, int info_set);

/// Bisection on S for the indifference between k = b and the best
/// deviation. Throws NumericError when no deviation ever pays.
CriticalS critical_s_numeric(double alpha, ScoringRule rule, int info_set, int rounds = 3,
                             int judges = 3, double tolerance = 1e-9);

/// P(Blue wins | b_true) when the partisan is forced to award k = 0..N.
std::vector<double> win_curve(const BoutConfig& config, int b_true,
                              exact::PartisanSignals signals = exact::PartisanSignals::Noisy);

}  // namespace ringside
