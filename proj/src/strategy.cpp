#include "ringside/strategy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace ringside {

namespace {

// Utilities closer than this are treated as tied.
constexpr double kTieTolerance = 1e-13;

bool strictly_better(double candidate, double incumbent) {
  return candidate > incumbent + kTieTolerance * std::max(1.0, std::abs(incumbent));
}

void require_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 0.5)) throw ConfigError("alpha must lie in (0, 0.5)");
}

}  // namespace

double expected_utility(int b, int k, const BoutConfig& config, exact::FairCardBelief belief) {
  const JudgeProfile profile = config.partisan_profile();
  const OutcomeDist dist = exact::partisan_belief(b, k, config, belief);
  return profile.favoritism_blue * dist.p_blue + profile.favoritism_red * dist.p_red -
         exact::expected_backlash(b, k, config);
}

PartisanStrategy best_response(int b, const BoutConfig& config, exact::FairCardBelief belief) {
  if (config.partisan_profile().favoritism_red != 0.0) {
    throw ConfigError("best responses are only modelled for Blue partisans (G = 0)");
  }
  int best_k = 0;
  double best_u = expected_utility(b, 0, config, belief);
  for (int k = 1; k <= config.rounds; ++k) {
    const double u = expected_utility(b, k, config, belief);
    if (strictly_better(u, best_u)) {
      best_u = u;
      best_k = k;
    }
  }
  return {best_k};
}

ResponseTable best_response_table(const BoutConfig& config, exact::FairCardBelief belief) {
  ResponseTable table(static_cast<std::size_t>(config.rounds) + 1);
  for (int b = 0; b <= config.rounds; ++b) table[b] = best_response(b, config, belief).k_awarded;
  return table;
}

int UtilityTable::row_argmax(int b) const {
  const auto& row = entries.at(b);
  int best = 0;
  for (int k = 1; k < static_cast<int>(row.size()); ++k) {
    if (strictly_better(row[k], row[best])) best = k;
  }
  return best;
}

UtilityTable utility_table(const BoutConfig& config, exact::FairCardBelief belief) {
  UtilityTable table;
  const int n = config.rounds;
  table.entries.assign(static_cast<std::size_t>(n) + 1,
                       std::vector<double>(static_cast<std::size_t>(n) + 1));
  for (int b = 0; b <= n; ++b) {
    for (int k = 0; k <= n; ++k) table.entries[b][k] = expected_utility(b, k, config, belief);
  }
  return table;
}

std::string_view to_string(ThresholdMethod method) {
  return method == ThresholdMethod::ClosedForm ? "closed-form" : "numeric";
}

std::string info_set_label(int b, int rounds) {
  if (b < 0 || b > rounds) throw ConfigError("info set must lie in [0, rounds]");
  return std::string(static_cast<std::size_t>(b), 'B') +
         std::string(static_cast<std::size_t>(rounds - b), 'R');
}

int parse_info_set(std::string_view label) {
  return TrueSequence::parse(label).blue_count();
}

CriticalS critical_s_closed_form(double alpha, ScoringRule rule, int info_set) {
  require_alpha(alpha);
  const double a = alpha;
  const double a2 = a * a;
  const double a3 = a2 * a;
  const double a4 = a3 * a;
  const double a5 = a4 * a;
  const double gap = 1.0 - 2.0 * a;
  CriticalS out{rule, info_set, alpha, 0.0, ThresholdMethod::ClosedForm, -1};

  if (rule == ScoringRule::MajorityJudges) {
    if (info_set == 1) {
      // (1 - 2a) / (6 C (1 - C)) with C|BRR expanded.
      const double p = 0.5 * a4 - a3 + 0.875 * a2 - 0.375 * a + 0.125;
      out.s_hat = gap / (192.0 * a * (1.0 - a) * (32.0 * a * (a - 1.0) * p + 1.0) * p);
      out.deviation_k = 2;
      return out;
    }
    if (info_set == 0) {
      // (1 - 2a) / (3 C (1 - C)) with C|RRR expanded.
      const double q = a2 - a + 0.75;
      const double w = a2 * (1.0 - a) * (1.0 - a);
      out.s_hat = gap / (48.0 * w * (1.0 - 16.0 * w * q) * q);
      out.deviation_k = 2;
      return out;
    }
  } else {
    if (info_set == 2) {
      out.s_hat = gap / (12.0 * a2 * (a4 - 3.0 * a3 + 4.0 * a2 - 3.0 * a + 1.0));
      out.deviation_k = 3;
      return out;
    }
    if (info_set == 1) {
      out.s_hat =
          gap / (6.0 * a * (-2.0 * a5 + 6.0 * a4 - 8.0 * a3 + 6.0 * a2 - 3.0 * a + 1.0));
      out.deviation_k = 2;
      return out;
    }
    if (info_set == 0) {
      // Whichever deviation (to BBB or to BBR) pays first binds.
      const double to_bbb =
          gap / (4.0 * a2 * (13.0 * a4 - 39.0 * a3 + 45.0 * a2 - 25.0 * a + 6.0));
      const double to_bbr = gap / (6.0 * a2 * (4.0 * a4 - 12.0 * a3 + 15.0 * a2 - 10.0 * a + 3.0));
      out.s_hat = std::min(to_bbb, to_bbr);
      out.deviation_k = to_bbb <= to_bbr ? 3 : 2;
      return out;
    }
  }
  if (info_set < 0 || info_set > 3) {
    throw ConfigError("closed-form thresholds cover three-round bouts only (info set 0..3)");
  }
  throw ConfigError("fair play optimal at " + info_set_label(info_set, 3) + "; no threshold");
}

CriticalS critical_s_numeric(double alpha, ScoringRule rule, int info_set, int rounds,
                             int judges, double tolerance) {
  require_alpha(alpha);
  const BoutConfig config = BoutConfig::make(rounds, judges, alpha, 1.0, 1, rule);
  if (info_set < 0 || info_set > rounds) throw ConfigError("info set must lie in [0, rounds]");

  // Utility is affine in S: U_k(S) = S * p_k - L_k.
  std::vector<double> win(static_cast<std::size_t>(rounds) + 1);
  std::vector<double> loss(static_cast<std::size_t>(rounds) + 1);
  for (int k = 0; k <= rounds; ++k) {
    win[k] = exact::partisan_belief(info_set, k, config).p_blue;
    loss[k] = exact::expected_backlash(info_set, k, config);
  }
  const auto advantage = [&](double s, int* arg) {
    double best = -std::numeric_limits<double>::infinity();
    for (int k = 0; k <= rounds; ++k) {
      if (k == info_set) continue;
      const double u = s * win[k] - loss[k];
      if (u > best) {
        best = u;
        if (arg) *arg = k;
      }
    }
    return best - (s * win[info_set] - loss[info_set]);
  };

  double lo = 0.0;
  double hi = 1.0;
  while (advantage(hi, nullptr) <= 0.0) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e12) {
      throw NumericError("no sign change in [0, 1e12]: fair play optimal at " +
                         info_set_label(info_set, rounds) + " for " +
                         std::string(to_string(rule)));
    }
  }
  while (hi - lo > tolerance) {
    const double mid = 0.5 * (lo + hi);
    if (advantage(mid, nullptr) > 0.0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  CriticalS out{rule, info_set, alpha, 0.5 * (lo + hi), ThresholdMethod::NumericBisection, -1};
  advantage(hi, &out.deviation_k);
  return out;
}

std::vector<double> win_curve(const BoutConfig& config, int b_true,
                              exact::PartisanSignals signals) {
  std::vector<double> curve(static_cast<std::size_t>(config.rounds) + 1);
  for (int k = 0; k <= config.rounds; ++k) {
    curve[k] =
        exact::outcome_given_true(config, b_true, forced_response(config.rounds, k), signals)
            .p_blue;
  }
  return curve;
}

}  // namespace ringside
