// Acceptance checks. Each criterion prints one PASS/FAIL line, preceded by
// detail lines starting with "  ". Run all criteria, or one via --criterion N.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "oracle.hpp"
#include "ringside/core_model.hpp"
#include "ringside/exact.hpp"
#include "ringside/monte_carlo.hpp"
#include "ringside/strategy.hpp"

using namespace ringside;

namespace {

std::string g_cli_path;

struct Report {
  bool ok = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond) ok = false;
    detail << "  " << (cond ? "ok   " : "FAIL ") << what << '\n';
  }
};

std::string fmt(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

bool within(double got, double want, double tol) { return std::fabs(got - want) <= tol; }

std::vector<double> alpha_grid() {
  std::vector<double> g;
  for (int i = 1; i <= 49; ++i) g.push_back(i / 100.0);
  return g;
}

BoutConfig benchmark(ScoringRule rule, int partisans = 1) {
  return BoutConfig::make(12, 3, 0.1, 0.8, partisans, rule);
}

const char* rule_name(ScoringRule r) {
  return r == ScoringRule::MajorityJudges ? "majority-judges" : "majority-rounds";
}

// 1. Closed-form thresholds at alpha = 0.1.
void criterion_1(Report& r) {
  const double brr = critical_s_closed_form(0.1, ScoringRule::MajorityJudges, 1).s_hat;
  const double rrr = critical_s_closed_form(0.1, ScoringRule::MajorityJudges, 0).s_hat;
  r.require(within(brr, 1.09, 0.01), "majority-judges BRR s_hat " + fmt(brr) + " vs 1.09 +/- 0.01");
  r.require(within(rrr, 12.14, 0.01),
            "majority-judges RRR s_hat " + fmt(rrr) + " vs 12.14 +/- 0.01");
  const double brr05 = critical_s_closed_form(0.05, ScoringRule::MajorityJudges, 1).s_hat;
  const double rrr05 = critical_s_closed_form(0.05, ScoringRule::MajorityJudges, 0).s_hat;
  r.detail << "  info same closed forms at alpha 0.05: BRR " << fmt(brr05) << ", RRR "
           << fmt(rrr05) << '\n';
}

// 2. Majority rounds needs more favoritism than majority judges at BRR and RRR.
void criterion_2(Report& r) {
  int violations = 0;
  int checked = 0;
  for (double a : alpha_grid()) {
    for (int b : {1, 0}) {
      const double mj_cf = critical_s_closed_form(a, ScoringRule::MajorityJudges, b).s_hat;
      const double mr_cf = critical_s_closed_form(a, ScoringRule::MajorityRounds, b).s_hat;
      const double mj_nm = critical_s_numeric(a, ScoringRule::MajorityJudges, b).s_hat;
      const double mr_nm = critical_s_numeric(a, ScoringRule::MajorityRounds, b).s_hat;
      checked += 2;
      if (!(mr_cf > mj_cf)) {
        ++violations;
        r.detail << "  closed form violated at alpha " << a << " " << info_set_label(b, 3) << '\n';
      }
      if (!(mr_nm > mj_nm)) {
        ++violations;
        r.detail << "  bisection violated at alpha " << a << " " << info_set_label(b, 3) << '\n';
      }
    }
  }
  r.require(violations == 0, std::to_string(checked - violations) + "/" +
                                 std::to_string(checked) + " grid comparisons hold");
}

// 3. Exact engine equals exhaustive enumeration at N = 3 and N = 4.
void criterion_3(Report& r) {
  for (int n : {3, 4}) {
    for (ScoringRule rule : {ScoringRule::MajorityJudges, ScoringRule::MajorityRounds}) {
      const bool mr = rule == ScoringRule::MajorityRounds;
      const BoutConfig c = BoutConfig::make(n, 3, 0.1, 0.8, 1, rule);
      double worst_truth = 0.0;
      double worst_belief = 0.0;
      for (int k = 0; k <= n; ++k) {
        // Conditioned on the truth, split by what the partisan observed.
        for (const auto& tau : oracle::all_sequences(n)) {
          const auto got =
              exact::outcome_given_true_by_observation(c, oracle::blue_count(tau),
                                                       forced_response(n, k));
          const auto want = oracle::joint_given_tau(tau, 3, 0.1, k, mr);
          for (int b = 0; b <= n; ++b) {
            worst_truth = std::max({worst_truth, std::fabs(got[b].p_blue - want[b].blue),
                                    std::fabs(got[b].p_red - want[b].red),
                                    std::fabs(got[b].p_draw - want[b].draw)});
          }
        }
        // Conditioned on the partisan's observation.
        for (int b = 0; b <= n; ++b) {
          const OutcomeDist got =
              mr ? exact::bout_dist_majority_rounds(exact::canonical_counts(b, k, n), c)
                 : exact::bout_dist_majority_judges(b, k, c, exact::FairCardBelief::Exact);
          const auto want = oracle::given_observation(n, 3, 0.1, b, k, mr);
          worst_belief = std::max({worst_belief, std::fabs(got.p_blue - want.blue),
                                   std::fabs(got.p_red - want.red),
                                   std::fabs(got.p_draw - want.draw)});
        }
      }
      std::ostringstream label;
      label << "N=" << n << " " << rule_name(rule);
      r.require(worst_truth <= 1e-12, label.str() + " given truth, max diff " +
                                          std::to_string(worst_truth));
      r.require(worst_belief <= 1e-12, label.str() + " given observation, max diff " +
                                           std::to_string(worst_belief));
    }
  }
}

// 4. Closed form and bisection agree on the grid.
void criterion_4(Report& r) {
  struct Cell {
    ScoringRule rule;
    int b;
  };
  const Cell cells[] = {{ScoringRule::MajorityJudges, 1},
                        {ScoringRule::MajorityJudges, 0},
                        {ScoringRule::MajorityRounds, 2},
                        {ScoringRule::MajorityRounds, 1},
                        {ScoringRule::MajorityRounds, 0}};
  double worst = 0.0;
  for (double a : alpha_grid()) {
    for (const auto& cell : cells) {
      const double cf = critical_s_closed_form(a, cell.rule, cell.b).s_hat;
      const double nm = critical_s_numeric(a, cell.rule, cell.b).s_hat;
      worst = std::max(worst, std::fabs(cf - nm));
    }
  }
  r.require(worst <= 1e-6, "max |closed form - bisection| " + std::to_string(worst));
}

// 5. Benchmark outcome probabilities at b_true = 6.
void criterion_5(Report& r) {
  struct Target {
    ScoringRule rule;
    double blue;
    double red;
  };
  const Target targets[] = {{ScoringRule::MajorityJudges, 0.470, 0.112},
                            {ScoringRule::MajorityRounds, 0.134, 0.193}};
  for (const auto& t : targets) {
    const BoutConfig c = benchmark(t.rule);
    const OutcomeDist d = exact::outcome_given_true(c, 6, best_response_table(c));
    r.require(within(d.p_blue, t.blue, 0.010),
              std::string(rule_name(t.rule)) + " exact p_blue " + fmt(d.p_blue) + " vs " + fmt(t.blue, 3));
    r.require(within(d.p_red, t.red, 0.010),
              std::string(rule_name(t.rule)) + " exact p_red " + fmt(d.p_red) + " vs " + fmt(t.red, 3));

    CampaignSpec spec;
    spec.config = c;
    spec.trials_per_condition = 1000000;
    spec.master_seed = 20240601;
    spec.only_b_true = 6;
    spec.workers = 4;
    const TallyRow row = run_campaign(spec).row(6);
    r.require(within(row.p_blue(), t.blue, 0.010),
              std::string(rule_name(t.rule)) + " simulated p_blue " + fmt(row.p_blue()) + " vs " +
                  fmt(t.blue, 3) + " (1e6 trials)");
    r.require(within(row.p_red(), t.red, 0.010),
              std::string(rule_name(t.rule)) + " simulated p_red " + fmt(row.p_red()) + " vs " +
                  fmt(t.red, 3) + " (1e6 trials)");
  }
}

// 6. Robbery ratios under the binomial prior.
void criterion_6(Report& r) {
  struct Target {
    ScoringRule rule;
    double ratio;
  };
  const Target targets[] = {{ScoringRule::MajorityJudges, 12.5},
                            {ScoringRule::MajorityRounds, 1.99}};
  for (const auto& t : targets) {
    const BoutConfig c = benchmark(t.rule);
    const exact::RobberyRates rates = exact::robbery_rates(c, best_response_table(c));
    const double ratio = rates.ratio();
    r.require(std::fabs(ratio - t.ratio) <= 0.10 * t.ratio,
              std::string(rule_name(t.rule)) + " exact ratio " + fmt(ratio, 4) + " vs " +
                  fmt(t.ratio, 2) + " +/- 10%");

    CampaignSpec spec;
    spec.config = c;
    spec.trials_per_condition = 2000000;
    spec.master_seed = 99;
    spec.conditioning = Conditioning::BinomialPrior;
    spec.workers = 4;
    const RobberyStats s = robbery_ratio(spec);
    // Delta-method standard error of a ratio of two multinomial cell rates.
    const double pb = rates.rate_blue;
    const double pr = rates.rate_red;
    const double n = static_cast<double>(s.trials);
    const double se = ratio * std::sqrt(((1 - pb) / pb + (1 - pr) / pr + 2.0) / n);
    r.require(std::fabs(s.ratio - ratio) <= 4 * se,
              std::string(rule_name(t.rule)) + " simulated ratio " + fmt(s.ratio, 4) +
                  " within 4 SE (SE " + fmt(se, 4) + ") of exact");
  }
}

// 7. Result-flipping pairs.
void criterion_7(Report& r) {
  const TrueSequence bbr = TrueSequence::parse("BBR");
  const int mr = count_result_flipping_pairs(bbr, 3, ScoringRule::MajorityRounds);
  const int mj = count_result_flipping_pairs(bbr, 3, ScoringRule::MajorityJudges);
  r.require(mr == 6, "majority-rounds pairs " + std::to_string(mr) + " vs 6");
  r.require(mj == 12, "majority-judges pairs " + std::to_string(mj) + " vs 12");
}

// 8. With every judge fair, majority rounds is at least as accurate.
void criterion_8(Report& r) {
  // Three rounds: brute force.
  bool small_ok = true;
  for (int bt = 0; bt <= 3; ++bt) {
    double correct[2] = {0.0, 0.0};
    int count = 0;
    for (const auto& tau : oracle::all_sequences(3)) {
      if (oracle::blue_count(tau) != bt) continue;
      ++count;
      for (int m = 0; m < 2; ++m) {
        const oracle::Dist d = oracle::sum(oracle::joint_given_tau(tau, 3, 0.1, -1, m == 1));
        correct[m] += bt >= 2 ? d.blue : d.red;
      }
    }
    const double mj = correct[0] / count;
    const double mr = correct[1] / count;
    r.detail << "  N=3 b_true=" << bt << " correct: majority-judges " << fmt(mj)
             << ", majority-rounds " << fmt(mr) << '\n';
    if (!(mr >= mj - 1e-12)) small_ok = false;
  }
  r.require(small_ok, "N=3 enumeration: majority rounds >= majority judges at every b_true");

  bool big_ok = true;
  for (int bt = 0; bt <= 12; ++bt) {
    const auto pj = exact::correct_probability(
        exact::outcome_given_true(benchmark(ScoringRule::MajorityJudges, 0), bt, fair_response(12)),
        bt, 12);
    const auto pr = exact::correct_probability(
        exact::outcome_given_true(benchmark(ScoringRule::MajorityRounds, 0), bt, fair_response(12)),
        bt, 12);
    r.detail << "  N=12 b_true=" << bt << " correct: majority-judges " << fmt(pj)
             << ", majority-rounds " << fmt(pr) << '\n';
    if (!(pr >= pj - 1e-12)) big_ok = false;
  }
  r.require(big_ok, "N=12 exact engine: majority rounds >= majority judges at every b_true");
}

// 9. Win curve shapes.
void criterion_9(Report& r) {
  const auto mj = win_curve(benchmark(ScoringRule::MajorityJudges), 6);
  bool jump_only_at_7 = mj.size() == 13;
  for (int k = 1; k <= 12 && jump_only_at_7; ++k) {
    jump_only_at_7 = k == 7 ? mj[7] > mj[6] : mj[k] == mj[k - 1];
  }
  r.require(jump_only_at_7, "majority-judges curve constant except a jump at k=7 (" +
                                fmt(mj[6]) + " -> " + fmt(mj[7]) + ")");
  const auto mr = win_curve(benchmark(ScoringRule::MajorityRounds), 6);
  bool increasing = mr.size() == 13;
  for (int k = 1; k <= 12 && increasing; ++k) increasing = mr[k] > mr[k - 1];
  r.require(increasing, "majority-rounds curve strictly increasing (" + fmt(mr[0]) + " .. " +
                            fmt(mr[12]) + ")");
}

std::string capture(const std::string& command) {
  std::string out;
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(command.c_str(), "r"), pclose);
  if (!pipe) return out;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe.get())) > 0) out.append(buf.data(), n);
  return out;
}

// 10. Byte-identical simulate output with 1 and 8 workers.
void criterion_10(Report& r) {
  if (g_cli_path.empty()) {
    r.require(false, "--cli <path to ringside> not given");
    return;
  }
  const std::string args = " simulate --preset benchmark --trials 100000 --seed 7";
  const std::string one = capture("RINGSIDE_THREADS=1 '" + g_cli_path + "'" + args);
  const std::string eight = capture("RINGSIDE_THREADS=8 '" + g_cli_path + "'" + args);
  r.require(!one.empty(), "1-worker run produced " + std::to_string(one.size()) + " bytes");
  r.require(one == eight, "1-worker and 8-worker CSV byte-identical");
}

struct Criterion {
  int id;
  const char* title;
  std::function<void(Report&)> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = {
      {1, "closed-form thresholds at alpha 0.1", criterion_1},
      {2, "majority-rounds threshold exceeds majority-judges on the alpha grid", criterion_2},
      {3, "exact engine equals exhaustive enumeration (N=3,4; J=3)", criterion_3},
      {4, "closed form vs bisection within 1e-6", criterion_4},
      {5, "benchmark outcome reproduction at b_true=6", criterion_5},
      {6, "robbery ratios under the binomial prior", criterion_6},
      {7, "result-flipping pair counts", criterion_7},
      {8, "all-fair accuracy ordering", criterion_8},
      {9, "win curve shapes", criterion_9},
      {10, "determinism across worker counts", criterion_10},
  };
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else if (std::strcmp(argv[i], "--cli") == 0 && i + 1 < argc) {
      g_cli_path = argv[++i];
    } else {
      std::cerr << "usage: ringside_acceptance [--criterion N] [--cli PATH]\n";
      return 2;
    }
  }
  int failures = 0;
  for (const auto& c : criteria()) {
    if (only && c.id != only) continue;
    Report rep;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(rep);
    } catch (const std::exception& e) {
      rep.require(false, std::string("exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << rep.detail.str();
    std::cout << (rep.ok ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.title << " ("
              << fmt(secs, 2) << " s)\n";
    if (!rep.ok) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
