#include <catch_amalgamated.hpp>

#include "oracle.hpp"
#include "ringside/monte_carlo.hpp"
#include "ringside/strategy.hpp"

using namespace ringside;
using Catch::Approx;

namespace {

CampaignSpec benchmark_spec(ScoringRule rule, std::int64_t trials, unsigned workers) {
  CampaignSpec spec;
  spec.config = BoutConfig::make(12, 3, 0.1, 0.8, 1, rule);
  spec.trials_per_condition = trials;
  spec.master_seed = 7;
  spec.workers = workers;
  return spec;
}

}  // namespace

TEST_CASE("tallies do not depend on the worker count") {
  for (ScoringRule rule : {ScoringRule::MajorityJudges, ScoringRule::MajorityRounds}) {
    const TallyTable one = run_campaign(benchmark_spec(rule, 20000, 1));
    const TallyTable eight = run_campaign(benchmark_spec(rule, 20000, 8));
    const TallyTable three = run_campaign(benchmark_spec(rule, 20000, 3));
    CHECK(one == eight);
    CHECK(one == three);
  }
  CampaignSpec prior = benchmark_spec(ScoringRule::MajorityRounds, 50000, 1);
  prior.conditioning = Conditioning::BinomialPrior;
  CampaignSpec prior8 = prior;
  prior8.workers = 8;
  CHECK(run_campaign(prior) == run_campaign(prior8));
}

TEST_CASE("row tallies sum to the trial count") {
  const TallyTable t = run_campaign(benchmark_spec(ScoringRule::MajorityJudges, 5000, 2));
  REQUIRE(t.rows.size() == 13);
  for (const auto& r : t.rows) {
    CHECK(r.trials == 5000);
    CHECK(r.blue + r.red + r.draw == r.trials);
  }
  CHECK(t.total_trials() == 13 * 5000);

  CampaignSpec prior = benchmark_spec(ScoringRule::MajorityJudges, 30000, 2);
  prior.conditioning = Conditioning::BinomialPrior;
  const TallyTable p = run_campaign(prior);
  CHECK(p.total_trials() == 30000);
  for (const auto& r : p.rows) CHECK(r.blue + r.red + r.draw == r.trials);
}

TEST_CASE("different seeds give different tallies") {
  CampaignSpec a = benchmark_spec(ScoringRule::MajorityRounds, 2000, 1);
  CampaignSpec b = a;
  b.master_seed = 8;
  CHECK_FALSE(run_campaign(a) == run_campaign(b));
}

TEST_CASE("benchmark outcomes at an even true split") {
  // Values frozen from the exact engine.
  CampaignSpec mj = benchmark_spec(ScoringRule::MajorityJudges, 200000, 4);
  mj.only_b_true = 6;
  const TallyRow r = run_campaign(mj).row(6);
  CHECK(r.p_blue() == Approx(0.4699923154).margin(4 * r.standard_error(r.blue)));
  CHECK(r.p_red() == Approx(0.1121543420).margin(4 * r.standard_error(r.red)));

  CampaignSpec mr = benchmark_spec(ScoringRule::MajorityRounds, 200000, 4);
  mr.only_b_true = 6;
  const TallyRow s = run_campaign(mr).row(6);
  CHECK(s.p_blue() == Approx(0.1930860771).margin(4 * s.standard_error(s.blue)));
  CHECK(s.p_red() == Approx(0.1243080224).margin(4 * s.standard_error(s.red)));
}

TEST_CASE("cross-check against the exact engine flags nothing on the benchmark") {
  for (ScoringRule rule : {ScoringRule::MajorityJudges, ScoringRule::MajorityRounds}) {
    const CrossCheckReport rep = exact_cross_check(benchmark_spec(rule, 40000, 4));
    CHECK(rep.cells.size() == 13 * 3);
    CHECK(rep.flagged_count() <= 1);
  }
}

TEST_CASE("small bouts agree with brute-force enumeration") {
  for (ScoringRule rule : {ScoringRule::MajorityJudges, ScoringRule::MajorityRounds}) {
    CampaignSpec spec;
    spec.config = BoutConfig::make(3, 3, 0.1, 0.8, 1, rule);
    spec.trials_per_condition = 100000;
    spec.master_seed = 5;
    spec.workers = 2;
    const ResponseTable response = best_response_table(spec.config);
    const TallyTable t = run_campaign(spec, response);
    for (int bt = 0; bt <= 3; ++bt) {
      // Average the brute-force joint over every arrangement with bt Blue rounds.
      oracle::Dist want;
      int arrangements = 0;
      for (const auto& tau : oracle::all_sequences(3)) {
        if (oracle::blue_count(tau) != bt) continue;
        ++arrangements;
        for (int b = 0; b <= 3; ++b) {
          const auto joint =
              oracle::joint_given_tau(tau, 3, 0.1, response[b], rule == ScoringRule::MajorityRounds);
          want.blue += joint[b].blue;
          want.red += joint[b].red;
          want.draw += joint[b].draw;
        }
      }
      const TallyRow& r = t.row(bt);
      CHECK(r.p_blue() == Approx(want.blue / arrangements).margin(4 * r.standard_error(r.blue) + 1e-9));
      CHECK(r.p_red() == Approx(want.red / arrangements).margin(4 * r.standard_error(r.red) + 1e-9));
    }
  }
}

TEST_CASE("robbery statistics") {
  CampaignSpec fair;
  fair.config = BoutConfig::make(12, 3, 0.1, 0.0, 0, ScoringRule::MajorityJudges);
  fair.trials_per_condition = 200000;
  fair.conditioning = Conditioning::BinomialPrior;
  fair.workers = 2;
  const RobberyStats s = robbery_ratio(fair);
  CHECK(s.ratio == Approx(1.0).margin(0.2));

  CampaignSpec per_count = fair;
  per_count.conditioning = Conditioning::PerTrueCount;
  CHECK_THROWS_AS(robbery_ratio(per_count), ConfigError);
}

TEST_CASE("tiny campaigns still produce well-formed reports") {
  CampaignSpec spec = benchmark_spec(ScoringRule::MajorityJudges, 100, 1);
  const CrossCheckReport rep = exact_cross_check(spec);
  CHECK(rep.cells.size() == 39);
  for (const auto& c : rep.cells) {
    CHECK(c.simulated >= 0.0);
    CHECK(c.simulated <= 1.0);
    CHECK(c.standard_error >= 0.0);
  }
}
