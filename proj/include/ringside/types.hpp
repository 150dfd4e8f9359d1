#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ringside {

/// Invalid parameters or inputs. Maps to CLI exit code 2.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical procedure failed to produce a result (e.g. no bracketing
/// interval). Maps to CLI exit code 3.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Corner : std::uint8_t { B, R };

constexpr Corner flip(Corner c) { return c == Corner::B ? Corner::R : Corner::B; }
constexpr char to_char(Corner c) { return c == Corner::B ? 'B' : 'R'; }

enum class Outcome : std::uint8_t { BlueWin, RedWin, Draw };

/// Verdict of a single judge's scorecard.
enum class CardResult : std::uint8_t { Blue, Red, Tie };

enum class ScoringRule : std::uint8_t { MajorityJudges, MajorityRounds };

std::string_view to_string(ScoringRule rule);
std::string_view to_string(Outcome outcome);
ScoringRule parse_rule(std::string_view name);

/// Judge preferences: utility S when Blue wins, G when Red wins, minus backlash.
struct JudgeProfile {
  double favoritism_blue = 0.0;  // S
  double favoritism_red = 0.0;   // G

  bool is_fair() const { return favoritism_blue == 0.0 && favoritism_red == 0.0; }
};

/// Full parameterisation of a judged bout.
struct BoutConfig {
  int rounds = 12;
  int judges = 3;
  double alpha = 0.1;
  std::vector<JudgeProfile> profiles = std::vector<JudgeProfile>(3);
  ScoringRule rule = ScoringRule::MajorityJudges;

  /// Builds a validated config where judges [0, partisan_count) favour Blue
  /// with utility `favoritism` and the rest are fair.
  static BoutConfig make(int rounds, int judges, double alpha, double favoritism,
                         int partisan_count, ScoringRule rule);

  /// Throws ConfigError naming the first violated invariant.
  void validate() const;

  std::vector<int> partisan_indices() const;

  /// Index of the single partisan judge, nullopt when every judge is fair.
  /// Throws ConfigError if more than one judge is partisan.
  std::optional<int> sole_partisan() const;

  /// Profile of the sole partisan, or a fair profile when there is none.
  JudgeProfile partisan_profile() const;

  BoutConfig with_rule(ScoringRule r) const {
    BoutConfig c = *this;
    c.rule = r;
    return c;
  }
  BoutConfig with_alpha(double a) const {
    BoutConfig c = *this;
    c.alpha = a;
    return c;
  }
};

struct TrueSequence {
  std::vector<Corner> rounds;

  int size() const { return static_cast<int>(rounds.size()); }
  int blue_count() const;
  static TrueSequence parse(std::string_view letters);
  std::string str() const;
};

/// N x J matrix of corners, row-major (one row per round). Used for both
/// signals x and awarded scores s.
class CornerMatrix {
 public:
  CornerMatrix() = default;
  CornerMatrix(int rounds, int judges, Corner fill = Corner::B)
      : rounds_(rounds), judges_(judges),
        entries_(static_cast<std::size_t>(rounds) * judges, fill) {}

  int rounds() const { return rounds_; }
  int judges() const { return judges_; }

  Corner& at(int round, int judge) { return entries_[index(round, judge)]; }
  Corner at(int round, int judge) const { return entries_[index(round, judge)]; }

  /// Votes of every judge in one round.
  std::span<const Corner> round(int t) const {
    return {entries_.data() + static_cast<std::size_t>(t) * judges_,
            static_cast<std::size_t>(judges_)};
  }

  /// One judge's scorecard (a column), copied out.
  std::vector<Corner> card(int judge) const;
  void set_card(int judge, std::span<const Corner> card);

 private:
  std::size_t index(int round, int judge) const {
    return static_cast<std::size_t>(round) * judges_ + judge;
  }

  int rounds_ = 0;
  int judges_ = 0;
  std::vector<Corner> entries_;
};

using SignalMatrix = CornerMatrix;
using ScorecardSet = CornerMatrix;

struct OutcomeDist {
  double p_blue = 0.0;
  double p_red = 0.0;
  double p_draw = 0.0;

  double total() const { return p_blue + p_red + p_draw; }
  double probability(Outcome o) const;
  OutcomeDist& operator+=(const OutcomeDist& other);
  OutcomeDist scaled(double w) const { return {p_blue * w, p_red * w, p_draw * w}; }
};

/// Number of rounds the partisan awards to Blue. The canonical flip policy
/// (see award_canonical) decides which rounds.
struct PartisanStrategy {
  int k_awarded = 0;
};

/// Maps the partisan's observed count of B signals (index) to k_awarded.
using ResponseTable = std::vector<int>;

ResponseTable fair_response(int rounds);
ResponseTable forced_response(int rounds, int k);

/// Verdict implied by the true round count: BlueWin if Blue truly won a
/// strict majority, RedWin symmetric, Draw on an even split.
Outcome truth_verdict(int blue_rounds, int rounds);

}  // namespace ringside
