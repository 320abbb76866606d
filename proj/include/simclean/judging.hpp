#pragma once

#include <cstdint>
#include <span>
#include <tuple>
#include <vector>

#include "simclean/types.hpp"

namespace simclean {

/// One prediction per unordered channel pair, complete over all C(N,2) pairs.
/// Stored flat in canonical lexicographic order.
class PairPredictionSet {
 public:
  /// Complete set with every pair predicted `fill`.
  static PairPredictionSet filled(std::int64_t channels, PairTag fill = PairTag::Dissimilar);

  /// Builds from (a,b,prediction) entries; throws std::invalid_argument on
  /// out-of-range indices, duplicates, or missing pairs (the message names
  /// the offending pair).
  static PairPredictionSet from_entries(
      std::int64_t channels,
      std::span<const std::tuple<std::int32_t, std::int32_t, PairTag>> entries);

  std::int64_t channels() const { return channels_; }
  std::int64_t pair_count() const { return static_cast<std::int64_t>(tags_.size()); }

  PairTag at(std::int64_t a, std::int64_t b) const;
  void set(std::int64_t a, std::int64_t b, PairTag tag);

  std::span<const PairTag> flat() const { return tags_; }
  std::span<PairTag> flat() { return tags_; }

 private:
  explicit PairPredictionSet(std::int64_t channels);

  std::int64_t channels_;
  std::vector<PairTag> tags_;
};

/// Absolute rule: a channel is judged correct iff it appears in at least one
/// pair predicted Similar. Threshold rule: a channel is judged incorrect iff
/// it is predicted Dissimilar from at least a theta fraction of the other
/// N-1 channels (inclusive comparison); otherwise correct.
///
/// theta is held as an exact decimal fraction (threshold(0.9) means 9/10, not
/// the nearest binary double), so the comparison never floating-rounds and
/// threshold(1) coincides with the absolute rule on every input.
class JudgingRule {
 public:
  static JudgingRule absolute() { return JudgingRule(true, 1, 1); }
  static JudgingRule threshold(double theta);
  static JudgingRule threshold(std::int64_t numerator, std::int64_t denominator);

  bool is_absolute() const { return absolute_; }
  double theta() const {
    return static_cast<double>(theta_num_) / static_cast<double>(theta_den_);
  }
  std::int64_t theta_numerator() const { return theta_num_; }
  std::int64_t theta_denominator() const { return theta_den_; }

  /// Exact test of dissimilar_count >= theta * others.
  bool meets_threshold(std::int64_t dissimilar_count, std::int64_t others) const;

 private:
  JudgingRule(bool absolute, std::int64_t num, std::int64_t den)
      : absolute_(absolute), theta_num_(num), theta_den_(den) {}

  bool absolute_;
  std::int64_t theta_num_;
  std::int64_t theta_den_;
};

/// Parses "absolute" or "threshold:<theta>".
JudgingRule parse_rule(const std::string& text);
std::string to_string(const JudgingRule& rule);

ChannelVerdicts judge(const PairPredictionSet& predictions, const JudgingRule& rule);

/// Allocation-free variant; `out` is resized to N.
void judge(const PairPredictionSet& predictions, const JudgingRule& rule,
           std::vector<Verdict>& out);

/// Empirical joint (truth, verdict) fractions over all N channels.
ChannelOutcomeProbabilities channel_confusion(const ChannelVerdicts& verdicts,
                                              const ChannelLabeling& truth);

}  // namespace simclean
