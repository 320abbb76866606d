#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace simclean {

/// Thrown when a statistical or selection validation fails (CLI exit 3).
/// Malformed inputs and violated preconditions throw std::invalid_argument
/// instead (CLI exit 2).
class validation_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ChannelLabel : std::uint8_t { Correct, Incorrect };
enum class PairTag : std::uint8_t { Similar, Dissimilar };
enum class Verdict : std::uint8_t { Correct, Incorrect };

/// Ground-truth labels of an N-channel system; channel identity is the
/// position index.
struct ChannelLabeling {
  std::vector<ChannelLabel> labels;

  std::int64_t channels() const { return static_cast<std::int64_t>(labels.size()); }
  std::int64_t correct_count() const;
};

/// Labeling with the `correct` first channels Correct and the rest Incorrect.
ChannelLabeling canonical_labeling(std::int64_t channels, std::int64_t correct);

/// C(m,2); zero for m < 2.
constexpr std::int64_t pair_count(std::int64_t m) {
  return m < 2 ? 0 : m * (m - 1) / 2;
}

/// Flat index of pair (a,b), a < b, in lexicographic order over N channels.
constexpr std::int64_t pair_index(std::int64_t a, std::int64_t b, std::int64_t channels) {
  return a * (2 * channels - a - 1) / 2 + (b - a - 1);
}

/// Discharge-level sample space: N channels of which n are correct.
/// Q1 and the pair counts are always derived, never stored.
class CohortSpec {
 public:
  CohortSpec(std::int64_t channels, std::int64_t correct);

  std::int64_t channels() const { return channels_; }
  std::int64_t correct() const { return correct_; }

  double q1() const { return static_cast<double>(correct_) / static_cast<double>(channels_); }
  std::int64_t pairs_total() const { return pair_count(channels_); }
  std::int64_t pairs_similar() const { return pair_count(correct_); }
  std::int64_t pairs_dissimilar() const { return pairs_total() - pairs_similar(); }

  bool operator==(const CohortSpec&) const = default;

 private:
  std::int64_t channels_;
  std::int64_t correct_;
};

/// Unordered channel pair in canonical order (a < b). Similar iff both
/// endpoints are correct.
struct PairSample {
  std::int32_t a;
  std::int32_t b;
  PairTag tag;

  bool operator==(const PairSample&) const = default;
};

/// A similarity classifier summarized by its class recalls. A recall is
/// undefined (nullopt) when its pair class is empty.
struct OperatingPoint {
  std::optional<double> q2;  ///< recall of similar pairs
  std::optional<double> q3;  ///< recall of dissimilar pairs
};

/// Joint channel-level outcome probabilities over a randomly chosen channel.
struct ChannelOutcomeProbabilities {
  double p_rr = 0;  ///< correct judged correct
  double p_rw = 0;  ///< correct judged incorrect
  double p_ww = 0;  ///< incorrect judged incorrect
  double p_wr = 0;  ///< incorrect judged correct

  double sum() const { return p_rr + p_rw + p_ww + p_wr; }
};

enum class Measure { E1, E2, E3, E4 };

Measure parse_measure(const std::string& name);
std::string to_string(Measure m);

/// Task-preference measures; each undefined when its conditioning event has
/// probability zero.
struct PreferenceMeasures {
  std::optional<double> e1;  ///< recall of incorrect data
  std::optional<double> e2;  ///< precision of incorrect data
  std::optional<double> e3;  ///< recall of correct data
  std::optional<double> e4;  ///< precision of correct data

  const std::optional<double>& get(Measure m) const;
};

struct ChannelVerdicts {
  std::vector<Verdict> verdicts;

  std::int64_t channels() const { return static_cast<std::int64_t>(verdicts.size()); }
};

}  // namespace simclean
