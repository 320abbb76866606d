#pragma once

#include <array>
#include <cstdint>
#include <span>

#include "simclean/judging.hpp"
#include "simclean/types.hpp"

namespace simclean {

/// SplitMix64 generator. Per-trial streams are derived by hashing
/// (seed, trial index), so any partition of trials over workers replays the
/// identical draw sequence per trial.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t state) : state_(state) {}

  static SplitMix64 for_trial(std::uint64_t seed, std::uint64_t trial_index) {
    return SplitMix64(mix(seed + 0x9E3779B97F4A7C15ULL * (trial_index + 1)));
  }

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix(state_);
  }

  /// Uniform in [0,1) with 53 random bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform01() < p; }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

struct SimulationConfig {
  CohortSpec cohort;
  OperatingPoint op;
  JudgingRule rule;
  std::int64_t trials = 0;
  std::uint64_t seed = 0;
  std::uint64_t first_trial = 0;  ///< global index of the first trial (stream offset)
};

struct OutcomeCounts {
  std::int64_t rr = 0;
  std::int64_t rw = 0;
  std::int64_t ww = 0;
  std::int64_t wr = 0;

  std::int64_t total() const { return rr + rw + ww + wr; }
  OutcomeCounts& operator+=(const OutcomeCounts& other);
  bool operator==(const OutcomeCounts&) const = default;
};

/// Exact channel-outcome tallies of a run; estimates are count fractions over
/// m = trials * N channel observations.
struct SimulationEstimate {
  OutcomeCounts counts;
  std::int64_t channels = 0;
  std::int64_t trials = 0;

  std::int64_t observations() const { return trials * channels; }
  ChannelOutcomeProbabilities estimates() const;
  /// Normal-approximation standard errors in (rr, rw, ww, wr) order.
  std::array<double, 4> std_errors() const;

  /// Count-weighted merge of two runs over the same cohort (exact).
  SimulationEstimate merged_with(const SimulationEstimate& other) const;
};

/// Independently predicts each pair: a Similar pair is predicted Similar with
/// probability Q2, a Dissimilar pair Dissimilar with probability Q3. Draws
/// consume `rng` in canonical pair order.
PairPredictionSet synthesize_predictions(const CohortSpec& cohort, const OperatingPoint& op,
                                         SplitMix64& rng);

/// Allocation-free variant over a precomputed pair list.
void synthesize_predictions(std::span<const PairSample> pairs, const OperatingPoint& op,
                            SplitMix64& rng, PairPredictionSet& out);

/// Runs config.trials independent trials (synthesize, judge, tally) against
/// the canonical labeling. Bit-identical for a fixed config regardless of
/// worker count; workers <= 0 uses the hardware concurrency.
SimulationEstimate simulate(const SimulationConfig& config, int workers = 1);

/// Same, against an arbitrary truth labeling.
SimulationEstimate simulate_labeled(const ChannelLabeling& truth, const OperatingPoint& op,
                                    const JudgingRule& rule, std::int64_t trials,
                                    std::uint64_t seed, std::uint64_t first_trial = 0,
                                    int workers = 1);

}  // namespace simclean
