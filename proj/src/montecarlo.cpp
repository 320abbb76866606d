#include "simclean/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "simclean/sample_space.hpp"

namespace simclean {

namespace {

constexpr std::int64_t kTrialsPerBlock = 16384;  // fixed, so results do not depend on workers

struct PairProbabilities {
  double predict_similar_given_similar;      // Q2
  double predict_dissimilar_given_dissimilar;  // Q3
};

PairProbabilities checked_probabilities(std::span<const PairSample> pairs,
                                        const OperatingPoint& op) {
  bool has_similar = false;
  bool has_dissimilar = false;
  for (const PairSample& pair : pairs) {
    (pair.tag == PairTag::Similar ? has_similar : has_dissimilar) = true;
  }
  PairProbabilities probs{1.0, 1.0};
  if (has_similar) {
    if (!op.q2 || std::isnan(*op.q2) || *op.q2 < 0.0 || *op.q2 > 1.0) {
      throw std::invalid_argument("synthesize_predictions: Q2 must be defined in [0,1] "
                                  "when similar pairs exist");
    }
    probs.predict_similar_given_similar = *op.q2;
  }
  if (has_dissimilar) {
    if (!op.q3 || std::isnan(*op.q3) || *op.q3 < 0.0 || *op.q3 > 1.0) {
      throw std::invalid_argument("synthesize_predictions: Q3 must be defined in [0,1] "
                                  "when dissimilar pairs exist");
    }
    probs.predict_dissimilar_given_dissimilar = *op.q3;
  }
  return probs;
}

void synthesize_checked(std::span<const PairSample> pairs, const PairProbabilities& probs,
                        SplitMix64& rng, PairPredictionSet& out) {
  auto tags = out.flat();
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (pairs[i].tag == PairTag::Similar) {
      tags[i] = rng.bernoulli(probs.predict_similar_given_similar) ? PairTag::Similar
                                                                   : PairTag::Dissimilar;
    } else {
      tags[i] = rng.bernoulli(probs.predict_dissimilar_given_dissimilar)
                    ? PairTag::Dissimilar
                    : PairTag::Similar;
    }
  }
}

}  // namespace

OutcomeCounts& OutcomeCounts::operator+=(const OutcomeCounts& other) {
  rr += other.rr;
  rw += other.rw;
  ww += other.ww;
  wr += other.wr;
  return *this;
}

ChannelOutcomeProbabilities SimulationEstimate::estimates() const {
  const auto m = static_cast<double>(observations());
  return ChannelOutcomeProbabilities{static_cast<double>(counts.rr) / m,
                                     static_cast<double>(counts.rw) / m,
                                     static_cast<double>(counts.ww) / m,
                                     static_cast<double>(counts.wr) / m};
}

std::array<double, 4> SimulationEstimate::std_errors() const {
  const auto m = static_cast<double>(observations());
  const ChannelOutcomeProbabilities p = estimates();
  const auto se = [m](double f) { return std::sqrt(f * (1.0 - f) / m); };
  return {se(p.p_rr), se(p.p_rw), se(p.p_ww), se(p.p_wr)};
}

SimulationEstimate SimulationEstimate::merged_with(const SimulationEstimate& other) const {
  if (channels != other.channels) {
    throw std::invalid_argument("merged_with: channel counts differ");
  }
  SimulationEstimate merged = *this;
  merged.counts += other.counts;
  merged.trials += other.trials;
  return merged;
}

void synthesize_predictions(std::span<const PairSample> pairs, const OperatingPoint& op,
                            SplitMix64& rng, PairPredictionSet& out) {
  if (static_cast<std::int64_t>(pairs.size()) != out.pair_count()) {
    throw std::invalid_argument("synthesize_predictions: pair list does not match output set");
  }
  synthesize_checked(pairs, checked_probabilities(pairs, op), rng, out);
}

PairPredictionSet synthesize_predictions(const CohortSpec& cohort, const OperatingPoint& op,
                                         SplitMix64& rng) {
  const ChannelLabeling labeling = canonical_labeling(cohort.channels(), cohort.correct());
  const std::vector<PairSample> pairs = enumerate_pairs(labeling);
  PairPredictionSet out = PairPredictionSet::filled(cohort.channels());
  synthesize_predictions(pairs, op, rng, out);
  return out;
}

SimulationEstimate simulate_labeled(const ChannelLabeling& truth, const OperatingPoint& op,
                                    const JudgingRule& rule, std::int64_t trials,
                                    std::uint64_t seed, std::uint64_t first_trial,
                                    int workers) {
  if (trials < 1) {
    throw std::invalid_argument("simulate: trials must be >= 1, got " +
                                std::to_string(trials));
  }
  const std::vector<PairSample> pairs = enumerate_pairs(truth);
  const PairProbabilities probs = checked_probabilities(pairs, op);
  const std::int64_t channels = truth.channels();

  if (workers <= 0) {
    workers = static_cast<int>(std::thread::hardware_concurrency());
    if (workers <= 0) workers = 1;
  }

  const std::int64_t blocks = (trials + kTrialsPerBlock - 1) / kTrialsPerBlock;
  std::vector<OutcomeCounts> block_counts(static_cast<std::size_t>(blocks));
  std::atomic<std::int64_t> next_block{0};

  auto worker = [&] {
    PairPredictionSet predictions = PairPredictionSet::filled(channels);
    std::vector<Verdict> verdicts;
    for (;;) {
      const std::int64_t block = next_block.fetch_add(1);
      if (block >= blocks) break;
      const std::int64_t begin = block * kTrialsPerBlock;
      const std::int64_t end = std::min(trials, begin + kTrialsPerBlock);
      OutcomeCounts counts;
      for (std::int64_t t = begin; t < end; ++t) {
        SplitMix64 rng = SplitMix64::for_trial(seed, first_trial + static_cast<std::uint64_t>(t));
        synthesize_checked(pairs, probs, rng, predictions);
        judge(predictions, rule, verdicts);
        for (std::int64_t i = 0; i < channels; ++i) {
          const bool correct =
              truth.labels[static_cast<std::size_t>(i)] == ChannelLabel::Correct;
          const bool judged_correct =
              verdicts[static_cast<std::size_t>(i)] == Verdict::Correct;
          if (correct) {
            (judged_correct ? counts.rr : counts.rw) += 1;
          } else {
            (judged_correct ? counts.wr : counts.ww) += 1;
          }
        }
      }
      block_counts[static_cast<std::size_t>(block)] = counts;
    }
  };

  const int thread_count = static_cast<int>(std::min<std::int64_t>(workers, blocks));
  if (thread_count <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(thread_count));
    for (int i = 0; i < thread_count; ++i) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  SimulationEstimate estimate;
  estimate.channels = channels;
  estimate.trials = trials;
  for (const OutcomeCounts& counts : block_counts) estimate.counts += counts;
  return estimate;
}

SimulationEstimate simulate(const SimulationConfig& config, int workers) {
  const ChannelLabeling truth =
      canonical_labeling(config.cohort.channels(), config.cohort.correct());
  return simulate_labeled(truth, config.op, config.rule, config.trials, config.seed,
                          config.first_trial, workers);
}

}  // namespace simclean
