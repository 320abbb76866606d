#include <doctest.h>

#include <cmath>

#include "simclean/closed_form.hpp"
#include "simclean/montecarlo.hpp"
#include "simclean/sample_space.hpp"
#include "simclean/similarity_metrics.hpp"

using namespace simclean;

namespace {

void check_within_sigma(const SimulationEstimate& run, const ChannelOutcomeProbabilities& want,
                        double sigmas) {
  const ChannelOutcomeProbabilities got = run.estimates();
  const auto errors = run.std_errors();
  const double values[4] = {got.p_rr, got.p_rw, got.p_ww, got.p_wr};
  const double expected[4] = {want.p_rr, want.p_rw, want.p_ww, want.p_wr};
  for (int i = 0; i < 4; ++i) {
    const double difference = std::abs(values[i] - expected[i]);
    if (errors[i] == 0.0) {
      CHECK(difference == 0.0);
    } else {
      CHECK(difference <= sigmas * errors[i]);
    }
  }
}

}  // namespace

TEST_CASE("synthesis is exact at the deterministic corners") {
  const CohortSpec cohort(5, 3);
  const auto pairs = enumerate_pairs(canonical_labeling(5, 3));
  SUBCASE("q2 = q3 = 1 reproduces the truth tags") {
    SplitMix64 rng(1);
    const auto predictions = synthesize_predictions(cohort, OperatingPoint{1.0, 1.0}, rng);
    for (const auto& pair : pairs) CHECK(predictions.at(pair.a, pair.b) == pair.tag);
  }
  SUBCASE("q2 = 0, q3 = 1 predicts everything dissimilar") {
    SplitMix64 rng(2);
    const auto predictions = synthesize_predictions(cohort, OperatingPoint{0.0, 1.0}, rng);
    for (const auto& pair : pairs) CHECK(predictions.at(pair.a, pair.b) == PairTag::Dissimilar);
  }
}

TEST_CASE("similar-pair prediction rate concentrates at q2") {
  // 3 similar pairs per trial; binomial concentration over all trials
  const CohortSpec cohort(4, 3);
  const OperatingPoint op{0.8, 0.9};
  const auto pairs = enumerate_pairs(canonical_labeling(4, 3));
  const std::int64_t trials = 333334;  // ~1e6 similar-pair draws

  std::int64_t similar_hits = 0;
  std::int64_t similar_draws = 0;
  PairPredictionSet predictions = PairPredictionSet::filled(4);
  for (std::int64_t t = 0; t < trials; ++t) {
    SplitMix64 rng = SplitMix64::for_trial(99, static_cast<std::uint64_t>(t));
    synthesize_predictions(pairs, op, rng, predictions);
    const SimilarityConfusion confusion = confusion_from_predictions(pairs, predictions);
    similar_hits += confusion.similar_predicted_similar;
    similar_draws += confusion.similar_total();
  }
  const double rate = static_cast<double>(similar_hits) / static_cast<double>(similar_draws);
  const double sigma = std::sqrt(0.8 * 0.2 / static_cast<double>(similar_draws));
  CHECK(std::abs(rate - 0.8) <= 4.0 * sigma);
}

TEST_CASE("per-trial recalls averaged over trials converge to (q2, q3)") {
  const CohortSpec cohort(6, 3);
  const OperatingPoint op{0.65, 0.85};
  const auto pairs = enumerate_pairs(canonical_labeling(6, 3));
  const std::int64_t trials = 100000;

  SimilarityConfusion totals;
  PairPredictionSet predictions = PairPredictionSet::filled(6);
  for (std::int64_t t = 0; t < trials; ++t) {
    SplitMix64 rng = SplitMix64::for_trial(4242, static_cast<std::uint64_t>(t));
    synthesize_predictions(pairs, op, rng, predictions);
    const SimilarityConfusion confusion = confusion_from_predictions(pairs, predictions);
    totals.similar_predicted_similar += confusion.similar_predicted_similar;
    totals.similar_predicted_dissimilar += confusion.similar_predicted_dissimilar;
    totals.dissimilar_predicted_dissimilar += confusion.dissimilar_predicted_dissimilar;
    totals.dissimilar_predicted_similar += confusion.dissimilar_predicted_similar;
  }
  const OperatingPoint recalls = recalls_from_confusion(totals);
  const double sigma_q2 =
      std::sqrt(0.65 * 0.35 / static_cast<double>(totals.similar_total()));
  const double sigma_q3 =
      std::sqrt(0.85 * 0.15 / static_cast<double>(totals.dissimilar_total()));
  CHECK(std::abs(*recalls.q2 - 0.65) <= 4.0 * sigma_q2);
  CHECK(std::abs(*recalls.q3 - 0.85) <= 4.0 * sigma_q3);
}

TEST_CASE("perfect classifier gives exact estimates under compatible rules") {
  const CohortSpec cohort(4, 3);
  const OperatingPoint op{1.0, 1.0};
  for (const JudgingRule& rule : {JudgingRule::absolute(), JudgingRule::threshold(1.0),
                                  JudgingRule::threshold(0.9)}) {
    const SimulationConfig config{cohort, op, rule, 100, 7, 0};
    const SimulationEstimate run = simulate(config);
    const ChannelOutcomeProbabilities p = run.estimates();
    CHECK(p.p_rr == cohort.q1());
    CHECK(p.p_ww == 1.0 - cohort.q1());
    CHECK(p.p_rw == 0.0);
    CHECK(p.p_wr == 0.0);
  }
}

TEST_CASE("reference point agrees with the closed form at 4 sigma") {
  const CohortSpec cohort(4, 3);
  const OperatingPoint op{0.8, 0.9};
  const SimulationConfig config{cohort, op, JudgingRule::absolute(), 200000, 2026, 0};
  const SimulationEstimate run = simulate(config, 2);
  check_within_sigma(run, outcome_probabilities(cohort, op), 4.0);
}

TEST_CASE("a lone correct channel is never judged correct when q3 = 1") {
  const CohortSpec cohort(6, 1);
  const OperatingPoint op{std::nullopt, 1.0};
  const SimulationConfig config{cohort, op, JudgingRule::absolute(), 50000, 11, 0};
  const SimulationEstimate run = simulate(config, 2);
  CHECK(run.counts.rr == 0);  // every trial, exactly
  CHECK(run.counts.rw == run.trials);
}

TEST_CASE("fixed seed is bit-deterministic across runs and worker counts") {
  const CohortSpec cohort(5, 3);
  const OperatingPoint op{0.7, 0.8};
  const SimulationConfig config{cohort, op, JudgingRule::absolute(), 40000, 12345, 0};
  const SimulationEstimate one = simulate(config, 1);
  const SimulationEstimate again = simulate(config, 1);
  const SimulationEstimate two = simulate(config, 2);
  const SimulationEstimate many = simulate(config, 7);
  CHECK(one.counts == again.counts);
  CHECK(one.counts == two.counts);
  CHECK(one.counts == many.counts);
}

TEST_CASE("disjoint trial ranges merge exactly into the full run") {
  const CohortSpec cohort(5, 2);
  const OperatingPoint op{0.6, 0.75};
  const JudgingRule rule = JudgingRule::absolute();
  const std::uint64_t seed = 555;

  const SimulationEstimate full = simulate({cohort, op, rule, 30000, seed, 0}, 2);
  const SimulationEstimate head = simulate({cohort, op, rule, 11000, seed, 0}, 2);
  const SimulationEstimate tail = simulate({cohort, op, rule, 19000, seed, 11000}, 2);
  const SimulationEstimate merged = head.merged_with(tail);
  CHECK(merged.counts == full.counts);
  CHECK(merged.trials == full.trials);
}

TEST_CASE("estimates are invariant to relabeling the channels") {
  // incorrect channels first instead of last
  ChannelLabeling permuted;
  permuted.labels = {ChannelLabel::Incorrect, ChannelLabel::Correct, ChannelLabel::Correct,
                     ChannelLabel::Correct};
  const OperatingPoint op{0.8, 0.9};
  const SimulationEstimate run =
      simulate_labeled(permuted, op, JudgingRule::absolute(), 200000, 31337, 0, 2);
  check_within_sigma(run, outcome_probabilities(CohortSpec(4, 3), op), 4.0);
}

TEST_CASE("threshold golden run: frozen counts for a fixed seed") {
  const CohortSpec cohort(11, 2);
  const OperatingPoint op{1.0, 0.5};
  const SimulationConfig config{cohort, op, JudgingRule::threshold(0.9), 100000, 20240801, 0};
  const SimulationEstimate run = simulate(config, 2);

  // sum/split invariants hold exactly on the raw counts
  CHECK(run.counts.total() == run.observations());
  CHECK(run.counts.rr + run.counts.rw == run.trials * cohort.correct());
  CHECK(run.counts.ww + run.counts.wr ==
        run.trials * (cohort.channels() - cohort.correct()));

  // golden values from the first verified run of this configuration
  CHECK(run.counts.rr == 199563);
  CHECK(run.counts.rw == 437);
  CHECK(run.counts.ww == 9661);
  CHECK(run.counts.wr == 890339);
}

TEST_CASE("simulation rejects invalid configurations") {
  const CohortSpec cohort(4, 3);
  CHECK_THROWS_AS(simulate({cohort, OperatingPoint{0.8, 0.9}, JudgingRule::absolute(), 0, 1, 0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      simulate({cohort, OperatingPoint{std::nullopt, 0.9}, JudgingRule::absolute(), 10, 1, 0}),
      std::invalid_argument);
  CHECK_THROWS_AS(
      simulate({cohort, OperatingPoint{0.8, std::nullopt}, JudgingRule::absolute(), 10, 1, 0}),
      std::invalid_argument);
}

TEST_CASE("std_errors follow the fraction formula") {
  SimulationEstimate estimate;
  estimate.counts = {75, 25, 60, 40};
  estimate.channels = 4;
  estimate.trials = 50;
  const auto errors = estimate.std_errors();
  const double m = 200.0;
  CHECK(errors[0] == doctest::Approx(std::sqrt(0.375 * 0.625 / m)).epsilon(1e-15));
  CHECK(errors[1] == doctest::Approx(std::sqrt(0.125 * 0.875 / m)).epsilon(1e-15));
}
