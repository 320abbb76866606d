#pragma once

#include "simclean/judging.hpp"
#include "simclean/similarity_metrics.hpp"
#include "simclean/types.hpp"

namespace simclean {

/// End-to-end empirical evaluation of one prediction set against ground
/// truth, with the closed-form expectations at the empirical operating point
/// alongside for comparison.
struct EvalReport {
  CohortSpec cohort;
  SimilarityConfusion confusion;
  OperatingPoint recalls;                           ///< empirical (Q2, Q3)
  ChannelVerdicts verdicts;
  ChannelOutcomeProbabilities channel_outcomes;     ///< empirical joint fractions
  PreferenceMeasures empirical_measures;
  ChannelOutcomeProbabilities predicted_outcomes;   ///< closed form at empirical recalls
  PreferenceMeasures predicted_measures;
};

EvalReport evaluate_predictions(const ChannelLabeling& truth,
                                const PairPredictionSet& predictions,
                                const JudgingRule& rule);

}  // namespace simclean
