#include "simclean/eval_report.hpp"

#include "simclean/closed_form.hpp"
#include "simclean/sample_space.hpp"

namespace simclean {

EvalReport evaluate_predictions(const ChannelLabeling& truth,
                                const PairPredictionSet& predictions,
                                const JudgingRule& rule) {
  if (truth.channels() != predictions.channels()) {
    throw std::invalid_argument("evaluate_predictions: " + std::to_string(truth.channels()) +
                                " truth labels vs " + std::to_string(predictions.channels()) +
                                " prediction channels");
  }
  const std::vector<PairSample> pairs = enumerate_pairs(truth);

  EvalReport report{
      .cohort = cohort_of(truth),
      .confusion = confusion_from_predictions(pairs, predictions),
      .recalls = {},
      .verdicts = judge(predictions, rule),
      .channel_outcomes = {},
      .empirical_measures = {},
      .predicted_outcomes = {},
      .predicted_measures = {},
  };
  report.recalls = recalls_from_confusion(report.confusion);
  report.channel_outcomes = channel_confusion(report.verdicts, truth);
  report.empirical_measures = measures_from_outcomes(report.channel_outcomes);
  // Closed-form expectations at the empirical operating point; a recall is
  // undefined exactly when its class is empty, which is when the closed form
  // does not need it.
  report.predicted_outcomes = outcome_probabilities(report.cohort, report.recalls);
  report.predicted_measures = preference_measures(report.cohort, report.recalls);
  return report;
}

}  // namespace simclean
