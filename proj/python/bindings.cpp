#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "simclean/analysis.hpp"
#include "simclean/closed_form.hpp"
#include "simclean/eval_report.hpp"
#include "simclean/montecarlo.hpp"
#include "simclean/sample_space.hpp"
#include "simclean/selection.hpp"
#include "simclean/similarity_metrics.hpp"

namespace py = pybind11;
using namespace simclean;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Channel-level data-quality measures from pairwise-similarity performance";

  py::register_exception<validation_error>(m, "ValidationError", PyExc_RuntimeError);

  py::enum_<ChannelLabel>(m, "ChannelLabel")
      .value("Correct", ChannelLabel::Correct)
      .value("Incorrect", ChannelLabel::Incorrect);
  py::enum_<PairTag>(m, "PairTag")
      .value("Similar", PairTag::Similar)
      .value("Dissimilar", PairTag::Dissimilar);
  py::enum_<Verdict>(m, "Verdict")
      .value("Correct", Verdict::Correct)
      .value("Incorrect", Verdict::Incorrect);
  py::enum_<Measure>(m, "Measure")
      .value("E1", Measure::E1)
      .value("E2", Measure::E2)
      .value("E3", Measure::E3)
      .value("E4", Measure::E4);

  py::class_<ChannelLabeling>(m, "ChannelLabeling")
      .def(py::init([](std::vector<ChannelLabel> labels) {
             return ChannelLabeling{std::move(labels)};
           }),
           py::arg("labels"))
      .def_readonly("labels", &ChannelLabeling::labels)
      .def_property_readonly("channels", &ChannelLabeling::channels)
      .def_property_readonly("correct_count", &ChannelLabeling::correct_count);
  m.def("canonical_labeling", &canonical_labeling, py::arg("channels"), py::arg("correct"));

  py::class_<CohortSpec>(m, "CohortSpec")
      .def(py::init<std::int64_t, std::int64_t>(), py::arg("channels"), py::arg("correct"))
      .def_property_readonly("channels", &CohortSpec::channels)
      .def_property_readonly("correct", &CohortSpec::correct)
      .def_property_readonly("q1", &CohortSpec::q1)
      .def_property_readonly("pairs_total", &CohortSpec::pairs_total)
      .def_property_readonly("pairs_similar", &CohortSpec::pairs_similar)
      .def_property_readonly("pairs_dissimilar", &CohortSpec::pairs_dissimilar)
      .def("__repr__", [](const CohortSpec& c) {
        return "CohortSpec(channels=" + std::to_string(c.channels()) +
               ", correct=" + std::to_string(c.correct()) + ")";
      });

  py::class_<PairSample>(m, "PairSample")
      .def_readonly("a", &PairSample::a)
      .def_readonly("b", &PairSample::b)
      .def_readonly("tag", &PairSample::tag);

  py::class_<OperatingPoint>(m, "OperatingPoint")
      .def(py::init([](std::optional<double> q2, std::optional<double> q3) {
             return OperatingPoint{q2, q3};
           }),
           py::arg("q2") = std::nullopt, py::arg("q3") = std::nullopt)
      .def_readwrite("q2", &OperatingPoint::q2)
      .def_readwrite("q3", &OperatingPoint::q3);

  py::class_<ChannelOutcomeProbabilities>(m, "ChannelOutcomeProbabilities")
      .def_readonly("p_rr", &ChannelOutcomeProbabilities::p_rr)
      .def_readonly("p_rw", &ChannelOutcomeProbabilities::p_rw)
      .def_readonly("p_ww", &ChannelOutcomeProbabilities::p_ww)
      .def_readonly("p_wr", &ChannelOutcomeProbabilities::p_wr)
      .def("sum", &ChannelOutcomeProbabilities::sum);

  py::class_<PreferenceMeasures>(m, "PreferenceMeasures")
      .def_readonly("e1", &PreferenceMeasures::e1)
      .def_readonly("e2", &PreferenceMeasures::e2)
      .def_readonly("e3", &PreferenceMeasures::e3)
      .def_readonly("e4", &PreferenceMeasures::e4)
      .def("get", &PreferenceMeasures::get, py::arg("measure"));

  py::class_<ChannelVerdicts>(m, "ChannelVerdicts")
      .def_readonly("verdicts", &ChannelVerdicts::verdicts)
      .def_property_readonly("channels", &ChannelVerdicts::channels);

  m.def("enumerate_pairs", &enumerate_pairs, py::arg("labeling"));
  m.def("cohort_of", &cohort_of, py::arg("labeling"));

  py::class_<PairPredictionSet>(m, "PairPredictionSet")
      .def_static("filled", &PairPredictionSet::filled, py::arg("channels"),
                  py::arg("fill") = PairTag::Dissimilar)
      .def_static(
          "from_entries",
          [](std::int64_t channels,
             const std::vector<std::tuple<std::int32_t, std::int32_t, PairTag>>& entries) {
            return PairPredictionSet::from_entries(channels, entries);
          },
          py::arg("channels"), py::arg("entries"))
      .def_property_readonly("channels", &PairPredictionSet::channels)
      .def_property_readonly("pair_count", &PairPredictionSet::pair_count)
      .def("at", &PairPredictionSet::at, py::arg("a"), py::arg("b"))
      .def("set", &PairPredictionSet::set, py::arg("a"), py::arg("b"), py::arg("tag"));

  py::class_<JudgingRule>(m, "JudgingRule")
      .def_static("absolute", &JudgingRule::absolute)
      .def_static("threshold", py::overload_cast<double>(&JudgingRule::threshold),
                  py::arg("theta"))
      .def_static("threshold",
                  py::overload_cast<std::int64_t, std::int64_t>(&JudgingRule::threshold),
                  py::arg("numerator"), py::arg("denominator"))
      .def_property_readonly("is_absolute", &JudgingRule::is_absolute)
      .def_property_readonly("theta", &JudgingRule::theta)
      .def("__repr__", [](const JudgingRule& rule) { return to_string(rule); });
  m.def("parse_rule", &parse_rule, py::arg("text"));

  m.def(
      "judge",
      [](const PairPredictionSet& predictions, const JudgingRule& rule) {
        return judge(predictions, rule);
      },
      py::arg("predictions"), py::arg("rule"));
  m.def("channel_confusion", &channel_confusion, py::arg("verdicts"), py::arg("truth"));

  py::class_<SimilarityConfusion>(m, "SimilarityConfusion")
      .def(py::init([](std::int64_t k1, std::int64_t k2, std::int64_t k3, std::int64_t k4) {
             return SimilarityConfusion{k1, k2, k3, k4};
           }),
           py::arg("similar_predicted_similar"), py::arg("similar_predicted_dissimilar"),
           py::arg("dissimilar_predicted_dissimilar"), py::arg("dissimilar_predicted_similar"))
      .def_readonly("similar_predicted_similar", &SimilarityConfusion::similar_predicted_similar)
      .def_readonly("similar_predicted_dissimilar",
                    &SimilarityConfusion::similar_predicted_dissimilar)
      .def_readonly("dissimilar_predicted_dissimilar",
                    &SimilarityConfusion::dissimilar_predicted_dissimilar)
      .def_readonly("dissimilar_predicted_similar",
                    &SimilarityConfusion::dissimilar_predicted_similar)
      .def_property_readonly("k1", &SimilarityConfusion::k1)
      .def_property_readonly("k2", &SimilarityConfusion::k2)
      .def_property_readonly("k3", &SimilarityConfusion::k3)
      .def_property_readonly("k4", &SimilarityConfusion::k4)
      .def_property_readonly("total", &SimilarityConfusion::total);

  m.def(
      "confusion_from_predictions",
      [](const std::vector<PairSample>& pairs, const PairPredictionSet& predictions) {
        return confusion_from_predictions(pairs, predictions);
      },
      py::arg("pairs"), py::arg("predictions"));
  m.def("recalls_from_confusion", &recalls_from_confusion, py::arg("confusion"));

  m.def("pow_int", &pow_int, py::arg("base"), py::arg("exponent"));
  m.def("outcome_probabilities", &outcome_probabilities, py::arg("cohort"), py::arg("op"));
  m.def("preference_measures", &preference_measures, py::arg("cohort"), py::arg("op"));
  m.def("measures_from_outcomes", &measures_from_outcomes, py::arg("outcomes"));

  py::class_<SplitMix64>(m, "SplitMix64")
      .def(py::init<std::uint64_t>(), py::arg("state"))
      .def_static("for_trial", &SplitMix64::for_trial, py::arg("seed"), py::arg("trial_index"))
      .def("next", &SplitMix64::next)
      .def("uniform01", &SplitMix64::uniform01);

  py::class_<SimulationConfig>(m, "SimulationConfig")
      .def(py::init([](CohortSpec cohort, OperatingPoint op, JudgingRule rule,
                       std::int64_t trials, std::uint64_t seed, std::uint64_t first_trial) {
             return SimulationConfig{cohort, op, rule, trials, seed, first_trial};
           }),
           py::arg("cohort"), py::arg("op"), py::arg("rule"), py::arg("trials"),
           py::arg("seed"), py::arg("first_trial") = 0)
      .def_readwrite("trials", &SimulationConfig::trials)
      .def_readwrite("seed", &SimulationConfig::seed)
      .def_readwrite("first_trial", &SimulationConfig::first_trial);

  py::class_<OutcomeCounts>(m, "OutcomeCounts")
      .def_readonly("rr", &OutcomeCounts::rr)
      .def_readonly("rw", &OutcomeCounts::rw)
      .def_readonly("ww", &OutcomeCounts::ww)
      .def_readonly("wr", &OutcomeCounts::wr)
      .def("total", &OutcomeCounts::total);

  py::class_<SimulationEstimate>(m, "SimulationEstimate")
      .def_readonly("counts", &SimulationEstimate::counts)
      .def_readonly("channels", &SimulationEstimate::channels)
      .def_readonly("trials", &SimulationEstimate::trials)
      .def_property_readonly("observations", &SimulationEstimate::observations)
      .def("estimates", &SimulationEstimate::estimates)
      .def("std_errors", &SimulationEstimate::std_errors)
      .def("merged_with", &SimulationEstimate::merged_with, py::arg("other"));

  m.def(
      "synthesize_predictions",
      [](const CohortSpec& cohort, const OperatingPoint& op, SplitMix64& rng) {
        return synthesize_predictions(cohort, op, rng);
      },
      py::arg("cohort"), py::arg("op"), py::arg("rng"));
  m.def("simulate", &simulate, py::arg("config"), py::arg("workers") = 1,
        py::call_guard<py::gil_scoped_release>());
  m.def("simulate_labeled", &simulate_labeled, py::arg("truth"), py::arg("op"), py::arg("rule"),
        py::arg("trials"), py::arg("seed"), py::arg("first_trial") = 0, py::arg("workers") = 1,
        py::call_guard<py::gil_scoped_release>());

  py::class_<SweepGrid>(m, "SweepGrid")
      .def(py::init<CohortSpec, std::vector<double>, std::vector<double>>(), py::arg("cohort"),
           py::arg("q2_values"), py::arg("q3_values"))
      .def_readonly("q2_values", &SweepGrid::q2_values)
      .def_readonly("q3_values", &SweepGrid::q3_values);

  py::class_<SweepRow>(m, "SweepRow")
      .def_readonly("q2", &SweepRow::q2)
      .def_readonly("q3", &SweepRow::q3)
      .def_readonly("measures", &SweepRow::measures);

  m.def("sweep", &sweep, py::arg("grid"));
  m.def(
      "spearman_rho",
      [](const std::vector<double>& x, const std::vector<double>& y) {
        return spearman_rho(x, y);
      },
      py::arg("x"), py::arg("y"));

  py::class_<MeasureCorrelation>(m, "MeasureCorrelation")
      .def_readonly("rho", &MeasureCorrelation::rho)
      .def_readonly("strong_positive", &MeasureCorrelation::strong_positive);

  py::class_<CorrelationReport>(m, "CorrelationReport")
      .def_readonly("threshold", &CorrelationReport::threshold)
      .def("get", &CorrelationReport::get, py::arg("measure"),
           py::return_value_policy::reference_internal);

  m.def(
      "correlation_report",
      [](const std::vector<SweepRow>& rows, double threshold) {
        return correlation_report(rows, threshold);
      },
      py::arg("rows"), py::arg("threshold") = 0.95);

  py::class_<Candidate>(m, "Candidate")
      .def(py::init([](std::string id, OperatingPoint op) {
             return Candidate{std::move(id), op};
           }),
           py::arg("id"), py::arg("op"))
      .def_readonly("id", &Candidate::id)
      .def_readonly("op", &Candidate::op);

  py::class_<RankedEntry>(m, "RankedEntry")
      .def_readonly("id", &RankedEntry::id)
      .def_readonly("op", &RankedEntry::op)
      .def_readonly("value", &RankedEntry::value);

  py::class_<RankedResult>(m, "RankedResult")
      .def_readonly("ranking", &RankedResult::ranking)
      .def_readonly("chosen", &RankedResult::chosen)
      .def_readonly("measure", &RankedResult::measure);

  m.def(
      "select",
      [](const std::vector<Candidate>& candidates, const CohortSpec& cohort, Measure measure) {
        return select(candidates, cohort, measure);
      },
      py::arg("candidates"), py::arg("cohort"), py::arg("measure"));

  py::class_<EvalReport>(m, "EvalReport")
      .def_readonly("cohort", &EvalReport::cohort)
      .def_readonly("confusion", &EvalReport::confusion)
      .def_readonly("recalls", &EvalReport::recalls)
      .def_readonly("verdicts", &EvalReport::verdicts)
      .def_readonly("channel_outcomes", &EvalReport::channel_outcomes)
      .def_readonly("empirical_measures", &EvalReport::empirical_measures)
      .def_readonly("predicted_outcomes", &EvalReport::predicted_outcomes)
      .def_readonly("predicted_measures", &EvalReport::predicted_measures);

  m.def("evaluate_predictions", &evaluate_predictions, py::arg("truth"),
        py::arg("predictions"), py::arg("rule"));

  m.attr("__version__") = "0.1.0";
}
