// simclean: channel-level data-quality measures from pairwise-similarity
// classifier performance, with a Monte Carlo verification path.

#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "simclean/analysis.hpp"
#include "simclean/closed_form.hpp"
#include "simclean/csv_io.hpp"
#include "simclean/eval_report.hpp"
#include "simclean/montecarlo.hpp"
#include "simclean/selection.hpp"

namespace {

using json = nlohmann::json;
using namespace simclean;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitValidation = 3;

struct CohortFlags {
  std::int64_t channels = 0;
  std::optional<std::int64_t> correct;
  std::optional<double> q1;
};

void add_cohort_flags(CLI::App& cmd, CohortFlags& flags) {
  cmd.add_option("--channels", flags.channels, "channel count N")->required();
  auto* correct = cmd.add_option("--correct", flags.correct, "correct channel count n");
  cmd.add_option("--q1", flags.q1, "proportion of correct channels; mapped to n = round(q1*N)")
      ->excludes(correct);
}

CohortSpec resolve_cohort(const CohortFlags& flags) {
  if (flags.q1.has_value()) {
    if (std::isnan(*flags.q1) || *flags.q1 < 0.0 || *flags.q1 > 1.0) {
      throw std::invalid_argument("--q1 must lie in [0,1]");
    }
    const auto n = static_cast<std::int64_t>(std::llround(*flags.q1 *
                                                          static_cast<double>(flags.channels)));
    CohortSpec cohort(flags.channels, n);
    std::cerr << "warning: --q1 " << format_number(*flags.q1) << " mapped to --correct " << n
              << " (realized q1 = " << format_number(cohort.q1()) << ")\n";
    return cohort;
  }
  if (!flags.correct.has_value()) {
    throw std::invalid_argument("one of --correct or --q1 is required");
  }
  return CohortSpec(flags.channels, *flags.correct);
}

/// cmd_measures / cmd_simulate require a recall exactly when its pair class
/// is nonempty, and reject one supplied for an empty class.
OperatingPoint resolve_operating_point(const CohortSpec& cohort, std::optional<double> q2,
                                       std::optional<double> q3) {
  if (cohort.pairs_similar() == 0 && q2.has_value()) {
    throw std::invalid_argument("--q2 supplied but no similar pairs exist (n < 2)");
  }
  if (cohort.pairs_dissimilar() == 0 && q3.has_value()) {
    throw std::invalid_argument("--q3 supplied but no dissimilar pairs exist (n = N)");
  }
  if (cohort.pairs_similar() > 0 && !q2.has_value()) {
    throw std::invalid_argument("--q2 is required: the cohort has " +
                                std::to_string(cohort.pairs_similar()) + " similar pairs");
  }
  if (cohort.pairs_dissimilar() > 0 && !q3.has_value()) {
    throw std::invalid_argument("--q3 is required: the cohort has " +
                                std::to_string(cohort.pairs_dissimilar()) +
                                " dissimilar pairs");
  }
  for (const auto& [value, name] : {std::pair{q2, "--q2"}, std::pair{q3, "--q3"}}) {
    if (value && (std::isnan(*value) || *value < 0.0 || *value > 1.0)) {
      throw std::invalid_argument(std::string(name) + " must lie in [0,1]");
    }
  }
  return OperatingPoint{q2, q3};
}

using Fields = std::vector<std::pair<std::string, std::string>>;

void append_cohort_fields(Fields& fields, const CohortSpec& cohort) {
  fields.emplace_back("channels", std::to_string(cohort.channels()));
  fields.emplace_back("correct", std::to_string(cohort.correct()));
  fields.emplace_back("q1", format_number(cohort.q1()));
  fields.emplace_back("pairs_total", std::to_string(cohort.pairs_total()));
  fields.emplace_back("pairs_similar", std::to_string(cohort.pairs_similar()));
  fields.emplace_back("pairs_dissimilar", std::to_string(cohort.pairs_dissimilar()));
}

void append_outcome_fields(Fields& fields, const ChannelOutcomeProbabilities& p,
                           const std::string& prefix = "") {
  fields.emplace_back(prefix + "p_rr", format_number(p.p_rr));
  fields.emplace_back(prefix + "p_rw", format_number(p.p_rw));
  fields.emplace_back(prefix + "p_ww", format_number(p.p_ww));
  fields.emplace_back(prefix + "p_wr", format_number(p.p_wr));
}

void append_measure_fields(Fields& fields, const PreferenceMeasures& m,
                           const std::string& prefix = "") {
  fields.emplace_back(prefix + "e1", format_optional(m.e1));
  fields.emplace_back(prefix + "e2", format_optional(m.e2));
  fields.emplace_back(prefix + "e3", format_optional(m.e3));
  fields.emplace_back(prefix + "e4", format_optional(m.e4));
}

/// Flat key/value report in the chosen format. Values are pre-rendered
/// strings; JSON re-types integers and numbers, mapping "undefined" to null.
void print_fields(const Fields& fields, const std::string& format) {
  if (format == "table") {
    std::size_t width = 0;
    for (const auto& [key, value] : fields) width = std::max(width, key.size());
    for (const auto& [key, value] : fields) {
      std::cout << key << std::string(width - key.size() + 2, ' ') << value << '\n';
    }
    return;
  }
  if (format == "csv") {
    std::string header, row;
    for (const auto& [key, value] : fields) {
      if (!header.empty()) {
        header += ',';
        row += ',';
      }
      header += key;
      row += value;
    }
    std::cout << header << '\n' << row << '\n';
    return;
  }
  json object = json::object();
  for (const auto& [key, value] : fields) {
    if (value == "undefined") {
      object[key] = nullptr;
      continue;
    }
    std::size_t used = 0;
    if (value.find_first_not_of("-0123456789") == std::string::npos) {
      object[key] = std::stoll(value, &used);
    } else {
      try {
        const double number = std::stod(value, &used);
        if (used == value.size() && std::isfinite(number)) {
          object[key] = number;
        } else {
          object[key] = value;  // non-numeric field, e.g. the rule name
        }
      } catch (const std::exception&) {
        object[key] = value;
      }
    }
  }
  std::cout << object.dump(2) << '\n';
}

int cmd_measures(const CohortFlags& cohort_flags, std::optional<double> q2,
                 std::optional<double> q3, const std::string& format) {
  const CohortSpec cohort = resolve_cohort(cohort_flags);
  const OperatingPoint op = resolve_operating_point(cohort, q2, q3);
  const ChannelOutcomeProbabilities outcomes = outcome_probabilities(cohort, op);
  const PreferenceMeasures measures = preference_measures(cohort, op);

  Fields fields;
  append_cohort_fields(fields, cohort);
  fields.emplace_back("q2", format_optional(op.q2));
  fields.emplace_back("q3", format_optional(op.q3));
  append_outcome_fields(fields, outcomes);
  append_measure_fields(fields, measures);
  print_fields(fields, format);
  return kExitOk;
}

int cmd_simulate(const CohortFlags& cohort_flags, std::optional<double> q2,
                 std::optional<double> q3, const std::string& format,
                 std::int64_t trials, std::uint64_t seed, const std::string& rule_text,
                 double tolerance_sigma, int workers) {
  const CohortSpec cohort = resolve_cohort(cohort_flags);
  const OperatingPoint op = resolve_operating_point(cohort, q2, q3);
  const JudgingRule rule = parse_rule(rule_text);
  if (trials < 1) {
    throw std::invalid_argument("--trials must be >= 1");
  }

  const SimulationConfig config{cohort, op, rule, trials, seed, 0};
  const SimulationEstimate result = simulate(config, workers);
  const ChannelOutcomeProbabilities estimates = result.estimates();
  const std::array<double, 4> errors = result.std_errors();

  // Closed forms describe the absolute rule only.
  std::optional<ChannelOutcomeProbabilities> expected;
  if (rule.is_absolute()) expected = outcome_probabilities(cohort, op);

  const std::array<std::pair<std::string, double>, 4> rows{{
      {"p_rr", estimates.p_rr},
      {"p_rw", estimates.p_rw},
      {"p_ww", estimates.p_ww},
      {"p_wr", estimates.p_wr},
  }};
  const std::array<double, 4> closed{expected ? expected->p_rr : 0, expected ? expected->p_rw : 0,
                                     expected ? expected->p_ww : 0, expected ? expected->p_wr : 0};

  Fields fields;
  append_cohort_fields(fields, cohort);
  fields.emplace_back("q2", format_optional(op.q2));
  fields.emplace_back("q3", format_optional(op.q3));
  fields.emplace_back("rule", to_string(rule));
  fields.emplace_back("trials", std::to_string(result.trials));
  fields.emplace_back("seed", std::to_string(seed));
  fields.emplace_back("observations", std::to_string(result.observations()));

  double max_abs_z = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& [name, estimate] = rows[i];
    fields.emplace_back(name + "_estimate", format_number(estimate));
    fields.emplace_back(name + "_stderr", format_number(errors[i]));
    if (expected) {
      const double difference = estimate - closed[i];
      double z = 0.0;
      if (errors[i] > 0.0) {
        z = difference / errors[i];
      } else if (difference != 0.0) {
        z = std::numeric_limits<double>::infinity();
      }
      max_abs_z = std::max(max_abs_z, std::abs(z));
      fields.emplace_back(name + "_closed", format_number(closed[i]));
      fields.emplace_back(name + "_z", format_number(z));
    } else {
      fields.emplace_back(name + "_closed", "undefined");
      fields.emplace_back(name + "_z", "undefined");
    }
  }
  print_fields(fields, format);

  if (expected && max_abs_z > tolerance_sigma) {
    std::cerr << "validation failed: max |z| = " << format_number(max_abs_z) << " exceeds "
              << format_number(tolerance_sigma) << " sigma\n";
    return kExitValidation;
  }
  return kExitOk;
}

int cmd_judge(const std::string& predictions_path, const std::string& rule_text,
              const std::string& truth_path, const std::string& out_path,
              std::optional<std::int64_t> channels) {
  const JudgingRule rule = parse_rule(rule_text);

  std::ifstream predictions_file(predictions_path);
  if (!predictions_file) {
    throw std::invalid_argument("cannot open predictions file '" + predictions_path + "'");
  }
  const PairPredictionSet predictions = read_predictions_csv(predictions_file, channels);

  std::ostringstream body;
  if (truth_path.empty()) {
    write_verdicts_csv(body, judge(predictions, rule));
  } else {
    std::ifstream truth_file(truth_path);
    if (!truth_file) {
      throw std::invalid_argument("cannot open truth file '" + truth_path + "'");
    }
    const ChannelLabeling truth = read_truth_csv(truth_file);
    const EvalReport report = evaluate_predictions(truth, predictions, rule);
    write_verdicts_csv(body, report.verdicts);

    Fields fields;
    fields.emplace_back("q2", format_optional(report.recalls.q2));
    fields.emplace_back("q3", format_optional(report.recalls.q3));
    fields.emplace_back("k1", format_number(report.confusion.k1()));
    fields.emplace_back("k2", format_number(report.confusion.k2()));
    fields.emplace_back("k3", format_number(report.confusion.k3()));
    fields.emplace_back("k4", format_number(report.confusion.k4()));
    append_outcome_fields(fields, report.channel_outcomes);
    append_measure_fields(fields, report.empirical_measures);
    append_outcome_fields(fields, report.predicted_outcomes, "predicted_");
    append_measure_fields(fields, report.predicted_measures, "predicted_");

    body << "\nmetric,value\n";
    for (const auto& [key, value] : fields) body << key << ',' << value << '\n';
  }

  if (out_path.empty()) {
    std::cout << body.str();
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::invalid_argument("cannot open output file '" + out_path + "'");
    out << body.str();
  }
  return kExitOk;
}

int cmd_sweep(const CohortFlags& cohort_flags, const std::string& q2_grid,
              const std::string& q3_grid, const std::string& out_path,
              double strong_threshold) {
  const CohortSpec cohort = resolve_cohort(cohort_flags);
  const SweepGrid grid(cohort, parse_grid(q2_grid), parse_grid(q3_grid));
  const std::vector<SweepRow> rows = sweep(grid);

  std::ofstream out(out_path);
  if (!out) throw std::invalid_argument("cannot open output file '" + out_path + "'");
  write_sweep_csv(out, rows);
  out.close();

  const CorrelationReport report = correlation_report(rows, strong_threshold);
  write_correlation_csv(std::cout, report);
  return kExitOk;
}

int cmd_select(const std::string& candidates_path, const CohortFlags& cohort_flags,
               const std::string& measure_name) {
  const CohortSpec cohort = resolve_cohort(cohort_flags);
  const Measure measure = parse_measure(measure_name);

  std::ifstream candidates_file(candidates_path);
  if (!candidates_file) {
    throw std::invalid_argument("cannot open candidates file '" + candidates_path + "'");
  }
  const std::vector<Candidate> candidates = read_candidates_csv(candidates_file);
  const RankedResult result = select(candidates, cohort, measure);
  write_ranking_csv(std::cout, result);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Preference-based data-cleaning measures for pairwise-similarity classifiers"};
  app.require_subcommand(1);

  // measures
  CohortFlags measures_cohort;
  std::optional<double> measures_q2, measures_q3;
  std::string measures_format = "table";
  auto* measures = app.add_subcommand(
      "measures", "closed-form outcome probabilities and preference measures");
  add_cohort_flags(*measures, measures_cohort);
  measures->add_option("--q2", measures_q2, "recall of similar pairs");
  measures->add_option("--q3", measures_q3, "recall of dissimilar pairs");
  measures->add_option("--format", measures_format, "output format")
      ->check(CLI::IsMember({"json", "csv", "table"}));

  // simulate
  CohortFlags simulate_cohort;
  std::optional<double> simulate_q2, simulate_q3;
  std::string simulate_format = "table";
  std::int64_t trials = 0;
  std::uint64_t seed = 42;
  std::string rule_text = "absolute";
  double tolerance_sigma = 4.0;
  int workers = 1;
  auto* simulate = app.add_subcommand(
      "simulate", "Monte Carlo estimates of the outcome probabilities");
  add_cohort_flags(*simulate, simulate_cohort);
  simulate->add_option("--q2", simulate_q2, "recall of similar pairs");
  simulate->add_option("--q3", simulate_q3, "recall of dissimilar pairs");
  simulate->add_option("--format", simulate_format, "output format")
      ->check(CLI::IsMember({"json", "csv", "table"}));
  simulate->add_option("--trials", trials, "number of independent trials")->required();
  simulate->add_option("--seed", seed, "random seed");
  simulate->add_option("--rule", rule_text, "judging rule: absolute or threshold:<theta>");
  simulate->add_option("--tolerance-sigma", tolerance_sigma,
                       "max |z| against the closed form before exit 3 (absolute rule)");
  simulate->add_option("--workers", workers, "worker threads (0 = hardware)");

  // judge
  std::string predictions_path, truth_path, judge_out;
  std::string judge_rule = "absolute";
  std::optional<std::int64_t> judge_channels;
  auto* judge_cmd = app.add_subcommand("judge", "judge channels from a prediction CSV");
  judge_cmd->add_option("--predictions", predictions_path, "predictions CSV (a,b,prediction)")
      ->required();
  judge_cmd->add_option("--rule", judge_rule, "judging rule: absolute or threshold:<theta>");
  judge_cmd->add_option("--truth", truth_path,
                        "truth CSV (channel,label); adds the empirical evaluation");
  judge_cmd->add_option("--channels", judge_channels,
                        "channel count (default: inferred from the file)");
  judge_cmd->add_option("--out", judge_out, "write output here instead of stdout");

  // sweep
  CohortFlags sweep_cohort;
  std::string q2_grid = "0.5:1.0:0.1";
  std::string q3_grid = "0.5:1.0:0.1";
  std::string sweep_out;
  double strong_threshold = 0.95;
  auto* sweep_cmd = app.add_subcommand(
      "sweep", "measure grid over (q2,q3) plus a correlation report");
  add_cohort_flags(*sweep_cmd, sweep_cohort);
  sweep_cmd->add_option("--q2-grid", q2_grid, "q2 grid, <value> or start:stop:step");
  sweep_cmd->add_option("--q3-grid", q3_grid, "q3 grid, <value> or start:stop:step");
  sweep_cmd->add_option("--out", sweep_out, "output CSV path")->required();
  sweep_cmd->add_option("--strong-threshold", strong_threshold,
                        "rho threshold for the strong_positive flag");

  // select
  std::string candidates_path, measure_name;
  CohortFlags select_cohort;
  auto* select_cmd = app.add_subcommand(
      "select", "rank candidate operating points by a preference measure");
  select_cmd->add_option("--candidates", candidates_path, "candidates CSV (id,q2,q3)")
      ->required();
  add_cohort_flags(*select_cmd, select_cohort);
  select_cmd->add_option("--measure", measure_name, "measure to maximize: e1|e2|e3|e4")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& help) {
    return app.exit(help);
  } catch (const CLI::ParseError& error) {
    app.exit(error);
    return kExitUsage;
  }

  try {
    if (measures->parsed()) {
      return cmd_measures(measures_cohort, measures_q2, measures_q3, measures_format);
    }
    if (simulate->parsed()) {
      return cmd_simulate(simulate_cohort, simulate_q2, simulate_q3, simulate_format, trials,
                          seed, rule_text, tolerance_sigma, workers);
    }
    if (judge_cmd->parsed()) {
      return cmd_judge(predictions_path, judge_rule, truth_path, judge_out, judge_channels);
    }
    if (sweep_cmd->parsed()) {
      return cmd_sweep(sweep_cohort, q2_grid, q3_grid, sweep_out, strong_threshold);
    }
    if (select_cmd->parsed()) {
      return cmd_select(candidates_path, select_cohort, measure_name);
    }
  } catch (const validation_error& error) {
    std::cerr << "error: " << error.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
