#include "simclean/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "simclean/closed_form.hpp"

namespace simclean {

namespace {

void check_axis(const std::vector<double>& values, const char* name) {
  if (values.empty()) {
    throw std::invalid_argument(std::string("sweep grid: ") + name + " values are empty");
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (std::isnan(values[i]) || values[i] < 0.0 || values[i] > 1.0) {
      throw std::invalid_argument(std::string("sweep grid: ") + name +
                                  " values must lie in [0,1]");
    }
    if (i > 0 && values[i] <= values[i - 1]) {
      throw std::invalid_argument(std::string("sweep grid: ") + name +
                                  " values must be strictly ascending");
    }
  }
}

/// Average ranks (1-based) with ties sharing their mean rank.
std::vector<double> average_ranks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    const double rank = static_cast<double>(i + j + 2) / 2.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

}  // namespace

SweepGrid::SweepGrid(CohortSpec cohort_in, std::vector<double> q2_in, std::vector<double> q3_in)
    : cohort(cohort_in), q2_values(std::move(q2_in)), q3_values(std::move(q3_in)) {
  check_axis(q2_values, "q2");
  check_axis(q3_values, "q3");
}

std::vector<SweepRow> sweep(const SweepGrid& grid) {
  std::vector<SweepRow> rows;
  rows.reserve(grid.q2_values.size() * grid.q3_values.size());
  for (const double q2 : grid.q2_values) {
    for (const double q3 : grid.q3_values) {
      SweepRow row{q2, q3, {}};
      try {
        row.measures = preference_measures(grid.cohort, OperatingPoint{q2, q3});
      } catch (const std::invalid_argument&) {
        // unresolvable point: leave every measure undefined
      }
      rows.push_back(row);
    }
  }
  return rows;
}

std::optional<double> spearman_rho(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw std::invalid_argument("spearman_rho: length mismatch");
  }
  const std::size_t n = x.size();
  if (n < 2) return std::nullopt;
  const std::vector<double> rx = average_ranks(x);
  const std::vector<double> ry = average_ranks(y);
  const double mean = static_cast<double>(n + 1) / 2.0;  // mean rank, ties preserve it
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = rx[i] - mean;
    const double dy = ry[i] - mean;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) return std::nullopt;  // a side is all ties
  return sxy / std::sqrt(sxx * syy);
}

CorrelationReport correlation_report(std::span<const SweepRow> rows, double threshold) {
  if (std::isnan(threshold)) {
    throw std::invalid_argument("correlation_report: threshold must be a number");
  }
  CorrelationReport report;
  report.threshold = threshold;
  for (const Measure measure : {Measure::E1, Measure::E2, Measure::E3, Measure::E4}) {
    std::vector<double> q3s;
    std::vector<double> values;
    for (const SweepRow& row : rows) {
      const std::optional<double>& value = row.measures.get(measure);
      if (value.has_value()) {
        q3s.push_back(row.q3);
        values.push_back(*value);
      }
    }
    if (values.size() < 3) {
      throw std::invalid_argument("correlation_report: measure " + to_string(measure) +
                                  " has " + std::to_string(values.size()) +
                                  " defined rows, need at least 3");
    }
    MeasureCorrelation result;
    result.rho = spearman_rho(q3s, values);
    result.strong_positive = result.rho.has_value() && *result.rho >= threshold;
    report.by_measure[static_cast<std::size_t>(measure)] = result;
  }
  return report;
}

}  // namespace simclean
