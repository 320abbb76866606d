#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "simclean/types.hpp"

namespace simclean {

/// Cartesian (q2, q3) grid; value lists must be nonempty, strictly ascending
/// and within [0,1].
struct SweepGrid {
  SweepGrid(CohortSpec cohort, std::vector<double> q2_values, std::vector<double> q3_values);

  CohortSpec cohort;
  std::vector<double> q2_values;
  std::vector<double> q3_values;
};

struct SweepRow {
  double q2 = 0;
  double q3 = 0;
  PreferenceMeasures measures;
};

/// One row per (q2, q3), q2 outer / q3 inner. Rows whose measures cannot be
/// evaluated carry undefined values; the sweep itself never aborts.
std::vector<SweepRow> sweep(const SweepGrid& grid);

/// Spearman rank correlation with average ranks for ties; undefined when
/// either side is rank-degenerate (all values tied).
std::optional<double> spearman_rho(std::span<const double> x, std::span<const double> y);

struct MeasureCorrelation {
  std::optional<double> rho;
  bool strong_positive = false;
};

struct CorrelationReport {
  std::array<MeasureCorrelation, 4> by_measure;  // E1..E4
  double threshold = 0.95;

  const MeasureCorrelation& get(Measure m) const {
    return by_measure[static_cast<std::size_t>(m)];
  }
};

/// Per-measure Spearman rho against q3, excluding rows where the measure is
/// undefined. A measure with fewer than 3 defined rows is an error naming the
/// measure. strong_positive means rho >= threshold.
CorrelationReport correlation_report(std::span<const SweepRow> rows, double threshold = 0.95);

}  // namespace simclean
