#pragma once

#include <span>
#include <string>
#include <vector>

#include "simclean/types.hpp"

namespace simclean {

struct Candidate {
  std::string id;
  OperatingPoint op;
};

struct RankedEntry {
  std::string id;
  OperatingPoint op;
  std::optional<double> value;
};

struct RankedResult {
  std::vector<RankedEntry> ranking;  ///< descending by value; ties by (q3, q2, id)
  std::string chosen;                ///< id of the first entry
  Measure measure;
};

/// Ranks candidates by the chosen measure evaluated on the cohort. Undefined
/// values rank below every defined value. Throws std::invalid_argument for an
/// empty set or duplicate ids, validation_error when the measure is undefined
/// for every candidate.
RankedResult select(std::span<const Candidate> candidates, const CohortSpec& cohort,
                    Measure measure);

}  // namespace simclean
