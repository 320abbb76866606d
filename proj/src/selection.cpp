#include "simclean/selection.hpp"

#include <algorithm>
#include <limits>
#include <unordered_set>

#include "simclean/closed_form.hpp"

namespace simclean {

namespace {

double or_lowest(const std::optional<double>& v) {
  return v.value_or(-std::numeric_limits<double>::infinity());
}

/// Descending by value (undefined last), then higher q3, higher q2, id.
bool ranks_before(const RankedEntry& a, const RankedEntry& b) {
  if (a.value.has_value() != b.value.has_value()) return a.value.has_value();
  if (a.value.has_value() && *a.value != *b.value) return *a.value > *b.value;
  if (or_lowest(a.op.q3) != or_lowest(b.op.q3)) return or_lowest(a.op.q3) > or_lowest(b.op.q3);
  if (or_lowest(a.op.q2) != or_lowest(b.op.q2)) return or_lowest(a.op.q2) > or_lowest(b.op.q2);
  return a.id < b.id;
}

}  // namespace

RankedResult select(std::span<const Candidate> candidates, const CohortSpec& cohort,
                    Measure measure) {
  if (candidates.empty()) {
    throw std::invalid_argument("select: no candidates given");
  }
  std::unordered_set<std::string> ids;
  for (const Candidate& candidate : candidates) {
    if (candidate.id.empty()) {
      throw std::invalid_argument("select: candidate with empty id");
    }
    if (!ids.insert(candidate.id).second) {
      throw std::invalid_argument("select: duplicate candidate id '" + candidate.id + "'");
    }
  }

  RankedResult result;
  result.measure = measure;
  result.ranking.reserve(candidates.size());
  bool any_defined = false;
  for (const Candidate& candidate : candidates) {
    const PreferenceMeasures measures = preference_measures(cohort, candidate.op);
    const std::optional<double>& value = measures.get(measure);
    any_defined |= value.has_value();
    result.ranking.push_back(RankedEntry{candidate.id, candidate.op, value});
  }
  if (!any_defined) {
    throw validation_error("select: measure " + to_string(measure) +
                           " is undefined for every candidate on this cohort");
  }
  std::sort(result.ranking.begin(), result.ranking.end(), ranks_before);
  result.chosen = result.ranking.front().id;
  return result;
}

}  // namespace simclean
