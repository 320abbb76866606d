#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "simclean/analysis.hpp"
#include "simclean/judging.hpp"
#include "simclean/selection.hpp"
#include "simclean/types.hpp"

namespace simclean {

/// Fixed-format number rendering for file output: 12 significant digits,
/// "." decimal separator, no locale dependence.
std::string format_number(double value);
std::string format_optional(const std::optional<double>& value);  // "undefined" when empty

/// Predictions CSV: header "a,b,prediction", a < b integer channel indices,
/// prediction in {similar,dissimilar}. The channel count is inferred as
/// max(b)+1 unless given. Coverage must be complete; errors cite the line
/// number or the offending pair.
PairPredictionSet read_predictions_csv(std::istream& in,
                                       std::optional<std::int64_t> channels = std::nullopt);

/// Truth CSV: header "channel,label", label in {correct,incorrect}; channels
/// must cover 0..N-1 exactly once.
ChannelLabeling read_truth_csv(std::istream& in);

/// Candidates CSV: header "id,q2,q3" with q2, q3 in [0,1].
std::vector<Candidate> read_candidates_csv(std::istream& in);

void write_verdicts_csv(std::ostream& out, const ChannelVerdicts& verdicts);
void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows);
void write_correlation_csv(std::ostream& out, const CorrelationReport& report);
void write_ranking_csv(std::ostream& out, const RankedResult& result);

/// Grid spec: either a single value "0.8" or "start:stop:step", inclusive of
/// stop up to rounding.
std::vector<double> parse_grid(const std::string& text);

}  // namespace simclean
