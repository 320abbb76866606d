#pragma once

#include <cstdint>

#include "simclean/types.hpp"

namespace simclean {

/// base^exponent for exponent >= 0 with the 0^0 = 1 convention. Exponents
/// above 64 are evaluated in log space to keep large-N powers stable.
double pow_int(double base, std::int64_t exponent);

/// Joint channel-level outcome probabilities under the absolute judging rule:
///
///   p_rw = Q1 * (1-Q2)^(n-1) * Q3^(N-n)      p_rr = Q1 - p_rw
///   p_ww = (1-Q1) * Q3^(N-1)                 p_wr = (1-Q1) - p_ww
///
/// A recall may be omitted only when every exponent applied to it is zero or
/// its truth class is empty; otherwise std::invalid_argument.
ChannelOutcomeProbabilities outcome_probabilities(const CohortSpec& cohort,
                                                  const OperatingPoint& op);

/// Task-preference measures E1..E4 for the cohort and operating point.
/// E1 = Q3^(N-1) and E3 = 1 - (1-Q2)^(n-1) Q3^(N-n) use the reduced forms;
/// E2 and E4 are ratios of the joint probabilities so Q3 = 0 needs no
/// special casing. Zero-denominator measures are undefined, not errors.
PreferenceMeasures preference_measures(const CohortSpec& cohort, const OperatingPoint& op);

/// Measure ratios from already-known joint probabilities (empirical path).
PreferenceMeasures measures_from_outcomes(const ChannelOutcomeProbabilities& p);

}  // namespace simclean
