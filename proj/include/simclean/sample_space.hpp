#pragma once

#include <vector>

#include "simclean/types.hpp"

namespace simclean {

/// All C(N,2) channel pairs of a labeling in lexicographic (a,b) order,
/// tagged Similar iff both endpoints are Correct. Requires N >= 2.
std::vector<PairSample> enumerate_pairs(const ChannelLabeling& labeling);

/// Cohort counts of a labeling. Requires N >= 2.
CohortSpec cohort_of(const ChannelLabeling& labeling);

}  // namespace simclean
