#include "simclean/sample_space.hpp"

namespace simclean {

namespace {

void require_pairable(const ChannelLabeling& labeling, const char* who) {
  if (labeling.channels() < 2) {
    throw std::invalid_argument(std::string(who) + ": need at least 2 channels, got " +
                                std::to_string(labeling.channels()));
  }
}

}  // namespace

std::vector<PairSample> enumerate_pairs(const ChannelLabeling& labeling) {
  require_pairable(labeling, "enumerate_pairs");
  const std::int64_t n = labeling.channels();
  std::vector<PairSample> pairs;
  pairs.reserve(static_cast<std::size_t>(pair_count(n)));
  for (std::int64_t a = 0; a < n; ++a) {
    const bool a_correct = labeling.labels[static_cast<std::size_t>(a)] == ChannelLabel::Correct;
    for (std::int64_t b = a + 1; b < n; ++b) {
      const bool b_correct =
          labeling.labels[static_cast<std::size_t>(b)] == ChannelLabel::Correct;
      pairs.push_back(PairSample{static_cast<std::int32_t>(a), static_cast<std::int32_t>(b),
                                 a_correct && b_correct ? PairTag::Similar
                                                        : PairTag::Dissimilar});
    }
  }
  return pairs;
}

CohortSpec cohort_of(const ChannelLabeling& labeling) {
  require_pairable(labeling, "cohort_of");
  return CohortSpec(labeling.channels(), labeling.correct_count());
}

}  // namespace simclean
