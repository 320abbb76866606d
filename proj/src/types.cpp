#include "simclean/types.hpp"

#include <algorithm>

namespace simclean {

std::int64_t ChannelLabeling::correct_count() const {
  return std::count(labels.begin(), labels.end(), ChannelLabel::Correct);
}

ChannelLabeling canonical_labeling(std::int64_t channels, std::int64_t correct) {
  if (channels < 0 || correct < 0 || correct > channels) {
    throw std::invalid_argument("canonical_labeling: need 0 <= correct <= channels");
  }
  ChannelLabeling labeling;
  labeling.labels.assign(static_cast<std::size_t>(channels), ChannelLabel::Incorrect);
  std::fill_n(labeling.labels.begin(), static_cast<std::size_t>(correct),
              ChannelLabel::Correct);
  return labeling;
}

CohortSpec::CohortSpec(std::int64_t channels, std::int64_t correct)
    : channels_(channels), correct_(correct) {
  if (channels < 2) {
    throw std::invalid_argument("CohortSpec: at least 2 channels required, got " +
                                std::to_string(channels));
  }
  if (correct < 0 || correct > channels) {
    throw std::invalid_argument("CohortSpec: correct count " + std::to_string(correct) +
                                " outside [0, " + std::to_string(channels) + "]");
  }
}

Measure parse_measure(const std::string& name) {
  if (name == "e1" || name == "E1") return Measure::E1;
  if (name == "e2" || name == "E2") return Measure::E2;
  if (name == "e3" || name == "E3") return Measure::E3;
  if (name == "e4" || name == "E4") return Measure::E4;
  throw std::invalid_argument("unknown measure '" + name + "' (expected e1|e2|e3|e4)");
}

std::string to_string(Measure m) {
  switch (m) {
    case Measure::E1: return "e1";
    case Measure::E2: return "e2";
    case Measure::E3: return "e3";
    case Measure::E4: return "e4";
  }
  throw std::invalid_argument("invalid measure");
}

const std::optional<double>& PreferenceMeasures::get(Measure m) const {
  switch (m) {
    case Measure::E1: return e1;
    case Measure::E2: return e2;
    case Measure::E3: return e3;
    case Measure::E4: return e4;
  }
  throw std::invalid_argument("invalid measure");
}

}  // namespace simclean
