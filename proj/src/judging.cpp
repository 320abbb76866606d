#include "simclean/judging.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <sstream>

namespace simclean {

namespace {

std::string pair_name(std::int64_t a, std::int64_t b) {
  return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
}

}  // namespace

PairPredictionSet::PairPredictionSet(std::int64_t channels) : channels_(channels) {
  if (channels < 2) {
    throw std::invalid_argument("PairPredictionSet: need at least 2 channels, got " +
                                std::to_string(channels));
  }
  tags_.assign(static_cast<std::size_t>(simclean::pair_count(channels)), PairTag::Dissimilar);
}

PairPredictionSet PairPredictionSet::filled(std::int64_t channels, PairTag fill) {
  PairPredictionSet set(channels);
  std::fill(set.tags_.begin(), set.tags_.end(), fill);
  return set;
}

PairPredictionSet PairPredictionSet::from_entries(
    std::int64_t channels,
    std::span<const std::tuple<std::int32_t, std::int32_t, PairTag>> entries) {
  PairPredictionSet set(channels);
  std::vector<bool> seen(set.tags_.size(), false);
  for (const auto& [a, b, tag] : entries) {
    if (a < 0 || b < 0 || a >= b || b >= channels) {
      throw std::invalid_argument("prediction pair " + pair_name(a, b) +
                                  " is not a valid (a<b) pair for " +
                                  std::to_string(channels) + " channels");
    }
    const auto idx = static_cast<std::size_t>(pair_index(a, b, channels));
    if (seen[idx]) {
      throw std::invalid_argument("duplicate prediction for pair " + pair_name(a, b));
    }
    seen[idx] = true;
    set.tags_[idx] = tag;
  }
  for (std::int64_t a = 0; a < channels; ++a) {
    for (std::int64_t b = a + 1; b < channels; ++b) {
      if (!seen[static_cast<std::size_t>(pair_index(a, b, channels))]) {
        throw std::invalid_argument("prediction set is missing pair " + pair_name(a, b));
      }
    }
  }
  return set;
}

PairTag PairPredictionSet::at(std::int64_t a, std::int64_t b) const {
  if (a < 0 || a >= b || b >= channels_) {
    throw std::invalid_argument("pair " + pair_name(a, b) + " out of range");
  }
  return tags_[static_cast<std::size_t>(pair_index(a, b, channels_))];
}

void PairPredictionSet::set(std::int64_t a, std::int64_t b, PairTag tag) {
  if (a < 0 || a >= b || b >= channels_) {
    throw std::invalid_argument("pair " + pair_name(a, b) + " out of range");
  }
  tags_[static_cast<std::size_t>(pair_index(a, b, channels_))] = tag;
}

JudgingRule JudgingRule::threshold(std::int64_t numerator, std::int64_t denominator) {
  if (denominator <= 0 || numerator <= 0 || numerator > denominator) {
    throw std::invalid_argument("threshold theta must lie in (0,1]");
  }
  const std::int64_t divisor = std::gcd(numerator, denominator);
  return JudgingRule(false, numerator / divisor, denominator / divisor);
}

JudgingRule JudgingRule::threshold(double theta) {
  if (std::isnan(theta) || !(theta > 0.0) || theta > 1.0) {
    throw std::invalid_argument("threshold theta must lie in (0,1], got " +
                                std::to_string(theta));
  }
  // Read theta as the decimal the caller wrote: the shortest round-trip
  // representation of the double, e.g. 0.9 -> 9/10 rather than the slightly
  // larger binary neighbor.
  char buffer[40];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), theta);
  const std::string text(buffer, result.ptr);

  std::int64_t exponent10 = 0;
  std::string mantissa = text;
  if (const auto e_pos = text.find_first_of("eE"); e_pos != std::string::npos) {
    exponent10 = std::stoll(text.substr(e_pos + 1));
    mantissa = text.substr(0, e_pos);
  }
  std::int64_t scale = 0;
  if (const auto dot = mantissa.find('.'); dot != std::string::npos) {
    scale = static_cast<std::int64_t>(mantissa.size() - dot - 1);
    mantissa.erase(dot, 1);
  }
  scale -= exponent10;
  std::int64_t numerator = std::stoll(mantissa);
  while (scale < 0) {
    numerator *= 10;
    ++scale;
  }
  if (scale > 18) {
    // below 1e-18 the fraction does not fit; any dissimilar prediction meets
    // such a theta for every reachable N
    return JudgingRule(false, 1, 1000000000000000000LL);
  }
  std::int64_t denominator = 1;
  for (std::int64_t i = 0; i < scale; ++i) denominator *= 10;
  return threshold(numerator, denominator);
}

bool JudgingRule::meets_threshold(std::int64_t dissimilar_count, std::int64_t others) const {
  // count >= (num/den) * others, evaluated exactly in integers
  const __int128 lhs = static_cast<__int128>(dissimilar_count) * theta_den_;
  const __int128 rhs = static_cast<__int128>(theta_num_) * others;
  return lhs >= rhs;
}

JudgingRule parse_rule(const std::string& text) {
  if (text == "absolute") return JudgingRule::absolute();
  if (text.rfind("threshold:", 0) == 0) {
    const std::string value = text.substr(10);
    std::size_t used = 0;
    double theta = 0;
    try {
      theta = std::stod(value, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("cannot parse threshold value '" + value + "'");
    }
    if (used != value.size()) {
      throw std::invalid_argument("cannot parse threshold value '" + value + "'");
    }
    return JudgingRule::threshold(theta);
  }
  throw std::invalid_argument("unknown judging rule '" + text +
                              "' (expected absolute or threshold:<theta>)");
}

std::string to_string(const JudgingRule& rule) {
  if (rule.is_absolute()) return "absolute";
  std::ostringstream out;
  out << "threshold:" << rule.theta();
  return out.str();
}

void judge(const PairPredictionSet& predictions, const JudgingRule& rule,
           std::vector<Verdict>& out) {
  const std::int64_t channels = predictions.channels();
  // A channel's dissimilar-prediction count determines both rules: the
  // absolute rule judges incorrect iff all N-1 incident pairs are dissimilar.
  static thread_local std::vector<std::int32_t> dissimilar_counts;
  dissimilar_counts.assign(static_cast<std::size_t>(channels), 0);
  const auto tags = predictions.flat();
  std::size_t idx = 0;
  for (std::int64_t a = 0; a < channels; ++a) {
    for (std::int64_t b = a + 1; b < channels; ++b, ++idx) {
      if (tags[idx] == PairTag::Dissimilar) {
        ++dissimilar_counts[static_cast<std::size_t>(a)];
        ++dissimilar_counts[static_cast<std::size_t>(b)];
      }
    }
  }
  out.resize(static_cast<std::size_t>(channels));
  const std::int64_t others = channels - 1;
  for (std::int64_t i = 0; i < channels; ++i) {
    const std::int64_t count = dissimilar_counts[static_cast<std::size_t>(i)];
    const bool incorrect =
        rule.is_absolute() ? count == others : rule.meets_threshold(count, others);
    out[static_cast<std::size_t>(i)] = incorrect ? Verdict::Incorrect : Verdict::Correct;
  }
}

ChannelVerdicts judge(const PairPredictionSet& predictions, const JudgingRule& rule) {
  ChannelVerdicts verdicts;
  judge(predictions, rule, verdicts.verdicts);
  return verdicts;
}

ChannelOutcomeProbabilities channel_confusion(const ChannelVerdicts& verdicts,
                                              const ChannelLabeling& truth) {
  if (verdicts.channels() != truth.channels()) {
    throw std::invalid_argument("channel_confusion: " + std::to_string(verdicts.channels()) +
                                " verdicts vs " + std::to_string(truth.channels()) +
                                " truth labels");
  }
  const std::int64_t channels = truth.channels();
  if (channels == 0) {
    throw std::invalid_argument("channel_confusion: empty labeling");
  }
  std::int64_t rr = 0, rw = 0, ww = 0, wr = 0;
  for (std::int64_t i = 0; i < channels; ++i) {
    const bool correct = truth.labels[static_cast<std::size_t>(i)] == ChannelLabel::Correct;
    const bool judged_correct =
        verdicts.verdicts[static_cast<std::size_t>(i)] == Verdict::Correct;
    if (correct) {
      (judged_correct ? rr : rw) += 1;
    } else {
      (judged_correct ? wr : ww) += 1;
    }
  }
  const auto total = static_cast<double>(channels);
  return ChannelOutcomeProbabilities{static_cast<double>(rr) / total,
                                     static_cast<double>(rw) / total,
                                     static_cast<double>(ww) / total,
                                     static_cast<double>(wr) / total};
}

}  // namespace simclean
