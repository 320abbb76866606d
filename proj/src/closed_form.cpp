#include "simclean/closed_form.hpp"

#include <cmath>

namespace simclean {

namespace {

double checked_recall(const std::optional<double>& value, const char* name, const char* why) {
  if (!value.has_value()) {
    throw std::invalid_argument(std::string(name) + " is undefined but required (" + why + ")");
  }
  if (std::isnan(*value) || *value < 0.0 || *value > 1.0) {
    throw std::invalid_argument(std::string(name) + " must lie in [0,1]");
  }
  return *value;
}

}  // namespace

double pow_int(double base, std::int64_t exponent) {
  if (exponent < 0) {
    throw std::invalid_argument("pow_int: negative exponent");
  }
  if (exponent == 0) return 1.0;  // includes 0^0
  if (base == 0.0) return 0.0;
  if (base == 1.0) return 1.0;
  if (exponent <= 64) {
    return std::pow(base, static_cast<double>(exponent));
  }
  return std::exp(static_cast<double>(exponent) * std::log(base));
}

ChannelOutcomeProbabilities outcome_probabilities(const CohortSpec& cohort,
                                                  const OperatingPoint& op) {
  const std::int64_t N = cohort.channels();
  const std::int64_t n = cohort.correct();
  const double q1 = cohort.q1();

  ChannelOutcomeProbabilities p;

  if (n > 0) {
    // A correct channel is judged incorrect iff its n-1 similar pairs are all
    // missed and its N-n dissimilar pairs are all caught.
    double miss = 1.0;
    if (n >= 2) {
      miss *= pow_int(1.0 - checked_recall(op.q2, "Q2", "similar pairs exist"), n - 1);
    }
    if (n <= N - 1) {
      miss *= pow_int(checked_recall(op.q3, "Q3", "dissimilar pairs exist"), N - n);
    }
    p.p_rw = q1 * miss;
    p.p_rr = q1 - p.p_rw;
  }

  if (n < N) {
    // An incorrect channel sits in N-1 dissimilar pairs and is judged
    // incorrect iff every one of them is predicted dissimilar.
    const double q3 = checked_recall(op.q3, "Q3", "dissimilar pairs exist");
    p.p_ww = (1.0 - q1) * pow_int(q3, N - 1);
    p.p_wr = (1.0 - q1) - p.p_ww;
  }

  return p;
}

PreferenceMeasures preference_measures(const CohortSpec& cohort, const OperatingPoint& op) {
  const std::int64_t N = cohort.channels();
  const std::int64_t n = cohort.correct();
  const ChannelOutcomeProbabilities p = outcome_probabilities(cohort, op);

  PreferenceMeasures m;
  if (n < N) {
    m.e1 = pow_int(*op.q3, N - 1);
  }
  if (p.p_ww + p.p_rw > 0.0) {
    m.e2 = p.p_ww / (p.p_ww + p.p_rw);
  }
  if (n > 0) {
    double miss = 1.0;
    if (n >= 2) miss *= pow_int(1.0 - *op.q2, n - 1);
    if (n <= N - 1) miss *= pow_int(*op.q3, N - n);
    m.e3 = 1.0 - miss;
  }
  if (p.p_rr + p.p_wr > 0.0) {
    m.e4 = p.p_rr / (p.p_rr + p.p_wr);
  }
  return m;
}

PreferenceMeasures measures_from_outcomes(const ChannelOutcomeProbabilities& p) {
  PreferenceMeasures m;
  if (p.p_ww + p.p_wr > 0.0) m.e1 = p.p_ww / (p.p_ww + p.p_wr);
  if (p.p_ww + p.p_rw > 0.0) m.e2 = p.p_ww / (p.p_ww + p.p_rw);
  if (p.p_rr + p.p_rw > 0.0) m.e3 = p.p_rr / (p.p_rr + p.p_rw);
  if (p.p_rr + p.p_wr > 0.0) m.e4 = p.p_rr / (p.p_rr + p.p_wr);
  return m;
}

}  // namespace simclean
