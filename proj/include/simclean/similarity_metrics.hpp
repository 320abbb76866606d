#pragma once

#include <cstdint>
#include <span>

#include "simclean/judging.hpp"
#include "simclean/types.hpp"

namespace simclean {

/// Pair-level confusion held as exact counts so class-total identities can be
/// checked as integer equalities; the k fractions are derived views.
struct SimilarityConfusion {
  std::int64_t similar_predicted_similar = 0;        // k1 numerator
  std::int64_t similar_predicted_dissimilar = 0;     // k2 numerator
  std::int64_t dissimilar_predicted_dissimilar = 0;  // k3 numerator
  std::int64_t dissimilar_predicted_similar = 0;     // k4 numerator

  std::int64_t total() const {
    return similar_predicted_similar + similar_predicted_dissimilar +
           dissimilar_predicted_dissimilar + dissimilar_predicted_similar;
  }
  std::int64_t similar_total() const {
    return similar_predicted_similar + similar_predicted_dissimilar;
  }
  std::int64_t dissimilar_total() const {
    return dissimilar_predicted_dissimilar + dissimilar_predicted_similar;
  }

  double k1() const { return fraction(similar_predicted_similar); }
  double k2() const { return fraction(similar_predicted_dissimilar); }
  double k3() const { return fraction(dissimilar_predicted_dissimilar); }
  double k4() const { return fraction(dissimilar_predicted_similar); }

 private:
  double fraction(std::int64_t count) const {
    return static_cast<double>(count) / static_cast<double>(total());
  }
};

/// Counts predictions against the truth tags of `pairs`. The prediction set
/// must cover exactly the same pair space.
SimilarityConfusion confusion_from_predictions(std::span<const PairSample> pairs,
                                               const PairPredictionSet& predictions);

/// Per-class recalls; a recall over an empty class is undefined.
OperatingPoint recalls_from_confusion(const SimilarityConfusion& confusion);

}  // namespace simclean
