#include "simclean/similarity_metrics.hpp"

namespace simclean {

SimilarityConfusion confusion_from_predictions(std::span<const PairSample> pairs,
                                               const PairPredictionSet& predictions) {
  if (static_cast<std::int64_t>(pairs.size()) != predictions.pair_count()) {
    throw std::invalid_argument("confusion_from_predictions: " +
                                std::to_string(pairs.size()) + " pairs vs " +
                                std::to_string(predictions.pair_count()) + " predictions");
  }
  SimilarityConfusion confusion;
  for (const PairSample& pair : pairs) {
    const PairTag predicted = predictions.at(pair.a, pair.b);
    if (pair.tag == PairTag::Similar) {
      (predicted == PairTag::Similar ? confusion.similar_predicted_similar
                                     : confusion.similar_predicted_dissimilar) += 1;
    } else {
      (predicted == PairTag::Dissimilar ? confusion.dissimilar_predicted_dissimilar
                                        : confusion.dissimilar_predicted_similar) += 1;
    }
  }
  return confusion;
}

OperatingPoint recalls_from_confusion(const SimilarityConfusion& confusion) {
  OperatingPoint op;
  if (confusion.similar_total() > 0) {
    op.q2 = static_cast<double>(confusion.similar_predicted_similar) /
            static_cast<double>(confusion.similar_total());
  }
  if (confusion.dissimilar_total() > 0) {
    op.q3 = static_cast<double>(confusion.dissimilar_predicted_dissimilar) /
            static_cast<double>(confusion.dissimilar_total());
  }
  return op;
}

}  // namespace simclean
