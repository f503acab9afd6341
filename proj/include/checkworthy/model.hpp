#ifndef CHECKWORTHY_MODEL_HPP_
#define CHECKWORTHY_MODEL_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "checkworthy/cnn.hpp"
#include "checkworthy/dataset_io.hpp"
#include "checkworthy/features.hpp"
#include "checkworthy/vocab.hpp"

namespace checkworthy {

// A classifier ready to score: architecture, weights and its input provider.
struct Model {
  ModelConfig config;
  ModelParams params;
  EmbeddingProvider provider;

  static Model Create(ModelConfig config, EmbeddingProvider provider);
};

ForwardResult Predict(const Model& model, const Batch& batch);

// Probabilities in input order. Batches are padded to at least the widest
// filter, so scores do not depend on batch_size.
std::vector<double> Score(const Model& model,
                          std::span<const EncodedTweet> tweets,
                          std::size_t batch_size = 10);

// One ranked run per topic, topics in first-seen order.
std::vector<RankedRun> Rank(const Model& model,
                            std::span<const EncodedTweet> tweets,
                            const std::string& run_id,
                            std::size_t batch_size = 10);

}  // namespace checkworthy

#endif  // CHECKWORTHY_MODEL_HPP_
