#include "checkworthy/model.hpp"

#include <map>

namespace checkworthy {

Model Model::Create(ModelConfig config, EmbeddingProvider provider) {
  config.embed_dim = provider.dim();
  config.tfidf_dim = provider.tfidf_dim();
  config.Validate();
  ModelParams params = ModelParams::Init(config);
  return Model{std::move(config), std::move(params), std::move(provider)};
}

ForwardResult Predict(const Model& model, const Batch& batch) {
  const Tensor3 embeddings = model.provider.Lookup(batch);
  const std::vector<double> extra = model.provider.TfidfFeatures(batch);
  return Forward(model.config, model.params, batch, embeddings, extra);
}

std::vector<double> Score(const Model& model,
                          std::span<const EncodedTweet> tweets,
                          std::size_t batch_size) {
  std::vector<double> scores;
  scores.reserve(tweets.size());
  for (const Batch& batch : MakeBatches(tweets, batch_size, false, 0,
                                        model.config.MaxWidth())) {
    const ForwardResult out = Predict(model, batch);
    scores.insert(scores.end(), out.probs.begin(), out.probs.end());
  }
  return scores;
}

std::vector<RankedRun> Rank(const Model& model,
                            std::span<const EncodedTweet> tweets,
                            const std::string& run_id,
                            std::size_t batch_size) {
  const std::vector<double> scores = Score(model, tweets, batch_size);
  std::vector<std::string> topics;
  std::map<std::string, std::vector<RunEntry>> by_topic;
  for (std::size_t i = 0; i < tweets.size(); ++i) {
    auto [it, inserted] = by_topic.try_emplace(tweets[i].topic_id);
    if (inserted) topics.push_back(tweets[i].topic_id);
    it->second.push_back(RunEntry{tweets[i].tweet_id, scores[i]});
  }
  std::vector<RankedRun> runs;
  for (const std::string& topic : topics) {
    runs.push_back(MakeRankedRun(topic, run_id, std::move(by_topic[topic])));
  }
  return runs;
}

}  // namespace checkworthy
