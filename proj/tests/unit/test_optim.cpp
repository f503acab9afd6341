#include <algorithm>
#include <cmath>
#include <limits>

#include "doctest.h"
#include "checkworthy/errors.hpp"
#include "checkworthy/optim.hpp"
#include "support/oracles.hpp"

using namespace checkworthy;

TEST_CASE("bce loss") {
  const std::vector<double> half = {0.5, 0.5};
  const std::vector<int> labels = {0, 1};
  CHECK(BceLoss(half, labels).loss == doctest::Approx(std::log(2.0)));
  const std::vector<double> sure = {1.0};
  const std::vector<int> one = {1};
  const auto r = BceLoss(sure, one);
  CHECK(r.loss == doctest::Approx(1e-7).epsilon(1e-3));
  CHECK(r.grads[0] == 0.0);
  CHECK_THROWS_AS(BceLoss(half, one), ArgumentError);

  std::vector<double> probs = {0.2, 0.7, 0.9};
  const std::vector<int> y = {0, 1, 0};
  const auto res = BceLoss(probs, y);
  for (std::size_t i = 0; i < probs.size(); ++i) {
    const double num = oracle::CentralDifference(
        [&] { return BceLoss(probs, y).loss; }, probs[i], 1e-7);
    CHECK(std::abs(num - res.grads[i]) < 1e-6);
  }
}

namespace {

ModelConfig Scalar() {
  ModelConfig c;
  c.filter_widths = {1};
  c.filters_per_width = 1;
  c.embed_dim = 1;
  return c;
}

}  // namespace

TEST_CASE("adam first step and zero gradient") {
  const ModelConfig c = Scalar();
  ModelParams p = ModelParams::Zeros(c);
  p.dense_weights = {0.3};
  ModelParams g = ModelParams::Zeros(c);
  AdamState s = AdamState::For(p, 0);
  OptimConfig oc;
  AdamStep(p, g, {}, nullptr, s, oc);
  CHECK(s.t == 1);
  CHECK(p.dense_weights[0] == 0.3);

  AdamState fresh = AdamState::For(p, 0);
  const double grad = 0.25;
  g.dense_weights = {grad};
  AdamStep(p, g, {}, nullptr, fresh, oc);
  // Bias-corrected m = g, v = g^2.
  const double expected = oc.learning_rate * grad / (grad + oc.epsilon);
  CHECK(0.3 - p.dense_weights[0] == doctest::Approx(expected).epsilon(1e-12));
  CHECK(fresh.t == 1);
  for (const auto& v : fresh.v) {
    for (double x : v) CHECK(x >= 0.0);
  }
}

TEST_CASE("adam rejects non-finite gradients untouched") {
  const ModelConfig c = Scalar();
  ModelParams p = ModelParams::Zeros(c);
  ModelParams g = ModelParams::Zeros(c);
  g.biases[0][0] = std::numeric_limits<double>::quiet_NaN();
  AdamState s = AdamState::For(p, 0);
  CHECK_THROWS_AS(AdamStep(p, g, {}, nullptr, s, OptimConfig{}), TrainingError);
  CHECK(s.t == 0);
}

TEST_CASE("lazy embedding rows") {
  const ModelConfig c = Scalar();
  ModelParams p = ModelParams::Zeros(c);
  ModelParams g = ModelParams::Zeros(c);
  std::vector<double> table = {0, 0, 1, 2, 3, 4};  // 6 rows, dim 1
  const std::vector<double> before = table;
  AdamState s = AdamState::For(p, table.size());
  RowGradients rg;
  rg.dim = 1;
  rg.rows = {4};
  rg.values = {0.5};
  AdamStep(p, g, table, &rg, s, OptimConfig{});
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (i == 4) CHECK(table[i] < before[i]);
    else CHECK(table[i] == before[i]);
  }
}

TEST_CASE("config presets") {
  const OptimConfig standard = OptimConfig::Standard();
  CHECK(standard.learning_rate == 2e-5);
  CHECK(standard.epochs == 8);
  CHECK(standard.batch_size == 10);
  const OptimConfig acc = OptimConfig::Acceptance();
  CHECK(acc.learning_rate == 1e-3);
  CHECK(acc.epochs == 50);
  OptimConfig bad;
  bad.beta1 = 1.0;
  CHECK_THROWS_AS(bad.Validate(), ConfigError);
  bad = OptimConfig{};
  bad.epochs = 0;
  CHECK_THROWS_AS(bad.Validate(), ConfigError);
}

namespace {

std::vector<EncodedTweet> Synthetic(std::size_t n) {
  std::vector<EncodedTweet> out;
  for (std::size_t i = 0; i < n; ++i) {
    EncodedTweet t;
    t.label = int(i % 2);
    t.ids = {kClsId, TokenId(4 + i % 5), TokenId(t.label ? 9 : 10),
             TokenId(4 + i % 3), kSepId};
    t.tweet_id = std::to_string(1000 + i);
    t.topic_id = "x";
    out.push_back(t);
  }
  return out;
}

Model SmallModel(std::uint64_t seed) {
  ModelConfig c;
  c.filter_widths = {2, 3};
  c.filters_per_width = 4;
  c.seed = seed;
  return Model::Create(c, EmbeddingProvider::Trainable(11, 6, 0.1, seed));
}

}  // namespace

TEST_CASE("training step counts, history and determinism") {
  const auto data = Synthetic(672);
  OptimConfig oc = OptimConfig::Standard();
  oc.seed = 3;
  const TrainResult r = Train(SmallModel(1), data, {}, oc);
  CHECK(r.steps == 544);
  CHECK(r.history.size() == 8);
  CHECK(std::isnan(r.history[0].dev_map));

  const TrainResult again = Train(SmallModel(1), data, {}, oc);
  const auto a = r.final_model.params.Tensors();
  const auto b = again.final_model.params.Tensors();
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(std::equal(a[i].begin(), a[i].end(), b[i].begin()));
  }
  CHECK(std::equal(r.final_model.provider.table().begin(),
                   r.final_model.provider.table().end(),
                   again.final_model.provider.table().begin()));
}

TEST_CASE("a single repeated tweet is fitted monotonically") {
  std::vector<EncodedTweet> one(1, Synthetic(2)[1]);
  Model m = SmallModel(4);
  const Batch batch = MakeBatches(one, 1, false, 0, 3)[0];
  OptimConfig oc = OptimConfig::Acceptance();
  AdamState state = AdamState::For(m.params, m.provider.table().size());
  double prev = BatchLoss(m, batch);
  const std::vector<double> initial(m.provider.table().begin(),
                                    m.provider.table().end());
  for (int step = 0; step < 12; ++step) {
    const Tensor3 e = m.provider.Lookup(batch);
    const auto f = Predict(m, batch);
    const auto bce = BceLoss(f.probs, batch.labels);
    const Gradients g = Backward(m.config, m.params, batch, e, f.trace, f, bce.grads);
    const RowGradients rg = m.provider.GatherGradients(batch, g.embeddings);
    AdamStep(m.params, g.params, m.provider.table(), &rg, state, oc);
    const double loss = BatchLoss(m, batch);
    CHECK(loss < prev);
    prev = loss;
  }
  CHECK(state.t == 12);

  // Only rows looked up by the batch moved; PAD stays zero.
  const std::size_t dim = m.provider.dim();
  const auto& ids = one[0].ids;
  for (std::size_t row = 0; row < m.provider.vocab_size(); ++row) {
    const bool used = row != std::size_t(kPadId) &&
                      std::find(ids.begin(), ids.end(), TokenId(row)) != ids.end();
    const bool moved = !std::equal(
        initial.begin() + row * dim, initial.begin() + (row + 1) * dim,
        m.provider.table().begin() + row * dim);
    CHECK(moved == used);
  }
  for (std::size_t d = 0; d < dim; ++d) CHECK(m.provider.table()[d] == 0.0);
}

TEST_CASE("ranking") {
  const Model m = SmallModel(6);
  CHECK(Rank(m, std::vector<EncodedTweet>{}, "r").empty());
  auto data = Synthetic(6);
  data[3].ids = data[1].ids;  // same input, same score
  data[3].tweet_id = "0999";
  const auto runs = Rank(m, data, "r", 4);
  REQUIRE(runs.size() == 1);
  ValidateRankedRun(runs[0]);
  const auto scores = Score(m, data, 1);
  const auto& e = runs[0].entries;
  auto pos = [&](const std::string& id) {
    return std::find_if(e.begin(), e.end(),
                        [&](const RunEntry& x) { return x.tweet_id == id; }) -
           e.begin();
  };
  CHECK(scores[1] == scores[3]);
  CHECK(pos("0999") + 1 == pos(data[1].tweet_id));
}

TEST_CASE("dev selection keeps the best epoch") {
  const auto data = Synthetic(40);
  OptimConfig oc = OptimConfig::Acceptance();
  oc.epochs = 5;
  const TrainResult r = Train(SmallModel(2), data, data, oc);
  double best = -1;
  std::size_t best_epoch = 0;
  for (const auto& h : r.history) {
    if (h.dev_map > best) {
      best = h.dev_map;
      best_epoch = h.epoch;
    }
  }
  CHECK(r.best_epoch == best_epoch);
}
