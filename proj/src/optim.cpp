#include "checkworthy/optim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "checkworthy/errors.hpp"
#include "checkworthy/metrics.hpp"

namespace checkworthy {

OptimConfig OptimConfig::Standard() { return OptimConfig{}; }

OptimConfig OptimConfig::Acceptance() {
  OptimConfig c;
  c.learning_rate = 1e-3;
  c.epochs = 50;
  return c;
}

void OptimConfig::Validate() const {
  if (!(learning_rate > 0.0)) throw ConfigError("learning_rate must be > 0");
  if (!(beta1 >= 0.0 && beta1 < 1.0) || !(beta2 >= 0.0 && beta2 < 1.0)) {
    throw ConfigError("Adam betas must lie in [0, 1)");
  }
  if (!(epsilon > 0.0)) throw ConfigError("epsilon must be > 0");
  if (epochs < 1) throw ConfigError("epochs must be >= 1");
  if (batch_size < 1) throw ConfigError("batch_size must be >= 1");
}

BceResult BceLoss(std::span<const double> probs, std::span<const int> labels) {
  if (probs.size() != labels.size()) {
    throw ArgumentError("bce: probs and labels differ in length");
  }
  if (probs.empty()) throw ArgumentError("bce: empty input");
  const double n = double(probs.size());
  BceResult out;
  out.grads.resize(probs.size());
  for (std::size_t i = 0; i < probs.size(); ++i) {
    const double raw = probs[i];
    const double p = std::clamp(raw, kProbClamp, 1.0 - kProbClamp);
    const double y = labels[i];
    out.loss -= y * std::log(p) + (1.0 - y) * std::log(1.0 - p);
    const bool clamped = raw < kProbClamp || raw > 1.0 - kProbClamp;
    out.grads[i] = clamped ? 0.0 : -(y / p - (1.0 - y) / (1.0 - p)) / n;
  }
  out.loss /= n;
  return out;
}

AdamState AdamState::For(const ModelParams& params, std::size_t table_size) {
  AdamState s;
  for (auto t : params.Tensors()) {
    s.m.emplace_back(t.size(), 0.0);
    s.v.emplace_back(t.size(), 0.0);
  }
  s.table_m.assign(table_size, 0.0);
  s.table_v.assign(table_size, 0.0);
  return s;
}

namespace {

bool AllFinite(std::span<const double> xs) {
  return std::all_of(xs.begin(), xs.end(),
                     [](double x) { return std::isfinite(x); });
}

struct AdamCoefficients {
  double lr;
  double beta1;
  double beta2;
  double epsilon;
  double correction1;
  double correction2;

  void Update(double& x, double g, double& m, double& v) const {
    m = beta1 * m + (1.0 - beta1) * g;
    v = beta2 * v + (1.0 - beta2) * g * g;
    const double m_hat = m / correction1;
    const double v_hat = v / correction2;
    x -= lr * m_hat / (std::sqrt(v_hat) + epsilon);
  }
};

}  // namespace

void AdamStep(ModelParams& params, const ModelParams& grads,
              std::span<double> table, const RowGradients* row_grads,
              AdamState& state, const OptimConfig& config) {
  auto p_tensors = params.Tensors();
  const auto g_tensors = grads.Tensors();
  if (p_tensors.size() != g_tensors.size() ||
      p_tensors.size() != state.m.size()) {
    throw InternalError("adam: parameter/gradient/state layout mismatch");
  }
  for (std::size_t i = 0; i < p_tensors.size(); ++i) {
    if (p_tensors[i].size() != g_tensors[i].size() ||
        p_tensors[i].size() != state.m[i].size()) {
      throw InternalError("adam: tensor " + std::to_string(i) +
                          " shape mismatch");
    }
    if (!AllFinite(g_tensors[i])) {
      throw TrainingError("non-finite gradient in parameter tensor " +
                          std::to_string(i));
    }
  }
  if (row_grads != nullptr) {
    if (table.size() != state.table_m.size()) {
      throw InternalError("adam: embedding table / state size mismatch");
    }
    if (!AllFinite(row_grads->values)) {
      throw TrainingError("non-finite gradient in embedding table");
    }
  }

  ++state.t;
  const double t = double(state.t);
  const AdamCoefficients coef{config.learning_rate,
                              config.beta1,
                              config.beta2,
                              config.epsilon,
                              1.0 - std::pow(config.beta1, t),
                              1.0 - std::pow(config.beta2, t)};

  for (std::size_t i = 0; i < p_tensors.size(); ++i) {
    for (std::size_t k = 0; k < p_tensors[i].size(); ++k) {
      coef.Update(p_tensors[i][k], g_tensors[i][k], state.m[i][k],
                  state.v[i][k]);
    }
  }
  if (row_grads != nullptr) {
    const std::size_t dim = row_grads->dim;
    for (std::size_t r = 0; r < row_grads->rows.size(); ++r) {
      const TokenId id = row_grads->rows[r];
      if (id == kPadId) continue;
      const std::size_t base = static_cast<std::size_t>(id) * dim;
      if (base + dim > table.size()) {
        throw InternalError("adam: embedding row out of range");
      }
      for (std::size_t k = 0; k < dim; ++k) {
        coef.Update(table[base + k], row_grads->values[r * dim + k],
                    state.table_m[base + k], state.table_v[base + k]);
      }
    }
  }
}

double BatchLoss(const Model& model, const Batch& batch) {
  const ForwardResult out = Predict(model, batch);
  return BceLoss(out.probs, batch.labels).loss;
}

namespace {

double DevMap(const Model& model, std::span<const EncodedTweet> dev,
              std::size_t batch_size) {
  if (dev.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::map<std::string, std::map<std::string, int>> gold;
  for (const EncodedTweet& t : dev) gold[t.topic_id][t.tweet_id] = t.label;
  for (const auto& [topic, labels] : gold) {
    const bool any = std::any_of(labels.begin(), labels.end(),
                                 [](const auto& kv) { return kv.second == 1; });
    if (!any) return std::numeric_limits<double>::quiet_NaN();
  }
  const std::vector<RankedRun> runs = Rank(model, dev, "dev", batch_size);
  return Evaluate(runs, gold).map;
}

std::uint64_t EpochSeed(std::uint64_t seed, std::size_t epoch) {
  return seed ^ (0x9E3779B97F4A7C15ULL * (std::uint64_t(epoch) + 1));
}

}  // namespace

TrainResult Train(Model model, std::span<const EncodedTweet> train,
                  std::span<const EncodedTweet> dev, const OptimConfig& config,
                  const EpochCallback& on_epoch) {
  config.Validate();
  if (train.empty()) throw EmptyDatasetError("training set is empty");

  const bool trainable_table = model.provider.trainable();
  AdamState state = AdamState::For(
      model.params, trainable_table ? model.provider.table().size() : 0);

  TrainResult result{model, model, 0, {}, 0};
  double best_map = -1.0;
  for (std::size_t epoch = 1; epoch <= config.epochs; ++epoch) {
    const std::vector<Batch> batches =
        MakeBatches(train, config.batch_size, true,
                    EpochSeed(config.seed, epoch), model.config.MaxWidth());
    double loss_sum = 0.0;
    for (std::size_t bi = 0; bi < batches.size(); ++bi) {
      const Batch& batch = batches[bi];
      try {
        const Tensor3 embeddings = model.provider.Lookup(batch);
        const std::vector<double> extra = model.provider.TfidfFeatures(batch);
        const ForwardResult fwd =
            Forward(model.config, model.params, batch, embeddings, extra);
        const BceResult bce = BceLoss(fwd.probs, batch.labels);
        if (!std::isfinite(bce.loss)) throw TrainingError("non-finite loss");
        const Gradients grads =
            Backward(model.config, model.params, batch, embeddings, fwd.trace,
                     fwd, bce.grads);
        RowGradients rows;
        if (trainable_table) {
          rows = model.provider.GatherGradients(batch, grads.embeddings);
        }
        AdamStep(model.params, grads.params, model.provider.table(),
                 trainable_table ? &rows : nullptr, state, config);
        loss_sum += bce.loss * double(batch.rows);
      } catch (const TrainingError& e) {
        throw TrainingError("epoch " + std::to_string(epoch) + " batch " +
                            std::to_string(bi) + ": " + e.what());
      } catch (const BatchTooShortError& e) {
        throw BatchTooShortError("epoch " + std::to_string(epoch) + " batch " +
                                 std::to_string(bi) + ": " + e.what());
      }
    }
    result.steps = state.t;

    EpochRecord record{epoch, loss_sum / double(train.size()),
                       DevMap(model, dev, config.batch_size)};
    result.history.push_back(record);
    if (on_epoch) on_epoch(record);
    if (std::isfinite(record.dev_map) && record.dev_map > best_map) {
      best_map = record.dev_map;
      result.best_model = model;
      result.best_epoch = epoch;
    }
  }
  if (result.best_epoch == 0) {
    result.best_model = model;
    result.best_epoch = config.epochs;
  }
  result.final_model = std::move(model);
  return result;
}

void WriteHistory(std::span<const EpochRecord> history,
                  const std::filesystem::path& path) {
  std::FILE* out = std::fopen(path.string().c_str(), "wb");
  if (out == nullptr) throw IoError("cannot write " + path.string());
  std::fprintf(out, "epoch\ttrain_loss\tdev_map\n");
  for (const EpochRecord& r : history) {
    if (std::isfinite(r.dev_map)) {
      std::fprintf(out, "%zu\t%.6f\t%.6f\n", r.epoch, r.train_loss, r.dev_map);
    } else {
      std::fprintf(out, "%zu\t%.6f\tnan\n", r.epoch, r.train_loss);
    }
  }
  std::fclose(out);
}

}  // namespace checkworthy
