#ifndef CHECKWORTHY_OPTIM_HPP_
#define CHECKWORTHY_OPTIM_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <vector>

#include "checkworthy/cnn.hpp"
#include "checkworthy/features.hpp"
#include "checkworthy/model.hpp"
#include "checkworthy/vocab.hpp"

namespace checkworthy {

struct OptimConfig {
  double learning_rate = 2e-5;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  std::size_t epochs = 8;
  std::size_t batch_size = 10;
  std::uint64_t seed = 0;

  // lr 2e-5, 8 epochs.
  static OptimConfig Standard();
  // lr 1e-3, 50 epochs; for trainable embeddings learned from scratch.
  static OptimConfig Acceptance();
  void Validate() const;
};

inline constexpr double kProbClamp = 1e-7;

struct BceResult {
  double loss = 0.0;
  std::vector<double> grads;  // dLoss/dProb
};

// Mean binary cross-entropy with probabilities clamped to
// [1e-7, 1 - 1e-7]. Outside the clamp the gradient is zero.
BceResult BceLoss(std::span<const double> probs, std::span<const int> labels);

struct AdamState {
  std::vector<std::vector<double>> m;  // per ModelParams tensor
  std::vector<std::vector<double>> v;
  std::vector<double> table_m;  // embedding table, updated lazily per row
  std::vector<double> table_v;
  std::uint64_t t = 0;

  static AdamState For(const ModelParams& params, std::size_t table_size);
};

// One bias-corrected Adam step. Dense tensors are always updated; embedding
// rows only when present in `row_grads`. Throws TrainingError without
// touching anything if a gradient is not finite.
void AdamStep(ModelParams& params, const ModelParams& grads,
              std::span<double> table, const RowGradients* row_grads,
              AdamState& state, const OptimConfig& config);

struct EpochRecord {
  std::size_t epoch = 0;
  double train_loss = 0.0;
  double dev_map = 0.0;  // NaN when no dev set with positives is available
};

struct TrainResult {
  Model final_model;
  Model best_model;  // highest dev MAP; the final model without a dev set
  std::size_t best_epoch = 0;
  std::vector<EpochRecord> history;
  std::uint64_t steps = 0;
};

using EpochCallback = std::function<void(const EpochRecord&)>;

// Mini-batch training with a per-epoch seeded reshuffle.
TrainResult Train(Model model, std::span<const EncodedTweet> train,
                  std::span<const EncodedTweet> dev, const OptimConfig& config,
                  const EpochCallback& on_epoch = {});

// Mean BCE of the model over a batch; convenience for tests and tools.
double BatchLoss(const Model& model, const Batch& batch);

// epoch \t train_loss \t dev_map
void WriteHistory(std::span<const EpochRecord> history,
                  const std::filesystem::path& path);

}  // namespace checkworthy

#endif  // CHECKWORTHY_OPTIM_HPP_
