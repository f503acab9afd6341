#ifndef CHECKWORTHY_CNN_HPP_
#define CHECKWORTHY_CNN_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "checkworthy/tensor.hpp"
#include "checkworthy/vocab.hpp"

namespace checkworthy {

struct ModelConfig {
  std::vector<std::size_t> filter_widths = {2, 4, 7};
  std::size_t filters_per_width = 32;
  std::size_t embed_dim = 64;
  std::size_t tfidf_dim = 0;
  std::uint64_t seed = 0;

  std::size_t MaxWidth() const;
  // Length of the vector entering the dense layer.
  std::size_t FeatureDim() const;
  void Validate() const;
};

// Parallel convolution banks (one per width) and a single-logit dense head.
struct ModelParams {
  // filters[w] is F x width x D, row-major; biases[w] has F entries.
  std::vector<std::vector<double>> filters;
  std::vector<std::vector<double>> biases;
  std::vector<double> dense_weights;
  std::vector<double> dense_bias = {0.0};

  static ModelParams Zeros(const ModelConfig& config);
  // Glorot-uniform filters and dense weights, zero biases.
  static ModelParams Init(const ModelConfig& config);

  // Every tensor in a fixed order: filters, biases, dense weights, bias.
  std::vector<std::span<double>> Tensors();
  std::vector<std::span<const double>> Tensors() const;
  std::size_t ParameterCount() const;
};

struct ForwardTrace {
  std::size_t rows = 0;
  std::size_t length = 0;
  std::vector<double> features;  // rows x FeatureDim
  std::vector<double> logits;
  // Per width, rows x F: window start of the pooled maximum (-1 when the row
  // has no window free of padding) and that window's pre-activation.
  std::vector<std::vector<int>> argmax;
  std::vector<std::vector<double>> preactivation;
};

struct ForwardResult {
  std::vector<double> probs;
  ForwardTrace trace;
};

double Sigmoid(double x);

// Valid 1-D convolutions, ReLU, max-over-time over windows that lie entirely
// on real tokens, concatenation (+ optional tweet-level extras) and a sigmoid
// output. Throws BatchTooShortError if the padded length is below a width.
ForwardResult Forward(const ModelConfig& config, const ModelParams& params,
                      const Batch& batch, const Tensor3& embeddings,
                      std::span<const double> extra_features = {});

struct Gradients {
  ModelParams params;
  Tensor3 embeddings;  // same shape as the forward input
};

// Exact gradients given dLoss/dProb for each row.
Gradients Backward(const ModelConfig& config, const ModelParams& params,
                   const Batch& batch, const Tensor3& embeddings,
                   const ForwardTrace& trace, const ForwardResult& forward,
                   std::span<const double> loss_grads);

// 1 iff prob >= 0.5.
int Classify(double prob);

}  // namespace checkworthy

#endif  // CHECKWORTHY_CNN_HPP_
