#include "checkworthy/cnn.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "checkworthy/errors.hpp"
#include "checkworthy/rng.hpp"

namespace checkworthy {

std::size_t ModelConfig::MaxWidth() const {
  return filter_widths.empty()
             ? 0
             : *std::max_element(filter_widths.begin(), filter_widths.end());
}

std::size_t ModelConfig::FeatureDim() const {
  return filter_widths.size() * filters_per_width + tfidf_dim;
}

void ModelConfig::Validate() const {
  if (filter_widths.empty()) throw ConfigError("no filter widths configured");
  for (std::size_t w : filter_widths) {
    if (w == 0) throw ConfigError("filter widths must be positive");
  }
  if (filters_per_width == 0) throw ConfigError("filters_per_width must be > 0");
  if (embed_dim == 0) throw ConfigError("embed_dim must be > 0");
}

ModelParams ModelParams::Zeros(const ModelConfig& config) {
  config.Validate();
  ModelParams p;
  const std::size_t f = config.filters_per_width;
  for (std::size_t w : config.filter_widths) {
    p.filters.emplace_back(f * w * config.embed_dim, 0.0);
    p.biases.emplace_back(f, 0.0);
  }
  p.dense_weights.assign(config.FeatureDim(), 0.0);
  p.dense_bias = {0.0};
  return p;
}

ModelParams ModelParams::Init(const ModelConfig& config) {
  ModelParams p = Zeros(config);
  Rng rng(config.seed);
  const std::size_t f = config.filters_per_width;
  for (std::size_t i = 0; i < config.filter_widths.size(); ++i) {
    const double fan_in = double(config.filter_widths[i] * config.embed_dim);
    const double limit = std::sqrt(6.0 / (fan_in + double(f)));
    for (double& v : p.filters[i]) v = rng.uniform(-limit, limit);
  }
  const double limit = std::sqrt(6.0 / (double(config.FeatureDim()) + 1.0));
  for (double& v : p.dense_weights) v = rng.uniform(-limit, limit);
  return p;
}

std::vector<std::span<double>> ModelParams::Tensors() {
  std::vector<std::span<double>> out;
  for (auto& t : filters) out.emplace_back(t);
  for (auto& t : biases) out.emplace_back(t);
  out.emplace_back(dense_weights);
  out.emplace_back(dense_bias);
  return out;
}

std::vector<std::span<const double>> ModelParams::Tensors() const {
  std::vector<std::span<const double>> out;
  for (const auto& t : filters) out.emplace_back(t);
  for (const auto& t : biases) out.emplace_back(t);
  out.emplace_back(dense_weights);
  out.emplace_back(dense_bias);
  return out;
}

std::size_t ModelParams::ParameterCount() const {
  std::size_t n = 0;
  for (auto t : Tensors()) n += t.size();
  return n;
}

double Sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

namespace {

void CheckShapes(const ModelConfig& config, const ModelParams& params,
                 const Batch& batch, const Tensor3& embeddings,
                 std::span<const double> extra) {
  if (embeddings.dim0 != batch.rows || embeddings.dim1 != batch.length ||
      embeddings.dim2 != config.embed_dim) {
    throw InternalError("embedding tensor shape does not match batch/config");
  }
  if (params.filters.size() != config.filter_widths.size() ||
      params.dense_weights.size() != config.FeatureDim()) {
    throw InternalError("parameters do not match model config");
  }
  if (extra.size() != batch.rows * config.tfidf_dim) {
    throw InternalError("extra feature size does not match tfidf_dim");
  }
}

// Number of leading real tokens; padding only ever trails a row.
std::size_t RealPrefix(const Batch& batch, std::size_t r) {
  std::size_t n = 0;
  while (n < batch.length && batch.real(r, n)) ++n;
  return n;
}

}  // namespace

ForwardResult Forward(const ModelConfig& config, const ModelParams& params,
                      const Batch& batch, const Tensor3& embeddings,
                      std::span<const double> extra_features) {
  CheckShapes(config, params, batch, embeddings, extra_features);
  for (std::size_t w : config.filter_widths) {
    if (batch.length < w) {
      throw BatchTooShortError("batch length " + std::to_string(batch.length) +
                               " is shorter than filter width " +
                               std::to_string(w));
    }
  }

  const std::size_t rows = batch.rows;
  const std::size_t dim = config.embed_dim;
  const std::size_t nf = config.filters_per_width;
  const std::size_t feat_dim = config.FeatureDim();

  ForwardResult result;
  ForwardTrace& trace = result.trace;
  trace.rows = rows;
  trace.length = batch.length;
  trace.features.assign(rows * feat_dim, 0.0);
  trace.logits.assign(rows, 0.0);

  for (std::size_t wi = 0; wi < config.filter_widths.size(); ++wi) {
    const std::size_t width = config.filter_widths[wi];
    const std::vector<double>& filt = params.filters[wi];
    const std::vector<double>& bias = params.biases[wi];
    auto& argmax = trace.argmax.emplace_back(rows * nf, -1);
    auto& preact = trace.preactivation.emplace_back(rows * nf, 0.0);

    for (std::size_t r = 0; r < rows; ++r) {
      const std::size_t real = RealPrefix(batch, r);
      for (std::size_t f = 0; f < nf; ++f) {
        const double* kernel = filt.data() + f * width * dim;
        double best = 0.0;
        int best_pos = -1;
        double best_pre = 0.0;
        for (std::size_t p = 0; p + width <= real; ++p) {
          double z = bias[f];
          for (std::size_t k = 0; k < width; ++k) {
            const double* x = embeddings.row(r, p + k);
            const double* wk = kernel + k * dim;
            for (std::size_t d = 0; d < dim; ++d) z += wk[d] * x[d];
          }
          const double act = z > 0.0 ? z : 0.0;
          if (best_pos < 0 || act > best) {
            best = act;
            best_pos = static_cast<int>(p);
            best_pre = z;
          }
        }
        argmax[r * nf + f] = best_pos;
        preact[r * nf + f] = best_pre;
        trace.features[r * feat_dim + wi * nf + f] = best;
      }
    }
  }

  const std::size_t conv_dim = config.filter_widths.size() * nf;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t k = 0; k < config.tfidf_dim; ++k) {
      trace.features[r * feat_dim + conv_dim + k] =
          extra_features[r * config.tfidf_dim + k];
    }
  }

  result.probs.resize(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    double z = params.dense_bias[0];
    const double* x = trace.features.data() + r * feat_dim;
    for (std::size_t k = 0; k < feat_dim; ++k) z += params.dense_weights[k] * x[k];
    trace.logits[r] = z;
    result.probs[r] = Sigmoid(z);
  }
  return result;
}

Gradients Backward(const ModelConfig& config, const ModelParams& params,
                   const Batch& batch, const Tensor3& embeddings,
                   const ForwardTrace& trace, const ForwardResult& forward,
                   std::span<const double> loss_grads) {
  const std::size_t rows = batch.rows;
  const std::size_t dim = config.embed_dim;
  const std::size_t nf = config.filters_per_width;
  const std::size_t feat_dim = config.FeatureDim();
  if (trace.rows != rows || trace.length != batch.length ||
      loss_grads.size() != rows || forward.probs.size() != rows ||
      trace.argmax.size() != config.filter_widths.size() ||
      trace.features.size() != rows * feat_dim ||
      embeddings.dim0 != rows || embeddings.dim1 != batch.length ||
      embeddings.dim2 != dim) {
    throw InternalError("backward: trace does not match batch");
  }

  Gradients g{ModelParams::Zeros(config),
              Tensor3(rows, batch.length, dim)};

  std::vector<double> dlogit(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    const double p = forward.probs[r];
    dlogit[r] = loss_grads[r] * p * (1.0 - p);
  }

  std::vector<double> dfeat(rows * feat_dim);
  for (std::size_t r = 0; r < rows; ++r) {
    const double* x = trace.features.data() + r * feat_dim;
    g.params.dense_bias[0] += dlogit[r];
    for (std::size_t k = 0; k < feat_dim; ++k) {
      g.params.dense_weights[k] += dlogit[r] * x[k];
      dfeat[r * feat_dim + k] = dlogit[r] * params.dense_weights[k];
    }
  }

  for (std::size_t wi = 0; wi < config.filter_widths.size(); ++wi) {
    const std::size_t width = config.filter_widths[wi];
    const std::vector<double>& filt = params.filters[wi];
    std::vector<double>& dfilt = g.params.filters[wi];
    std::vector<double>& dbias = g.params.biases[wi];
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t f = 0; f < nf; ++f) {
        const int pos = trace.argmax[wi][r * nf + f];
        if (pos < 0 || trace.preactivation[wi][r * nf + f] <= 0.0) continue;
        const double go = dfeat[r * feat_dim + wi * nf + f];
        if (go == 0.0) continue;
        dbias[f] += go;
        const double* kernel = filt.data() + f * width * dim;
        double* dkernel = dfilt.data() + f * width * dim;
        for (std::size_t k = 0; k < width; ++k) {
          const std::size_t t = static_cast<std::size_t>(pos) + k;
          const double* x = embeddings.row(r, t);
          double* dx = g.embeddings.row(r, t);
          for (std::size_t d = 0; d < dim; ++d) {
            dkernel[k * dim + d] += go * x[d];
            dx[d] += go * kernel[k * dim + d];
          }
        }
      }
    }
  }
  return g;
}

int Classify(double prob) {
  if (!(prob >= 0.0 && prob <= 1.0)) {
    throw ArgumentError("probability outside [0,1]");
  }
  return prob >= 0.5 ? 1 : 0;
}

}  // namespace checkworthy
