#ifndef CHECKWORTHY_FEATURES_HPP_
#define CHECKWORTHY_FEATURES_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "checkworthy/tensor.hpp"
#include "checkworthy/vocab.hpp"

namespace checkworthy {

// Static token vectors read from an embedding file.
//
// File format: first line "<count> <dim>"; then one line per token,
// "<token> <f_1> ... <f_dim>", space separated, UTF-8. A "<unk>" line is
// mandatory. <count> is either the number of vector lines or the number of
// vector lines excluding <unk>.
struct EmbeddingTable {
  std::size_t dim = 0;
  std::vector<std::string> tokens;  // file order
  std::map<std::string, std::vector<double>, std::less<>> vectors;

  const std::vector<double>* Find(std::string_view token) const;
};

EmbeddingTable LoadEmbeddingFile(const std::filesystem::path& path);

// Writes with nine significant digits; header count = number of lines.
void WriteEmbeddingFile(const EmbeddingTable& table,
                        const std::filesystem::path& path);

// Smoothed inverse document frequencies: idf(t) = ln((1+n)/(1+df(t))) + 1.
struct TfIdfModel {
  std::map<std::string, std::size_t, std::less<>> document_frequency;
  std::size_t n_docs = 0;

  static TfIdfModel Fit(std::span<const std::vector<std::string>> corpus);
  double Idf(std::string_view term) const;
};

// tf * idf per vocab term (tf = raw count in `tokens`), L2-normalised unless
// all zero.
std::vector<double> TfidfVector(std::span<const std::string> tokens,
                                const TfIdfModel& model,
                                std::span<const std::string> vocab_terms);

enum class ProviderKind { kTrainable, kPrecomputed, kTfidfConcat };

std::string_view ProviderKindName(ProviderKind kind);
ProviderKind ParseProviderKind(std::string_view name);

// Sparse gradient for an id-indexed embedding table: rows ascending.
struct RowGradients {
  std::size_t dim = 0;
  std::vector<TokenId> rows;
  std::vector<double> values;  // rows.size() x dim
};

// Supplies the batch x length x dim input tensor. The table is indexed by
// vocabulary id; row PAD is all zeros and never updated.
class EmbeddingProvider {
 public:
  static EmbeddingProvider Trainable(std::size_t vocab_size, std::size_t dim,
                                     double init_scale, std::uint64_t seed);
  static EmbeddingProvider Precomputed(const Vocabulary& vocab,
                                       const EmbeddingTable& table);
  // Trainable embeddings plus a tweet-level TF-IDF vector over the
  // non-reserved vocabulary, appended to the pooled CNN features.
  static EmbeddingProvider TfidfConcat(const Vocabulary& vocab,
                                       TfIdfModel model, std::size_t dim,
                                       double init_scale, std::uint64_t seed);
  // Rebuilds a provider from checkpointed state.
  static EmbeddingProvider FromState(ProviderKind kind, std::size_t dim,
                                     std::vector<double> table,
                                     const Vocabulary* vocab,
                                     TfIdfModel model);

  ProviderKind kind() const { return kind_; }
  std::size_t dim() const { return dim_; }
  std::size_t vocab_size() const { return vocab_size_; }
  bool trainable() const { return kind_ != ProviderKind::kPrecomputed; }
  std::size_t tfidf_dim() const { return idf_weights_.size(); }
  const TfIdfModel& tfidf_model() const { return tfidf_; }

  std::span<double> table() { return table_; }
  std::span<const double> table() const { return table_; }

  Tensor3 Lookup(const Batch& batch) const;

  // rows x tfidf_dim tweet-level features (empty for non-TF-IDF providers).
  std::vector<double> TfidfFeatures(const Batch& batch) const;

  // Sums per-position input gradients into per-id rows, skipping PAD.
  RowGradients GatherGradients(const Batch& batch, const Tensor3& grad) const;

 private:
  ProviderKind kind_ = ProviderKind::kTrainable;
  std::size_t dim_ = 0;
  std::size_t vocab_size_ = 0;
  std::vector<double> table_;
  TfIdfModel tfidf_;
  std::vector<double> idf_weights_;  // by (id - kFirstTokenId)
};

}  // namespace checkworthy

#endif  // CHECKWORTHY_FEATURES_HPP_
