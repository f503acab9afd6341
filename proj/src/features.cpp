#include "checkworthy/features.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "checkworthy/errors.hpp"
#include "checkworthy/rng.hpp"
#include "text_util.hpp"

namespace checkworthy {
namespace {

std::vector<std::string_view> SplitSpaces(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && line[i] == ' ') ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

bool ParseSize(std::string_view s, std::size_t* out) {
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), *out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

bool ParseDouble(std::string_view s, double* out) {
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), *out);
  return ec == std::errc() && ptr == s.data() + s.size() && std::isfinite(*out);
}

}  // namespace

const std::vector<double>* EmbeddingTable::Find(std::string_view token) const {
  const auto it = vectors.find(token);
  return it == vectors.end() ? nullptr : &it->second;
}

EmbeddingTable LoadEmbeddingFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line)) {
    throw FormatError(path.string() + ": missing header line");
  }
  internal::StripCarriageReturn(line);
  const auto header = SplitSpaces(line);
  std::size_t count = 0;
  EmbeddingTable table;
  if (header.size() != 2 || !ParseSize(header[0], &count) ||
      !ParseSize(header[1], &table.dim) || table.dim == 0) {
    throw FormatError(path.string() +
                      ": missing or malformed header '<count> <dim>'");
  }

  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    internal::StripCarriageReturn(line);
    if (internal::Trim(line).empty()) continue;
    const auto fields = SplitSpaces(line);
    const std::string where = path.string() + " line " + std::to_string(line_no);
    if (fields.size() != table.dim + 1) {
      throw ParseError(where + ": expected " + std::to_string(table.dim) +
                       " values, got " + std::to_string(fields.size() - 1));
    }
    std::vector<double> vec(table.dim);
    for (std::size_t k = 0; k < table.dim; ++k) {
      if (!ParseDouble(fields[k + 1], &vec[k])) {
        throw ParseError(where + ": bad value '" +
                         std::string(fields[k + 1]) + "'");
      }
    }
    std::string token(fields[0]);
    if (table.vectors.contains(token)) {
      throw ParseError(where + ": duplicate token '" + token + "'");
    }
    table.tokens.push_back(token);
    table.vectors.emplace(std::move(token), std::move(vec));
  }

  const bool has_unk = table.vectors.contains(std::string(kUnkToken));
  if (!has_unk) {
    throw ConfigError(path.string() + ": no <unk> vector");
  }
  const std::size_t n = table.tokens.size();
  if (count != n && count + 1 != n) {
    throw FormatError(path.string() + ": header announces " +
                      std::to_string(count) + " vectors, file has " +
                      std::to_string(n));
  }
  return table;
}

void WriteEmbeddingFile(const EmbeddingTable& table,
                        const std::filesystem::path& path) {
  std::FILE* out = std::fopen(path.string().c_str(), "wb");
  if (out == nullptr) throw IoError("cannot write " + path.string());
  std::fprintf(out, "%zu %zu\n", table.tokens.size(), table.dim);
  for (const std::string& token : table.tokens) {
    std::fputs(token.c_str(), out);
    for (double v : table.vectors.at(token)) std::fprintf(out, " %.9g", v);
    std::fputc('\n', out);
  }
  std::fclose(out);
}

TfIdfModel TfIdfModel::Fit(std::span<const std::vector<std::string>> corpus) {
  if (corpus.empty()) throw DegenerateInputError("tf-idf: empty corpus");
  TfIdfModel model;
  model.n_docs = corpus.size();
  for (const auto& doc : corpus) {
    const std::set<std::string_view> unique(doc.begin(), doc.end());
    for (std::string_view term : unique) {
      ++model.document_frequency[std::string(term)];
    }
  }
  return model;
}

double TfIdfModel::Idf(std::string_view term) const {
  const auto it = document_frequency.find(term);
  const double df = it == document_frequency.end() ? 0.0 : double(it->second);
  return std::log((1.0 + double(n_docs)) / (1.0 + df)) + 1.0;
}

std::vector<double> TfidfVector(std::span<const std::string> tokens,
                                const TfIdfModel& model,
                                std::span<const std::string> vocab_terms) {
  std::map<std::string_view, std::size_t> tf;
  for (const std::string& t : tokens) ++tf[t];
  std::vector<double> vec(vocab_terms.size(), 0.0);
  double norm = 0.0;
  for (std::size_t i = 0; i < vocab_terms.size(); ++i) {
    const auto it = tf.find(vocab_terms[i]);
    if (it == tf.end()) continue;
    vec[i] = double(it->second) * model.Idf(vocab_terms[i]);
    norm += vec[i] * vec[i];
  }
  if (norm > 0.0) {
    norm = std::sqrt(norm);
    for (double& v : vec) v /= norm;
  }
  return vec;
}

std::string_view ProviderKindName(ProviderKind kind) {
  switch (kind) {
    case ProviderKind::kTrainable: return "trainable";
    case ProviderKind::kPrecomputed: return "precomputed";
    case ProviderKind::kTfidfConcat: return "tfidf_concat";
  }
  return "?";
}

ProviderKind ParseProviderKind(std::string_view name) {
  for (ProviderKind k : {ProviderKind::kTrainable, ProviderKind::kPrecomputed,
                         ProviderKind::kTfidfConcat}) {
    if (ProviderKindName(k) == name) return k;
  }
  throw ConfigError("unknown embedding provider '" + std::string(name) + "'");
}

EmbeddingProvider EmbeddingProvider::Trainable(std::size_t vocab_size,
                                               std::size_t dim,
                                               double init_scale,
                                               std::uint64_t seed) {
  if (dim == 0) throw ConfigError("embedding dim must be positive");
  EmbeddingProvider p;
  p.kind_ = ProviderKind::kTrainable;
  p.dim_ = dim;
  p.vocab_size_ = vocab_size;
  p.table_.assign(vocab_size * dim, 0.0);
  Rng rng(seed);
  for (std::size_t i = dim; i < p.table_.size(); ++i) {
    p.table_[i] = rng.uniform(-init_scale, init_scale);
  }
  return p;
}

EmbeddingProvider EmbeddingProvider::Precomputed(const Vocabulary& vocab,
                                                 const EmbeddingTable& table) {
  const std::vector<double>* unk = table.Find(kUnkToken);
  if (unk == nullptr) throw ConfigError("embedding table has no <unk> vector");
  EmbeddingProvider p;
  p.kind_ = ProviderKind::kPrecomputed;
  p.dim_ = table.dim;
  p.vocab_size_ = vocab.size();
  p.table_.assign(vocab.size() * table.dim, 0.0);
  for (std::size_t id = 1; id < vocab.size(); ++id) {
    const std::vector<double>* v = table.Find(vocab.Token(TokenId(id)));
    if (v == nullptr) v = unk;
    std::copy(v->begin(), v->end(), p.table_.begin() + id * table.dim);
  }
  return p;
}

EmbeddingProvider EmbeddingProvider::TfidfConcat(const Vocabulary& vocab,
                                                 TfIdfModel model,
                                                 std::size_t dim,
                                                 double init_scale,
                                                 std::uint64_t seed) {
  EmbeddingProvider p = Trainable(vocab.size(), dim, init_scale, seed);
  p.kind_ = ProviderKind::kTfidfConcat;
  p.tfidf_ = std::move(model);
  for (std::size_t id = kFirstTokenId; id < vocab.size(); ++id) {
    p.idf_weights_.push_back(p.tfidf_.Idf(vocab.Token(TokenId(id))));
  }
  return p;
}

EmbeddingProvider EmbeddingProvider::FromState(ProviderKind kind,
                                               std::size_t dim,
                                               std::vector<double> table,
                                               const Vocabulary* vocab,
                                               TfIdfModel model) {
  if (dim == 0 || table.size() % dim != 0) {
    throw FormatError("embedding table size does not match dim");
  }
  EmbeddingProvider p;
  p.kind_ = kind;
  p.dim_ = dim;
  p.vocab_size_ = table.size() / dim;
  p.table_ = std::move(table);
  if (kind == ProviderKind::kTfidfConcat) {
    if (vocab == nullptr) throw ConfigError("tf-idf provider needs vocabulary");
    p.tfidf_ = std::move(model);
    for (std::size_t id = kFirstTokenId; id < vocab->size(); ++id) {
      p.idf_weights_.push_back(p.tfidf_.Idf(vocab->Token(TokenId(id))));
    }
  }
  return p;
}

Tensor3 EmbeddingProvider::Lookup(const Batch& batch) const {
  Tensor3 out(batch.rows, batch.length, dim_);
  for (std::size_t r = 0; r < batch.rows; ++r) {
    for (std::size_t t = 0; t < batch.length; ++t) {
      if (!batch.real(r, t)) continue;
      const TokenId id = batch.id(r, t);
      if (id == kPadId) continue;
      if (id < 0 || static_cast<std::size_t>(id) >= vocab_size_) {
        throw ArgumentError("token id " + std::to_string(id) +
                            " outside embedding table");
      }
      const double* src = table_.data() + static_cast<std::size_t>(id) * dim_;
      std::copy(src, src + dim_, out.row(r, t));
    }
  }
  return out;
}

std::vector<double> EmbeddingProvider::TfidfFeatures(const Batch& batch) const {
  const std::size_t n = idf_weights_.size();
  std::vector<double> out(batch.rows * n, 0.0);
  if (n == 0) return out;
  for (std::size_t r = 0; r < batch.rows; ++r) {
    double* row = out.data() + r * n;
    for (std::size_t t = 0; t < batch.length; ++t) {
      const TokenId id = batch.id(r, t);
      if (!batch.real(r, t) || id < kFirstTokenId) continue;
      const std::size_t k = static_cast<std::size_t>(id - kFirstTokenId);
      if (k < n) row[k] += idf_weights_[k];
    }
    double norm = 0.0;
    for (std::size_t k = 0; k < n; ++k) norm += row[k] * row[k];
    if (norm > 0.0) {
      norm = std::sqrt(norm);
      for (std::size_t k = 0; k < n; ++k) row[k] /= norm;
    }
  }
  return out;
}

RowGradients EmbeddingProvider::GatherGradients(const Batch& batch,
                                                const Tensor3& grad) const {
  if (grad.dim0 != batch.rows || grad.dim1 != batch.length ||
      grad.dim2 != dim_) {
    throw InternalError("embedding gradient shape does not match batch");
  }
  std::map<TokenId, std::vector<double>> rows;
  for (std::size_t r = 0; r < batch.rows; ++r) {
    for (std::size_t t = 0; t < batch.length; ++t) {
      const TokenId id = batch.id(r, t);
      if (!batch.real(r, t) || id == kPadId) continue;
      auto& acc = rows.try_emplace(id, dim_, 0.0).first->second;
      const double* g = grad.row(r, t);
      for (std::size_t k = 0; k < dim_; ++k) acc[k] += g[k];
    }
  }
  RowGradients out;
  out.dim = dim_;
  for (auto& [id, values] : rows) {
    out.rows.push_back(id);
    out.values.insert(out.values.end(), values.begin(), values.end());
  }
  return out;
}

}  // namespace checkworthy
