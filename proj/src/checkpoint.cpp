#include "checkworthy/checkpoint.hpp"

#include <charconv>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "checkworthy/errors.hpp"
#include "text_util.hpp"

namespace checkworthy {
namespace {

constexpr std::string_view kMagic = "checkworthy-checkpoint 1";

void WriteTensor(std::FILE* out, const std::string& name,
                 std::span<const double> values) {
  std::fprintf(out, "tensor %s %zu\n", name.c_str(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    std::fprintf(out, i == 0 ? "%.17g" : " %.17g", values[i]);
  }
  std::fputc('\n', out);
}

class Reader {
 public:
  Reader(const std::filesystem::path& path) : path_(path), in_(path) {
    if (!in_) throw IoError("cannot open " + path.string());
  }

  std::string Line() {
    std::string line;
    if (!std::getline(in_, line)) Fail("unexpected end of file");
    ++line_no_;
    internal::StripCarriageReturn(line);
    return line;
  }

  // "key value..." -> value part, checking the key.
  std::string Field(std::string_view key) {
    const std::string line = Line();
    if (line.size() < key.size() + 1 || line.compare(0, key.size(), key) != 0 ||
        line[key.size()] != ' ') {
      Fail("expected '" + std::string(key) + "'");
    }
    return line.substr(key.size() + 1);
  }

  std::size_t Size(std::string_view key) { return ParseSize(Field(key)); }

  std::size_t ParseSize(std::string_view s) {
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
      Fail("bad integer '" + std::string(s) + "'");
    }
    return v;
  }

  std::vector<double> Tensor(std::string_view name) {
    const std::string header = Field("tensor");
    std::istringstream hs(header);
    std::string got;
    std::size_t n = 0;
    if (!(hs >> got >> n) || got != name) {
      Fail("expected tensor '" + std::string(name) + "'");
    }
    const std::string body = Line();
    std::vector<double> values;
    values.reserve(n);
    const char* p = body.data();
    const char* end = body.data() + body.size();
    while (p < end) {
      while (p < end && *p == ' ') ++p;
      if (p == end) break;
      double v = 0.0;
      const auto [next, ec] = std::from_chars(p, end, v);
      if (ec != std::errc()) Fail("bad number in tensor " + std::string(name));
      values.push_back(v);
      p = next;
    }
    if (values.size() != n) {
      Fail("tensor " + std::string(name) + " has " +
           std::to_string(values.size()) + " values, expected " +
           std::to_string(n));
    }
    return values;
  }

  [[noreturn]] void Fail(const std::string& what) const {
    throw FormatError(path_.string() + " line " + std::to_string(line_no_) +
                      ": " + what);
  }

 private:
  std::filesystem::path path_;
  std::ifstream in_;
  std::size_t line_no_ = 0;
};

std::vector<std::size_t> ParseSizes(Reader& r, const std::string& s) {
  std::vector<std::size_t> out;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) out.push_back(r.ParseSize(tok));
  return out;
}

}  // namespace

void SaveCheckpoint(const Checkpoint& ckpt, const std::filesystem::path& path) {
  const ModelConfig& c = ckpt.model.config;
  const EmbeddingProvider& provider = ckpt.model.provider;
  std::FILE* out = std::fopen(path.string().c_str(), "wb");
  if (out == nullptr) throw IoError("cannot write " + path.string());
  std::fprintf(out, "%s\n", std::string(kMagic).c_str());
  std::fprintf(out, "preset %s\n", ckpt.preset.c_str());
  std::fprintf(out, "epoch %zu\n", ckpt.epoch);
  std::fprintf(out, "seed %" PRIu64 "\n", c.seed);
  std::fprintf(out, "filter_widths");
  for (std::size_t w : c.filter_widths) std::fprintf(out, " %zu", w);
  std::fprintf(out, "\nfilters_per_width %zu\n", c.filters_per_width);
  std::fprintf(out, "embed_dim %zu\n", c.embed_dim);
  std::fprintf(out, "tfidf_dim %zu\n", c.tfidf_dim);
  std::fprintf(out, "provider %s\n",
               std::string(ProviderKindName(provider.kind())).c_str());
  std::fprintf(out, "vocab_file %s\n", ckpt.vocab_file.c_str());
  std::fprintf(out, "vocab_hash %016" PRIx64 "\n", ckpt.vocab_hash);
  const PreprocessPolicy& p = ckpt.policy;
  std::fprintf(out, "policy %s %s %s %s %d\n",
               std::string(SegmentActionName(p.hashtag)).c_str(),
               std::string(SegmentActionName(p.mention)).c_str(),
               std::string(SegmentActionName(p.url)).c_str(),
               std::string(SegmentActionName(p.numeric)).c_str(),
               p.lowercase ? 1 : 0);
  if (p.consolidation) {
    std::fprintf(out, "consolidation %zu\n", p.consolidation->entries().size());
    for (const auto& [raw, root] : p.consolidation->entries()) {
      std::fprintf(out, "%s\t%s\n", raw.c_str(), root.c_str());
    }
  } else {
    std::fprintf(out, "consolidation none\n");
  }
  const TfIdfModel& tfidf = provider.tfidf_model();
  std::fprintf(out, "tfidf_docs %zu\n", tfidf.n_docs);
  std::fprintf(out, "tfidf_terms %zu\n", tfidf.document_frequency.size());
  for (const auto& [term, df] : tfidf.document_frequency) {
    std::fprintf(out, "%s\t%zu\n", term.c_str(), df);
  }
  const ModelParams& params = ckpt.model.params;
  for (std::size_t i = 0; i < params.filters.size(); ++i) {
    WriteTensor(out, "filters." + std::to_string(i), params.filters[i]);
    WriteTensor(out, "biases." + std::to_string(i), params.biases[i]);
  }
  WriteTensor(out, "dense_weights", params.dense_weights);
  WriteTensor(out, "dense_bias", params.dense_bias);
  WriteTensor(out, "embedding_table", provider.table());
  std::fprintf(out, "end\n");
  if (std::fclose(out) != 0) throw IoError("cannot write " + path.string());
}

std::filesystem::path CheckpointVocabPath(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::string line;
  while (std::getline(in, line)) {
    internal::StripCarriageReturn(line);
    if (line.rfind("vocab_file ", 0) == 0) {
      return path.parent_path() / line.substr(11);
    }
    if (line.rfind("tensor ", 0) == 0) break;
  }
  throw FormatError(path.string() + ": no vocab_file entry");
}

Checkpoint LoadCheckpoint(const std::filesystem::path& path,
                          const Vocabulary& vocab) {
  Reader r(path);
  if (r.Line() != kMagic) r.Fail("not a checkworthy checkpoint");
  Checkpoint ckpt;
  ckpt.preset = r.Field("preset");
  ckpt.epoch = r.Size("epoch");
  ModelConfig config;
  config.seed = r.Size("seed");
  config.filter_widths = ParseSizes(r, r.Field("filter_widths"));
  config.filters_per_width = r.Size("filters_per_width");
  config.embed_dim = r.Size("embed_dim");
  config.tfidf_dim = r.Size("tfidf_dim");
  config.Validate();
  const ProviderKind kind = ParseProviderKind(r.Field("provider"));
  ckpt.vocab_file = r.Field("vocab_file");
  const std::string hash = r.Field("vocab_hash");
  ckpt.vocab_hash = std::strtoull(hash.c_str(), nullptr, 16);
  if (ckpt.vocab_hash != vocab.Hash()) {
    throw ConfigError(path.string() +
                      ": vocabulary does not match the checkpoint");
  }

  {
    std::istringstream in(r.Field("policy"));
    std::string h, m, u, n;
    int lower = 0;
    if (!(in >> h >> m >> u >> n >> lower)) r.Fail("malformed policy line");
    ckpt.policy.hashtag = ParseSegmentAction(h);
    ckpt.policy.mention = ParseSegmentAction(m);
    ckpt.policy.url = ParseSegmentAction(u);
    ckpt.policy.numeric = ParseSegmentAction(n);
    ckpt.policy.lowercase = lower != 0;
  }
  const std::string consolidation = r.Field("consolidation");
  if (consolidation != "none") {
    ConsolidationMap map;
    const std::size_t n = r.ParseSize(consolidation);
    for (std::size_t i = 0; i < n; ++i) {
      const auto fields = internal::SplitTabs(r.Line());
      if (fields.size() != 2) r.Fail("malformed consolidation entry");
      map.Add(fields[0], fields[1]);
    }
    ckpt.policy.consolidation = std::move(map);
  }
  ckpt.policy.Validate();

  TfIdfModel tfidf;
  tfidf.n_docs = r.Size("tfidf_docs");
  const std::size_t terms = r.Size("tfidf_terms");
  for (std::size_t i = 0; i < terms; ++i) {
    const auto fields = internal::SplitTabs(r.Line());
    if (fields.size() != 2) r.Fail("malformed tf-idf entry");
    tfidf.document_frequency[fields[0]] = r.ParseSize(fields[1]);
  }

  ModelParams params = ModelParams::Zeros(config);
  for (std::size_t i = 0; i < params.filters.size(); ++i) {
    params.filters[i] = r.Tensor("filters." + std::to_string(i));
    params.biases[i] = r.Tensor("biases." + std::to_string(i));
  }
  params.dense_weights = r.Tensor("dense_weights");
  params.dense_bias = r.Tensor("dense_bias");
  const ModelParams shape = ModelParams::Zeros(config);
  const auto got = std::as_const(params).Tensors();
  const auto want = shape.Tensors();
  for (std::size_t i = 0; i < got.size(); ++i) {
    if (got[i].size() != want[i].size()) r.Fail("tensor shape mismatch");
  }
  std::vector<double> table = r.Tensor("embedding_table");
  if (r.Line() != "end") r.Fail("expected 'end'");

  EmbeddingProvider provider = EmbeddingProvider::FromState(
      kind, config.embed_dim, std::move(table), &vocab, std::move(tfidf));
  if (provider.vocab_size() != vocab.size()) {
    throw ConfigError(path.string() + ": embedding table rows != vocab size");
  }
  if (provider.tfidf_dim() != config.tfidf_dim) {
    throw ConfigError(path.string() + ": tf-idf dimension mismatch");
  }
  ckpt.model = Model{std::move(config), std::move(params), std::move(provider)};
  return ckpt;
}

}  // namespace checkworthy
