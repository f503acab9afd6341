#include <cmath>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "checkworthy/errors.hpp"
#include "checkworthy/features.hpp"

using namespace checkworthy;

namespace {

std::filesystem::path WriteTemp(const std::string& name,
                                const std::string& body) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << body;
  return path;
}

Batch OneRow(std::vector<TokenId> ids, std::size_t pad = 0) {
  Batch b;
  b.rows = 1;
  b.length = ids.size() + pad;
  b.ids = ids;
  b.ids.resize(b.length, kPadId);
  b.mask.assign(b.length, 0);
  for (std::size_t i = 0; i < ids.size(); ++i) b.mask[i] = 1;
  b.labels = {0};
  b.tweet_ids = {"t"};
  b.topic_ids = {"x"};
  return b;
}

}  // namespace

TEST_CASE("embedding file loading") {
  const auto ok = WriteTemp("cw_emb_ok.txt", "2 3\na 1 2 3\n<unk> 0 0 0\n");
  const EmbeddingTable t = LoadEmbeddingFile(ok);
  CHECK(t.dim == 3);
  CHECK(t.vectors.size() == 2);
  CHECK(*t.Find("a") == std::vector<double>{1, 2, 3});

  // Count excluding the mandatory <unk> line is also accepted.
  const auto excl = WriteTemp("cw_emb_excl.txt", "1 2\na 1 2\n<unk> 0 0\n");
  CHECK(LoadEmbeddingFile(excl).vectors.size() == 2);

  const auto short_line =
      WriteTemp("cw_emb_short.txt", "2 3\na 1 2\n<unk> 0 0 0\n");
  try {
    LoadEmbeddingFile(short_line);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  CHECK_THROWS_AS(LoadEmbeddingFile(WriteTemp("cw_emb_nohdr.txt", "a 1 2 3\n")),
                  FormatError);
  CHECK_THROWS_AS(LoadEmbeddingFile(WriteTemp("cw_emb_nounk.txt", "1 1\na 1\n")),
                  ConfigError);
  CHECK_THROWS_AS(LoadEmbeddingFile("/nonexistent/cw.txt"), IoError);
}

TEST_CASE("embedding file round trip") {
  EmbeddingTable t;
  t.dim = 4;
  for (int i = 0; i < 50; ++i) {
    const std::string tok = i == 0 ? "<unk>" : "tok" + std::to_string(i);
    t.tokens.push_back(tok);
    std::vector<double> v;
    for (int d = 0; d < 4; ++d) v.push_back(std::sin(i * 4.0 + d) / 3.0);
    t.vectors[tok] = v;
  }
  const auto path = std::filesystem::temp_directory_path() / "cw_emb_rt.txt";
  WriteEmbeddingFile(t, path);
  const EmbeddingTable back = LoadEmbeddingFile(path);
  CHECK(back.tokens == t.tokens);
  for (const auto& [tok, v] : t.vectors) {
    const auto* b = back.Find(tok);
    REQUIRE(b != nullptr);
    for (std::size_t d = 0; d < 4; ++d) CHECK(std::abs((*b)[d] - v[d]) < 1e-6);
  }
}

TEST_CASE("tf-idf") {
  const std::vector<std::vector<std::string>> one = {{"a"}};
  const TfIdfModel m = TfIdfModel::Fit(one);
  CHECK(m.Idf("a") == doctest::Approx(1.0));
  CHECK(m.Idf("unseen") == doctest::Approx(std::log(2.0) + 1.0));
  const std::vector<std::string> terms = {"a", "b"};
  const std::vector<std::string> tweet = {"a"};
  CHECK(TfidfVector(tweet, m, terms) == std::vector<double>{1.0, 0.0});
  const std::vector<std::string> none = {"c"};
  CHECK(TfidfVector(none, m, terms) == std::vector<double>{0.0, 0.0});

  const std::vector<std::vector<std::string>> corpus = {{"a", "b"}, {"a"}, {"c"}};
  const TfIdfModel m3 = TfIdfModel::Fit(corpus);
  const std::vector<std::string> ab = {"a", "a", "b"};
  const auto v = TfidfVector(ab, m3, terms);
  const double wa = 2 * (std::log(4.0 / 3.0) + 1), wb = std::log(2.0) + 1;
  const double norm = std::sqrt(wa * wa + wb * wb);
  CHECK(v[0] == doctest::Approx(wa / norm));
  CHECK(v[1] == doctest::Approx(wb / norm));
  for (const auto& [term, df] : m3.document_frequency) CHECK(m3.Idf(term) >= 1.0);
  CHECK_THROWS_AS(TfIdfModel::Fit(std::vector<std::vector<std::string>>{}),
                  DegenerateInputError);
}

TEST_CASE("providers") {
  const Vocabulary vocab = Vocabulary::Build(
      std::vector<std::vector<std::string>>{{"coronavirus", "x"}});
  const EmbeddingProvider a = EmbeddingProvider::Trainable(vocab.size(), 3, 0.1, 9);
  const EmbeddingProvider b = EmbeddingProvider::Trainable(vocab.size(), 3, 0.1, 9);
  CHECK(std::equal(a.table().begin(), a.table().end(), b.table().begin()));
  for (std::size_t d = 0; d < 3; ++d) CHECK(a.table()[d] == 0.0);

  EmbeddingTable table;
  table.dim = 2;
  table.tokens = {"coronavirus", "<unk>"};
  table.vectors["coronavirus"] = {0.1234567, -2.5};
  table.vectors["<unk>"] = {7, 8};
  const auto p = EmbeddingProvider::Precomputed(vocab, table);
  CHECK_FALSE(p.trainable());
  const Batch batch =
      OneRow({kClsId, vocab.Lookup("coronavirus"), vocab.Lookup("x"), kSepId}, 2);
  const Tensor3 e = p.Lookup(batch);
  CHECK(e.dim0 == 1);
  CHECK(e.dim1 == 6);
  CHECK(e.dim2 == 2);
  CHECK(e.at(0, 1, 0) == 0.1234567);
  CHECK(e.at(0, 1, 1) == -2.5);
  CHECK(e.at(0, 2, 0) == 7.0);  // missing token -> <unk>
  CHECK(e.at(0, 4, 0) == 0.0);
  CHECK(e.at(0, 5, 1) == 0.0);
}

TEST_CASE("gradient gathering skips PAD and sums repeats") {
  const auto p = EmbeddingProvider::Trainable(6, 2, 0.1, 1);
  const Batch batch = OneRow({kClsId, 4, 4, kSepId}, 1);
  Tensor3 g(1, 5, 2);
  for (double& x : g.data) x = 1.0;
  const RowGradients rg = p.GatherGradients(batch, g);
  CHECK(rg.rows == std::vector<TokenId>{kClsId, kSepId, 4});
  CHECK(rg.values[4] == 2.0);
}

TEST_CASE("tf-idf provider features") {
  const std::vector<std::vector<std::string>> docs = {{"a", "b"}, {"a"}};
  const Vocabulary vocab = Vocabulary::Build(docs);
  const auto p = EmbeddingProvider::TfidfConcat(vocab, TfIdfModel::Fit(docs), 3,
                                                0.1, 2);
  CHECK(p.tfidf_dim() == vocab.size() - kFirstTokenId);
  const Batch batch = OneRow({kClsId, vocab.Lookup("a"), kSepId}, 3);
  const auto f = p.TfidfFeatures(batch);
  REQUIRE(f.size() == 2);
  CHECK(f[vocab.Lookup("a") - kFirstTokenId] == doctest::Approx(1.0));
  CHECK(f[vocab.Lookup("b") - kFirstTokenId] == 0.0);
}
