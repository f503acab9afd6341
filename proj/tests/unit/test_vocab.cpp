#include <filesystem>
#include <numeric>

#include "doctest.h"
#include "checkworthy/errors.hpp"
#include "checkworthy/vocab.hpp"

using namespace checkworthy;

namespace {

std::vector<std::vector<std::string>> Corpus(
    std::initializer_list<std::initializer_list<const char*>> docs) {
  std::vector<std::vector<std::string>> out;
  for (auto d : docs) out.emplace_back(d.begin(), d.end());
  return out;
}

EncodedTweet Tweet(std::size_t n, std::string id) {
  EncodedTweet t;
  t.ids.assign(n, kFirstTokenId);
  t.tweet_id = std::move(id);
  return t;
}

}  // namespace

TEST_CASE("vocabulary build order") {
  const auto corpus = Corpus({{"a", "a", "b"}});
  const Vocabulary v = Vocabulary::Build(corpus, 1);
  CHECK(v.Lookup("a") == 4);
  CHECK(v.Lookup("b") == 5);
  CHECK(v.Token(kPadId) == "<pad>");
  CHECK(v.Token(kSepId) == "[SEP]");
  const Vocabulary pruned = Vocabulary::Build(corpus, 2);
  CHECK(pruned.Contains("a"));
  CHECK_FALSE(pruned.Contains("b"));
  CHECK(pruned.Lookup("b") == kUnkId);
  CHECK(Vocabulary::Build(corpus, 1).Hash() == v.Hash());
  // Equal counts fall back to lexicographic order.
  const Vocabulary tied = Vocabulary::Build(Corpus({{"z", "m"}, {"m", "z"}}));
  CHECK(tied.Lookup("m") == 4);
  CHECK(tied.Lookup("z") == 5);
  CHECK_THROWS_AS(Vocabulary::Build(std::vector<std::vector<std::string>>{}),
                  DegenerateInputError);
}

TEST_CASE("encode and decode") {
  const Vocabulary v = Vocabulary::Build(Corpus({{"a", "a", "b"}}));
  const std::vector<std::string> empty;
  CHECK(Encode(empty, v) == std::vector<TokenId>{kClsId, kSepId});
  const std::vector<std::string> a = {"a"};
  CHECK(Encode(a, v) == std::vector<TokenId>{2, 4, 3});
  const std::vector<std::string> z = {"zzz"};
  CHECK(Encode(z, v) == std::vector<TokenId>{2, 1, 3});
  for (TokenId id = 0; id < TokenId(v.size()); ++id) {
    const std::vector<TokenId> ids = {id};
    CHECK(Decode(ids, v) == std::vector<std::string>{v.Token(id)});
    CHECK(v.Lookup(v.Token(id)) == id);
  }
}

TEST_CASE("vocabulary file round trip") {
  const Vocabulary v =
      Vocabulary::Build(Corpus({{"x", "y", "y", "<number>", "caf\xc3\xa9"}}));
  const auto path = std::filesystem::temp_directory_path() / "cw_vocab_rt.tsv";
  v.Save(path);
  const Vocabulary back = Vocabulary::Load(path);
  CHECK(back.tokens() == v.tokens());
  CHECK(back.Hash() == v.Hash());
  std::filesystem::remove(path);
}

TEST_CASE("batches pad to their longest row") {
  const std::vector<EncodedTweet> tweets = {Tweet(5, "a"), Tweet(9, "b"),
                                            Tweet(20, "c")};
  const auto batches = MakeBatches(tweets, 10, false, 0);
  REQUIRE(batches.size() == 1);
  CHECK(batches[0].length == 20);
  CHECK(batches[0].RowLength(0) == 5);
  CHECK(batches[0].id(0, 5) == kPadId);
  CHECK_FALSE(batches[0].real(0, 5));
  CHECK(batches[0].tweet_ids == std::vector<std::string>{"a", "b", "c"});
  CHECK(MakeBatches(tweets, 10, false, 0, 25)[0].length == 25);
}

TEST_CASE("batch counts and mask mass") {
  std::vector<EncodedTweet> tweets;
  std::size_t real = 0;
  for (int i = 0; i < 672; ++i) {
    tweets.push_back(Tweet(3 + i % 17, std::to_string(i)));
    real += 3 + i % 17;
  }
  const auto batches = MakeBatches(tweets, 10, true, 42);
  CHECK(batches.size() == 68);
  CHECK(batches.back().rows == 2);
  std::size_t mass = 0;
  std::vector<std::string> seen;
  for (const Batch& b : batches) {
    mass += std::accumulate(b.mask.begin(), b.mask.end(), std::size_t{0});
    seen.insert(seen.end(), b.tweet_ids.begin(), b.tweet_ids.end());
  }
  CHECK(mass == real);
  std::sort(seen.begin(), seen.end());
  CHECK(std::adjacent_find(seen.begin(), seen.end()) == seen.end());
  CHECK(seen.size() == 672);

  const auto again = MakeBatches(tweets, 10, true, 42);
  for (std::size_t i = 0; i < batches.size(); ++i) {
    CHECK(again[i].tweet_ids == batches[i].tweet_ids);
  }
  const auto other = MakeBatches(tweets, 10, true, 43);
  CHECK(other[0].tweet_ids != batches[0].tweet_ids);
  const auto plain = MakeBatches(tweets, 10, false, 42);
  CHECK(plain[0].tweet_ids[0] == "0");
  CHECK(plain[67].tweet_ids[1] == "671");
}
