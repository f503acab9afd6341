#include "checkworthy/vocab.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>

#include "checkworthy/errors.hpp"
#include "checkworthy/rng.hpp"
#include "text_util.hpp"

namespace checkworthy {

Vocabulary::Vocabulary() {
  for (std::string_view t : {kPadToken, kUnkToken, kClsToken, kSepToken}) {
    Append(std::string(t));
  }
}

void Vocabulary::Append(std::string token) {
  ids_.emplace(token, static_cast<TokenId>(tokens_.size()));
  tokens_.push_back(std::move(token));
}

Vocabulary Vocabulary::Build(std::span<const std::vector<std::string>> corpora,
                             std::size_t min_freq) {
  if (corpora.empty()) throw DegenerateInputError("vocabulary: empty corpus");
  if (min_freq < 1) throw ArgumentError("vocabulary: min_freq must be >= 1");
  std::map<std::string, std::size_t> freq;
  for (const auto& doc : corpora) {
    for (const std::string& token : doc) ++freq[token];
  }
  std::vector<std::pair<std::string, std::size_t>> ranked(freq.begin(),
                                                          freq.end());
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  Vocabulary vocab;
  vocab.min_freq_ = min_freq;
  for (auto& [token, count] : ranked) {
    if (count < min_freq) break;
    if (vocab.Contains(token)) continue;
    vocab.Append(token);
  }
  return vocab;
}

TokenId Vocabulary::Lookup(std::string_view token) const {
  const auto it = ids_.find(std::string(token));
  return it == ids_.end() ? kUnkId : it->second;
}

const std::string& Vocabulary::Token(TokenId id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= tokens_.size()) {
    throw ArgumentError("vocabulary: id " + std::to_string(id) +
                        " out of range");
  }
  return tokens_[static_cast<std::size_t>(id)];
}

bool Vocabulary::Contains(std::string_view token) const {
  return ids_.contains(std::string(token));
}

std::uint64_t Vocabulary::Hash() const {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&](std::string_view s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ULL;
    }
  };
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    mix(tokens_[i]);
    mix("\t");
    mix(std::to_string(i));
    mix("\n");
  }
  return h;
}

void Vocabulary::Save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    out << tokens_[i] << '\t' << i << '\n';
  }
}

Vocabulary Vocabulary::Load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  Vocabulary vocab;
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    internal::StripCarriageReturn(line);
    const auto fields = internal::SplitTabs(line);
    const std::string where = path.string() + " line " + std::to_string(row + 1);
    if (fields.size() != 2 || fields[1] != std::to_string(row)) {
      throw ParseError(where + ": expected '<token>\\t" + std::to_string(row) +
                       "'");
    }
    if (row < kFirstTokenId) {
      if (fields[0] != vocab.tokens_[row]) {
        throw FormatError(where + ": reserved token mismatch");
      }
    } else {
      if (vocab.Contains(fields[0])) {
        throw ParseError(where + ": duplicate token");
      }
      vocab.Append(fields[0]);
    }
    ++row;
  }
  if (row < kFirstTokenId) throw FormatError(path.string() + ": truncated");
  return vocab;
}

std::vector<TokenId> Encode(std::span<const std::string> tokens,
                            const Vocabulary& vocab) {
  std::vector<TokenId> ids;
  ids.reserve(tokens.size() + 2);
  ids.push_back(kClsId);
  for (const std::string& t : tokens) ids.push_back(vocab.Lookup(t));
  ids.push_back(kSepId);
  return ids;
}

std::vector<std::string> Decode(std::span<const TokenId> ids,
                                const Vocabulary& vocab) {
  std::vector<std::string> out;
  out.reserve(ids.size());
  for (TokenId id : ids) out.push_back(vocab.Token(id));
  return out;
}

std::size_t Batch::RowLength(std::size_t r) const {
  std::size_t n = 0;
  for (std::size_t t = 0; t < length; ++t) n += real(r, t) ? 1 : 0;
  return n;
}

std::vector<Batch> MakeBatches(std::span<const EncodedTweet> tweets,
                               std::size_t batch_size, bool shuffle,
                               std::uint64_t seed, std::size_t min_length) {
  if (batch_size < 1) throw ArgumentError("batch_size must be >= 1");
  std::vector<std::size_t> order(tweets.size());
  std::iota(order.begin(), order.end(), 0);
  if (shuffle) {
    Rng rng(seed);
    rng.shuffle(std::span<std::size_t>(order));
  }

  std::vector<Batch> batches;
  for (std::size_t start = 0; start < order.size(); start += batch_size) {
    const std::size_t stop = std::min(order.size(), start + batch_size);
    Batch batch;
    batch.rows = stop - start;
    batch.length = min_length;
    for (std::size_t k = start; k < stop; ++k) {
      batch.length = std::max(batch.length, tweets[order[k]].ids.size());
    }
    batch.ids.assign(batch.rows * batch.length, kPadId);
    batch.mask.assign(batch.rows * batch.length, 0);
    for (std::size_t k = start; k < stop; ++k) {
      const EncodedTweet& tweet = tweets[order[k]];
      const std::size_t r = k - start;
      std::copy(tweet.ids.begin(), tweet.ids.end(),
                batch.ids.begin() + static_cast<std::ptrdiff_t>(r * batch.length));
      std::fill_n(batch.mask.begin() + static_cast<std::ptrdiff_t>(r * batch.length),
                  tweet.ids.size(), 1);
      batch.labels.push_back(tweet.label);
      batch.tweet_ids.push_back(tweet.tweet_id);
      batch.topic_ids.push_back(tweet.topic_id);
    }
    batches.push_back(std::move(batch));
  }
  return batches;
}

}  // namespace checkworthy
