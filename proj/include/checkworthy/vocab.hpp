#ifndef CHECKWORTHY_VOCAB_HPP_
#define CHECKWORTHY_VOCAB_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace checkworthy {

using TokenId = std::int32_t;

inline constexpr TokenId kPadId = 0;
inline constexpr TokenId kUnkId = 1;
inline constexpr TokenId kClsId = 2;
inline constexpr TokenId kSepId = 3;
inline constexpr TokenId kFirstTokenId = 4;

inline constexpr std::string_view kPadToken = "<pad>";
inline constexpr std::string_view kUnkToken = "<unk>";
inline constexpr std::string_view kClsToken = "[CLS]";
inline constexpr std::string_view kSepToken = "[SEP]";

// Token <-> id mapping with four reserved ids (PAD, UNK, CLS, SEP).
class Vocabulary {
 public:
  Vocabulary();

  // Indexes tokens seen at least `min_freq` times, most frequent first and
  // lexicographically within equal counts.
  static Vocabulary Build(std::span<const std::vector<std::string>> corpora,
                          std::size_t min_freq = 1);

  TokenId Lookup(std::string_view token) const;
  const std::string& Token(TokenId id) const;
  bool Contains(std::string_view token) const;
  std::size_t size() const { return tokens_.size(); }
  const std::vector<std::string>& tokens() const { return tokens_; }
  std::size_t min_freq() const { return min_freq_; }

  // FNV-1a over the serialised mapping; used to pair checkpoints with
  // their vocabulary file.
  std::uint64_t Hash() const;

  // TSV "token \t id"; the first four lines are the reserved tokens.
  void Save(const std::filesystem::path& path) const;
  static Vocabulary Load(const std::filesystem::path& path);

 private:
  void Append(std::string token);

  std::vector<std::string> tokens_;
  std::unordered_map<std::string, TokenId> ids_;
  std::size_t min_freq_ = 1;
};

// [CLS] ids... [SEP]; unknown tokens map to UNK.
std::vector<TokenId> Encode(std::span<const std::string> tokens,
                            const Vocabulary& vocab);
std::vector<std::string> Decode(std::span<const TokenId> ids,
                                const Vocabulary& vocab);

struct EncodedTweet {
  std::vector<TokenId> ids;
  int label = 0;
  std::string tweet_id;
  std::string topic_id;
};

// Rows padded with PAD to the longest row of the batch.
struct Batch {
  std::size_t rows = 0;
  std::size_t length = 0;
  std::vector<TokenId> ids;       // rows x length, row-major
  std::vector<std::uint8_t> mask;  // 1 = real token
  std::vector<int> labels;
  std::vector<std::string> tweet_ids;
  std::vector<std::string> topic_ids;

  TokenId id(std::size_t r, std::size_t t) const { return ids[r * length + t]; }
  bool real(std::size_t r, std::size_t t) const {
    return mask[r * length + t] != 0;
  }
  std::size_t RowLength(std::size_t r) const;
};

// Chunks tweets into batches of at most `batch_size`, optionally after a
// seeded shuffle. Each batch is padded to its own longest row, or to
// `min_length` when that is larger (for convolution widths).
std::vector<Batch> MakeBatches(std::span<const EncodedTweet> tweets,
                               std::size_t batch_size, bool shuffle,
                               std::uint64_t seed, std::size_t min_length = 0);

}  // namespace checkworthy

#endif  // CHECKWORTHY_VOCAB_HPP_
