#ifndef CHECKWORTHY_PREPROCESS_HPP_
#define CHECKWORTHY_PREPROCESS_HPP_

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace checkworthy {

enum class SegmentKind { kWord, kHashtag, kMention, kUrl, kNumeric, kPunct };

std::string_view SegmentKindName(SegmentKind kind);

// A typed span of tweet text. `begin`/`end` are byte offsets into the
// original UTF-8 string, so text.substr(begin, end - begin) == raw.
struct Segment {
  SegmentKind kind = SegmentKind::kWord;
  std::string raw;
  std::size_t begin = 0;
  std::size_t end = 0;

  bool operator==(const Segment&) const = default;
};

// Splits a tweet into typed segments covering every non-whitespace byte.
//
// Recognisers, tried in order at each token start:
//   URL      http://, https:// or www. up to the next whitespace
//   MENTION  '@' followed by [A-Za-z0-9_]+
//   HASHTAG  '#' followed by word characters; inner '-' allowed (#COVID-19)
//   NUMERIC  optional sign or '$', digits with optional ",ddd" groups and
//            ".d+" part, optional '%' suffix; a following magnitude word
//            (hundred, thousand, million, billion, trillion) is absorbed
//   WORD     word characters with inner '-' or apostrophes; a digit run glued
//            to letters ("COVID19", "19th") is a WORD
//   PUNCT    any other single code point
// A bare integer directly after a capitalised, non-sentence-initial word is
// read as part of a name ("Corona 19") and stays a WORD.
std::vector<Segment> SegmentText(std::string_view text);

inline constexpr std::string_view kNumberToken = "<number>";
inline constexpr std::string_view kUrlToken = "<url>";
inline constexpr std::string_view kAccountToken = "<account>";
inline constexpr std::string_view kHashtagToken = "<hashtag>";

// Replaces the ASCII special tokens with their angle-bracket display form
// (<number> -> U+27E8 number U+27E9).
std::string ToDisplayForm(std::string_view text);

enum class SegmentAction { kKeep, kRemove, kSpecialToken, kRootMap };

std::string_view SegmentActionName(SegmentAction action);
SegmentAction ParseSegmentAction(std::string_view name);

// Manually curated raw-segment -> root mapping (Segment2Root).
class ConsolidationMap {
 public:
  ConsolidationMap() = default;

  // Roots must be non-empty, lowercase, without a leading '#' or '@' and
  // without tabs. A root may be a short phrase; its words become separate
  // tokens.
  void Add(std::string raw, std::string root);
  void AddGroup(std::span<const std::string> raws, const std::string& root);

  const std::string* Find(std::string_view raw) const;
  const std::map<std::string, std::string, std::less<>>& entries() const {
    return entries_;
  }
  bool empty() const { return entries_.empty(); }

  // Two-column TSV: raw_segment \t root.
  static ConsolidationMap Load(const std::filesystem::path& path);
  void Save(const std::filesystem::path& path) const;

 private:
  std::map<std::string, std::string, std::less<>> entries_;
};

struct PreprocessPolicy {
  SegmentAction hashtag = SegmentAction::kKeep;
  SegmentAction mention = SegmentAction::kKeep;
  SegmentAction url = SegmentAction::kKeep;
  SegmentAction numeric = SegmentAction::kKeep;
  bool lowercase = false;
  std::optional<ConsolidationMap> consolidation;

  SegmentAction ActionFor(SegmentKind kind) const;
  bool UsesRootMap() const;
  // Throws ConfigError when kRootMap is used without a consolidation map.
  void Validate() const;
};

// Tokens for each segment under `policy`, in order. Removed segments yield no
// tokens; multi-word roots yield several.
std::vector<std::vector<std::string>> ApplyPolicyPerSegment(
    std::span<const Segment> segments, const PreprocessPolicy& policy);

std::vector<std::string> ApplyPolicy(std::span<const Segment> segments,
                                     const PreprocessPolicy& policy);

// Like ApplyPolicy but re-joins surviving tokens using the original spacing:
// a token is separated from its predecessor by one space iff the original
// text had whitespace between the two segments.
std::string RenderWithPolicy(std::string_view text,
                             const PreprocessPolicy& policy);

// SegmentText + ApplyPolicy.
std::vector<std::string> Preprocess(std::string_view text,
                                    const PreprocessPolicy& policy);

// 2x2 contingency statistics for one hashtag or mention.
struct Chi2Entry {
  std::string segment;
  SegmentKind kind = SegmentKind::kHashtag;
  long a = 0;  // positive tweets containing the term
  long b = 0;  // positive tweets without it
  long c = 0;  // negative tweets containing it
  long d = 0;  // negative tweets without it
  double score = 0.0;
};

struct Chi2Table {
  std::vector<Chi2Entry> entries;  // sorted by segment
  std::size_t corpus_size = 0;
};

// N (AD - CB)^2 / ((A+C)(B+D)(A+B)(C+D)) on binary presence of each distinct
// hashtag / mention string. Zero denominators score 0.
double Chi2Score(long a, long b, long c, long d);

Chi2Table Chi2Scores(std::span<const std::vector<Segment>> tweets,
                     std::span<const int> labels);

// segment \t A \t B \t C \t D \t score
void WriteChi2Table(const Chi2Table& table, const std::filesystem::path& path);

// Highest-scoring terms, ties broken lexicographically.
std::vector<std::pair<std::string, double>> ProposeConsolidation(
    const Chi2Table& table, int top_k);

}  // namespace checkworthy

#endif  // CHECKWORTHY_PREPROCESS_HPP_
