#ifndef CHECKWORTHY_DATASET_IO_HPP_
#define CHECKWORTHY_DATASET_IO_HPP_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace checkworthy {

enum class Source { kClef, kPheme, kTw15, kTw16 };

std::string_view SourceName(Source source);

struct LabeledTweet {
  std::string topic_id;
  std::string tweet_id;
  std::string text;
  int label = 0;  // 1 = check-worthy (or rumour)
  Source source = Source::kClef;
};

// Loads a CLEF CheckThat! split. Requires the columns topic_id, tweet_id,
// tweet_text and check_worthiness; other columns are ignored. With
// require_label = false a missing check_worthiness column is accepted
// (unlabelled test input) and every label is 0.
std::vector<LabeledTweet> LoadClefTsv(const std::filesystem::path& path,
                                      bool require_label = true);

struct ExternalLoadResult {
  std::vector<LabeledTweet> tweets;
  // Conversations / ids whose source tweet could not be recovered.
  std::size_t skipped = 0;
};

// Loads source tweets from a PHEME rumour-detection tree:
//   <root>/<event>/{rumours,non-rumours}/<thread>/source-tweets/<id>.json
// <root> may also be one level above the event directories (as in the
// published all-rnr-annotated-threads archive). Events and threads are
// visited in lexicographic order; replies are never read.
ExternalLoadResult LoadPheme(const std::filesystem::path& root,
                             bool rumours_only);

// Loads a Twitter15 / Twitter16 directory containing `label.txt`
// ("<label>:<tweet_id>" per line) and `source_tweets.txt`
// ("<tweet_id>\t<text>" per line). true/false/unverified collapse to 1 and
// non-rumor to 0. Labelled ids without a source text are skipped.
ExternalLoadResult LoadTwitter1516(const std::filesystem::path& dir,
                                   Source which);

enum class AugmentationMode {
  kNone,
  kPhemeRumoursOnly,
  kPhemeAll,
  kTw1516,
  kPhemePlusTw1516,
  kExternalOnly,
};

std::string_view AugmentationModeName(AugmentationMode mode);
AugmentationMode ParseAugmentationMode(std::string_view name);

struct ExternalCorpora {
  std::optional<std::vector<LabeledTweet>> pheme;
  std::optional<std::vector<LabeledTweet>> tw15;
  std::optional<std::vector<LabeledTweet>> tw16;
};

bool NeedsPheme(AugmentationMode mode);
bool NeedsTwitter1516(AugmentationMode mode);

// Concatenates training data per policy: CLEF rows first (unless
// kExternalOnly), then PHEME, TW15, TW16. kPhemeRumoursOnly keeps only the
// label-1 PHEME rows.
std::vector<LabeledTweet> Augment(const std::vector<LabeledTweet>& clef_train,
                                  AugmentationMode mode,
                                  const ExternalCorpora& externals);

struct RunEntry {
  std::string tweet_id;
  double score = 0.0;
};

// Ranked output for one topic. Entries are score-descending with ties broken
// by ascending tweet_id; use MakeRankedRun to establish that order.
struct RankedRun {
  std::string topic_id;
  std::string run_id;
  std::vector<RunEntry> entries;
};

RankedRun MakeRankedRun(std::string topic_id, std::string run_id,
                        std::vector<RunEntry> entries);

// Throws ArgumentError if ordering, score range or uniqueness is violated.
void ValidateRankedRun(const RankedRun& run);

// Writes "topic\ttweet\tscore\trun" lines, score with six decimals.
void WritePredictions(const RankedRun& run, const std::filesystem::path& path);
void WritePredictions(const std::vector<RankedRun>& runs,
                      const std::filesystem::path& path);

// Reads a prediction file back, grouping lines by topic in first-seen order.
// Line order within a topic is preserved as written.
std::vector<RankedRun> ReadPredictions(const std::filesystem::path& path);

}  // namespace checkworthy

#endif  // CHECKWORTHY_DATASET_IO_HPP_
