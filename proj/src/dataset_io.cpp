#include "checkworthy/dataset_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <unordered_set>

#include "checkworthy/errors.hpp"
#include "json.hpp"
#include "text_util.hpp"

namespace checkworthy {
namespace fs = std::filesystem;
using internal::SplitTabs;
using internal::StripCarriageReturn;
using internal::Trim;

std::string_view SourceName(Source source) {
  switch (source) {
    case Source::kClef: return "CLEF";
    case Source::kPheme: return "PHEME";
    case Source::kTw15: return "TW15";
    case Source::kTw16: return "TW16";
  }
  return "?";
}

namespace {

std::ifstream OpenForRead(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return in;
}

void CheckUnique(std::unordered_set<std::string>& seen, const std::string& id,
                 const std::string& where) {
  if (!seen.insert(id).second) {
    throw ParseError(where + ": duplicate tweet_id '" + id + "'");
  }
}

}  // namespace

std::vector<LabeledTweet> LoadClefTsv(const fs::path& path,
                                      bool require_label) {
  std::ifstream in = OpenForRead(path);
  std::string line;
  if (!std::getline(in, line)) {
    throw EmptyDatasetError(path.string() + ": empty file");
  }
  StripCarriageReturn(line);
  const std::vector<std::string> header = SplitTabs(line);
  auto column = [&](std::string_view name) {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) {
      throw SchemaError(path.string() + ": missing column '" +
                        std::string(name) + "'");
    }
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t topic_col = column("topic_id");
  const std::size_t id_col = column("tweet_id");
  const std::size_t text_col = column("tweet_text");
  const bool has_label =
      require_label || std::find(header.begin(), header.end(),
                                 "check_worthiness") != header.end();
  const std::size_t label_col = has_label ? column("check_worthiness") : 0;
  const std::size_t needed =
      std::max({topic_col, id_col, text_col, label_col}) + 1;

  std::vector<LabeledTweet> tweets;
  std::unordered_set<std::string> seen;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    StripCarriageReturn(line);
    if (Trim(line).empty()) continue;
    const std::vector<std::string> fields = SplitTabs(line);
    const std::string where = path.string() + " row " + std::to_string(row);
    if (fields.size() < needed) {
      throw ParseError(where + ": expected at least " +
                       std::to_string(needed) + " fields, got " +
                       std::to_string(fields.size()));
    }
    LabeledTweet tweet;
    tweet.topic_id = std::string(Trim(fields[topic_col]));
    tweet.tweet_id = std::string(Trim(fields[id_col]));
    tweet.text = fields[text_col];
    tweet.source = Source::kClef;
    const std::string_view label = has_label ? Trim(fields[label_col]) : "0";
    if (label == "0") {
      tweet.label = 0;
    } else if (label == "1") {
      tweet.label = 1;
    } else {
      throw ParseError(where + ": non-binary check_worthiness '" +
                       std::string(label) + "'");
    }
    if (tweet.tweet_id.empty()) throw ParseError(where + ": empty tweet_id");
    if (Trim(tweet.text).empty()) throw ParseError(where + ": empty tweet_text");
    CheckUnique(seen, tweet.tweet_id, where);
    tweets.push_back(std::move(tweet));
  }
  if (tweets.empty()) {
    throw EmptyDatasetError(path.string() + ": no data rows");
  }
  return tweets;
}

namespace {

std::vector<fs::path> SortedSubdirs(const fs::path& dir) {
  std::vector<fs::path> out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_directory()) out.push_back(entry.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool IsEventDir(const fs::path& dir) {
  return fs::is_directory(dir / "rumours") ||
         fs::is_directory(dir / "non-rumours");
}

std::string EventName(const fs::path& dir) {
  std::string name = dir.filename().string();
  constexpr std::string_view kSuffix = "-all-rnr-threads";
  if (name.size() > kSuffix.size() &&
      name.compare(name.size() - kSuffix.size(), kSuffix.size(), kSuffix) ==
          0) {
    name.resize(name.size() - kSuffix.size());
  }
  return name;
}

// Returns the source tweet of one conversation, if recoverable.
std::optional<LabeledTweet> ReadPhemeThread(const fs::path& thread,
                                            const std::string& event,
                                            int label) {
  const fs::path source_dir = thread / "source-tweets";
  if (!fs::is_directory(source_dir)) return std::nullopt;
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(source_dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      files.push_back(entry.path());
    }
  }
  if (files.empty()) return std::nullopt;
  std::sort(files.begin(), files.end());

  std::ifstream in(files.front());
  if (!in) return std::nullopt;
  const nlohmann::json doc = nlohmann::json::parse(in, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) return std::nullopt;

  LabeledTweet tweet;
  if (doc.contains("id_str") && doc["id_str"].is_string()) {
    tweet.tweet_id = doc["id_str"].get<std::string>();
  } else if (doc.contains("id") && doc["id"].is_number_integer()) {
    tweet.tweet_id = std::to_string(doc["id"].get<long long>());
  } else {
    tweet.tweet_id = files.front().stem().string();
  }
  for (const char* key : {"full_text", "text"}) {
    if (doc.contains(key) && doc[key].is_string()) {
      tweet.text = doc[key].get<std::string>();
      break;
    }
  }
  if (tweet.tweet_id.empty() || Trim(tweet.text).empty()) return std::nullopt;
  tweet.topic_id = event;
  tweet.label = label;
  tweet.source = Source::kPheme;
  return tweet;
}

}  // namespace

ExternalLoadResult LoadPheme(const fs::path& root, bool rumours_only) {
  std::error_code ec;
  if (!fs::is_directory(root, ec)) {
    throw IoError("cannot read PHEME directory " + root.string());
  }
  std::vector<fs::path> events;
  if (IsEventDir(root)) {
    events.push_back(root);
  } else {
    for (const fs::path& child : SortedSubdirs(root)) {
      if (IsEventDir(child)) {
        events.push_back(child);
      } else {
        for (const fs::path& grandchild : SortedSubdirs(child)) {
          if (IsEventDir(grandchild)) events.push_back(grandchild);
        }
      }
    }
  }
  if (events.empty()) {
    throw IoError(root.string() + ": no PHEME event directories found");
  }

  ExternalLoadResult result;
  std::unordered_set<std::string> seen;
  for (const fs::path& event_dir : events) {
    const std::string event = EventName(event_dir);
    const std::pair<const char*, int> classes[] = {{"rumours", 1},
                                                   {"non-rumours", 0}};
    for (const auto& [subdir, label] : classes) {
      if (rumours_only && label == 0) continue;
      const fs::path class_dir = event_dir / subdir;
      if (!fs::is_directory(class_dir)) continue;
      for (const fs::path& thread : SortedSubdirs(class_dir)) {
        std::optional<LabeledTweet> tweet =
            ReadPhemeThread(thread, event, label);
        if (!tweet || !seen.insert(tweet->tweet_id).second) {
          ++result.skipped;
          continue;
        }
        result.tweets.push_back(std::move(*tweet));
      }
    }
  }
  return result;
}

ExternalLoadResult LoadTwitter1516(const fs::path& dir, Source which) {
  if (which != Source::kTw15 && which != Source::kTw16) {
    throw ArgumentError("LoadTwitter1516 expects TW15 or TW16");
  }
  const std::string topic = which == Source::kTw15 ? "twitter15" : "twitter16";

  std::map<std::string, std::string> texts;
  {
    std::ifstream in = OpenForRead(dir / "source_tweets.txt");
    std::string line;
    while (std::getline(in, line)) {
      StripCarriageReturn(line);
      const std::size_t tab = line.find('\t');
      if (tab == std::string::npos) continue;
      texts.emplace(std::string(Trim(std::string_view(line).substr(0, tab))),
                    line.substr(tab + 1));
    }
  }

  ExternalLoadResult result;
  std::unordered_set<std::string> seen;
  std::ifstream in = OpenForRead(dir / "label.txt");
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    StripCarriageReturn(line);
    if (Trim(line).empty()) continue;
    const std::size_t colon = line.find(':');
    const std::string where =
        (dir / "label.txt").string() + " line " + std::to_string(row);
    if (colon == std::string::npos) {
      throw ParseError(where + ": expected '<label>:<tweet_id>'");
    }
    const std::string label =
        internal::ToLowerAscii(Trim(std::string_view(line).substr(0, colon)));
    const std::string id(Trim(std::string_view(line).substr(colon + 1)));
    int value;
    if (label == "true" || label == "false" || label == "unverified") {
      value = 1;
    } else if (label == "non-rumor" || label == "non-rumour") {
      value = 0;
    } else {
      throw ParseError(where + ": unknown label '" + label + "'");
    }
    const auto text = texts.find(id);
    if (text == texts.end() || Trim(text->second).empty() ||
        !seen.insert(id).second) {
      ++result.skipped;
      continue;
    }
    result.tweets.push_back(
        LabeledTweet{topic, id, text->second, value, which});
  }
  return result;
}

std::string_view AugmentationModeName(AugmentationMode mode) {
  switch (mode) {
    case AugmentationMode::kNone: return "none";
    case AugmentationMode::kPhemeRumoursOnly: return "pheme_rumours_only";
    case AugmentationMode::kPhemeAll: return "pheme_all";
    case AugmentationMode::kTw1516: return "tw1516";
    case AugmentationMode::kPhemePlusTw1516: return "pheme_plus_tw1516";
    case AugmentationMode::kExternalOnly: return "external_only";
  }
  return "?";
}

AugmentationMode ParseAugmentationMode(std::string_view name) {
  for (AugmentationMode mode :
       {AugmentationMode::kNone, AugmentationMode::kPhemeRumoursOnly,
        AugmentationMode::kPhemeAll, AugmentationMode::kTw1516,
        AugmentationMode::kPhemePlusTw1516, AugmentationMode::kExternalOnly}) {
    if (AugmentationModeName(mode) == name) return mode;
  }
  throw ConfigError("unknown augmentation mode '" + std::string(name) + "'");
}

bool NeedsPheme(AugmentationMode mode) {
  return mode == AugmentationMode::kPhemeRumoursOnly ||
         mode == AugmentationMode::kPhemeAll ||
         mode == AugmentationMode::kPhemePlusTw1516 ||
         mode == AugmentationMode::kExternalOnly;
}

bool NeedsTwitter1516(AugmentationMode mode) {
  return mode == AugmentationMode::kTw1516 ||
         mode == AugmentationMode::kPhemePlusTw1516 ||
         mode == AugmentationMode::kExternalOnly;
}

std::vector<LabeledTweet> Augment(const std::vector<LabeledTweet>& clef_train,
                                  AugmentationMode mode,
                                  const ExternalCorpora& externals) {
  auto require = [&](const std::optional<std::vector<LabeledTweet>>& corpus,
                     std::string_view name) -> const std::vector<LabeledTweet>& {
    if (!corpus) {
      throw ConfigError("augmentation mode '" +
                        std::string(AugmentationModeName(mode)) +
                        "' requires the " + std::string(name) + " corpus");
    }
    return *corpus;
  };

  std::vector<LabeledTweet> out;
  if (mode != AugmentationMode::kExternalOnly) {
    out.insert(out.end(), clef_train.begin(), clef_train.end());
  }
  if (NeedsPheme(mode)) {
    for (const LabeledTweet& t : require(externals.pheme, "PHEME")) {
      if (mode == AugmentationMode::kPhemeRumoursOnly && t.label != 1) continue;
      out.push_back(t);
    }
  }
  if (NeedsTwitter1516(mode)) {
    const auto& tw15 = require(externals.tw15, "Twitter15");
    const auto& tw16 = require(externals.tw16, "Twitter16");
    out.insert(out.end(), tw15.begin(), tw15.end());
    out.insert(out.end(), tw16.begin(), tw16.end());
  }
  return out;
}

RankedRun MakeRankedRun(std::string topic_id, std::string run_id,
                        std::vector<RunEntry> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const RunEntry& a, const RunEntry& b) {
              if (a.score != b.score) return a.score > b.score;
              return a.tweet_id < b.tweet_id;
            });
  RankedRun run{std::move(topic_id), std::move(run_id), std::move(entries)};
  ValidateRankedRun(run);
  return run;
}

void ValidateRankedRun(const RankedRun& run) {
  std::unordered_set<std::string> seen;
  for (std::size_t i = 0; i < run.entries.size(); ++i) {
    const RunEntry& e = run.entries[i];
    if (!(e.score >= 0.0 && e.score <= 1.0)) {
      throw ArgumentError("run entry '" + e.tweet_id + "' score out of [0,1]");
    }
    if (!seen.insert(e.tweet_id).second) {
      throw ArgumentError("duplicate tweet_id '" + e.tweet_id + "' in run");
    }
    if (i > 0) {
      const RunEntry& prev = run.entries[i - 1];
      if (prev.score < e.score ||
          (prev.score == e.score && !(prev.tweet_id < e.tweet_id))) {
        throw ArgumentError("run entries not in (score desc, tweet_id asc) "
                            "order at position " + std::to_string(i));
      }
    }
  }
}

namespace {

void WriteRunLines(const RankedRun& run, std::FILE* out) {
  for (const RunEntry& e : run.entries) {
    std::fprintf(out, "%s\t%s\t%.6f\t%s\n", run.topic_id.c_str(),
                 e.tweet_id.c_str(), e.score, run.run_id.c_str());
  }
}

}  // namespace

void WritePredictions(const std::vector<RankedRun>& runs,
                      const fs::path& path) {
  for (const RankedRun& run : runs) ValidateRankedRun(run);
  std::FILE* out = std::fopen(path.string().c_str(), "wb");
  if (out == nullptr) throw IoError("cannot write " + path.string());
  for (const RankedRun& run : runs) WriteRunLines(run, out);
  if (std::fclose(out) != 0) throw IoError("cannot write " + path.string());
}

void WritePredictions(const RankedRun& run, const fs::path& path) {
  WritePredictions(std::vector<RankedRun>{run}, path);
}

std::vector<RankedRun> ReadPredictions(const fs::path& path) {
  std::ifstream in = OpenForRead(path);
  std::vector<RankedRun> runs;
  std::map<std::string, std::size_t> by_topic;
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    StripCarriageReturn(line);
    if (Trim(line).empty()) continue;
    const std::vector<std::string> fields = SplitTabs(line);
    const std::string where = path.string() + " line " + std::to_string(row);
    if (fields.size() != 4) {
      throw ParseError(where + ": expected 4 tab-separated fields");
    }
    double score = 0.0;
    try {
      std::size_t used = 0;
      score = std::stod(fields[2], &used);
      if (used != fields[2].size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw ParseError(where + ": bad score '" + fields[2] + "'");
    }
    auto [it, inserted] = by_topic.emplace(fields[0], runs.size());
    if (inserted) runs.push_back(RankedRun{fields[0], fields[3], {}});
    runs[it->second].entries.push_back(RunEntry{fields[1], score});
  }
  return runs;
}

}  // namespace checkworthy
