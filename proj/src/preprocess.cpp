#include "checkworthy/preprocess.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <set>
#include <unordered_map>

#include "checkworthy/errors.hpp"
#include "text_util.hpp"

namespace checkworthy {
namespace {

struct CodePoint {
  char32_t value = 0;
  std::size_t length = 0;
};

// Decodes one UTF-8 code point; malformed bytes decode as themselves.
CodePoint Decode(std::string_view s, std::size_t i) {
  const auto byte = [&](std::size_t k) {
    return static_cast<unsigned char>(s[k]);
  };
  const unsigned char lead = byte(i);
  if (lead < 0x80) return {lead, 1};
  std::size_t length = 0;
  char32_t value = 0;
  if ((lead & 0xE0) == 0xC0) {
    length = 2;
    value = lead & 0x1F;
  } else if ((lead & 0xF0) == 0xE0) {
    length = 3;
    value = lead & 0x0F;
  } else if ((lead & 0xF8) == 0xF0) {
    length = 4;
    value = lead & 0x07;
  } else {
    return {lead, 1};
  }
  if (i + length > s.size()) return {lead, 1};
  for (std::size_t k = 1; k < length; ++k) {
    if ((byte(i + k) & 0xC0) != 0x80) return {lead, 1};
    value = (value << 6) | (byte(i + k) & 0x3F);
  }
  return {value, length};
}

bool IsSpace(char32_t c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' ||
         c == '\f' || c == 0xA0 || (c >= 0x2000 && c <= 0x200B) ||
         c == 0x202F || c == 0x205F || c == 0x3000;
}

bool IsAsciiDigit(char32_t c) { return c >= '0' && c <= '9'; }

bool IsAsciiAlpha(char32_t c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

bool IsAsciiWord(char32_t c) {
  return IsAsciiAlpha(c) || IsAsciiDigit(c) || c == '_';
}

// Letters and digits of any script; symbols, punctuation, emoji excluded.
bool IsWordChar(char32_t c) {
  if (c < 0x80) return IsAsciiWord(c);
  if (c <= 0xBF || c == 0xD7 || c == 0xF7) return false;
  if (c >= 0x2000 && c <= 0x2BFF) return false;
  if (c >= 0x3000 && c <= 0x303F) return false;
  if (c >= 0xFE30 && c <= 0xFE4F) return false;
  if (c >= 0xFF00 && c <= 0xFF0F) return false;
  if (c >= 0xFF1A && c <= 0xFF20) return false;
  if (c >= 0x1F000) return false;
  return true;
}

bool IsApostrophe(char32_t c) { return c == '\'' || c == 0x2019; }

bool StartsWithIgnoreCase(std::string_view s, std::size_t i,
                          std::string_view prefix) {
  if (s.size() - i < prefix.size()) return false;
  for (std::size_t k = 0; k < prefix.size(); ++k) {
    char c = s[i + k];
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    if (c != prefix[k]) return false;
  }
  return true;
}

class Segmenter {
 public:
  explicit Segmenter(std::string_view text) : text_(text) {}

  std::vector<Segment> Run() {
    std::size_t i = 0;
    while (i < text_.size()) {
      const CodePoint cp = Decode(text_, i);
      if (IsSpace(cp.value)) {
        i += cp.length;
        continue;
      }
      i = ScanToken(i, cp);
    }
    return std::move(segments_);
  }

 private:
  char32_t At(std::size_t i) const {
    return i < text_.size() ? Decode(text_, i).value : 0;
  }

  char32_t Before(std::size_t i) const {
    if (i == 0) return 0;
    std::size_t k = i - 1;
    while (k > 0 && (static_cast<unsigned char>(text_[k]) & 0xC0) == 0x80) --k;
    return Decode(text_, k).value;
  }

  std::size_t Emit(SegmentKind kind, std::size_t begin, std::size_t end) {
    segments_.push_back(
        Segment{kind, std::string(text_.substr(begin, end - begin)), begin,
                end});
    return end;
  }

  // Word characters plus inner '-' / apostrophes followed by word chars.
  std::size_t WordEnd(std::size_t i, bool allow_apostrophe) const {
    while (i < text_.size()) {
      const CodePoint cp = Decode(text_, i);
      if (IsWordChar(cp.value)) {
        i += cp.length;
        continue;
      }
      const bool joiner =
          cp.value == '-' || (allow_apostrophe && IsApostrophe(cp.value));
      if (joiner && i + cp.length < text_.size() &&
          IsWordChar(At(i + cp.length))) {
        i += cp.length;
        continue;
      }
      break;
    }
    return i;
  }

  std::size_t DigitsEnd(std::size_t i) const {
    while (i < text_.size() && IsAsciiDigit(text_[i])) ++i;
    return i;
  }

  // Number body starting at a digit: d+ (,ddd)* (.d+)?
  std::size_t NumberBodyEnd(std::size_t i, bool* plain_integer) const {
    std::size_t end = DigitsEnd(i);
    *plain_integer = true;
    while (end < text_.size() && text_[end] == ',') {
      const std::size_t group_end = DigitsEnd(end + 1);
      if (group_end - (end + 1) != 3) break;
      end = group_end;
      *plain_integer = false;
    }
    if (end + 1 < text_.size() && text_[end] == '.' &&
        IsAsciiDigit(text_[end + 1])) {
      end = DigitsEnd(end + 1);
      *plain_integer = false;
    }
    return end;
  }

  std::size_t MagnitudeEnd(std::size_t i) const {
    static constexpr std::array<std::string_view, 5> kWords = {
        "hundred", "thousand", "million", "billion", "trillion"};
    if (i >= text_.size() || text_[i] != ' ') return i;
    for (std::string_view word : kWords) {
      if (StartsWithIgnoreCase(text_, i + 1, word)) {
        const std::size_t end = i + 1 + word.size();
        if (end >= text_.size() || !IsWordChar(At(end))) return end;
      }
    }
    return i;
  }

  // Previous segment is a capitalised word that does not open a sentence,
  // separated from `begin` by whitespace only.
  bool FollowsNameWord(std::size_t begin) const {
    if (segments_.empty()) return false;
    const Segment& prev = segments_.back();
    if (prev.kind != SegmentKind::kWord || prev.end == begin) return false;
    const char first = prev.raw.front();
    if (!(first >= 'A' && first <= 'Z')) return false;
    if (segments_.size() == 1) return false;
    const Segment& before = segments_[segments_.size() - 2];
    if (before.kind == SegmentKind::kPunct &&
        (before.raw == "." || before.raw == "!" || before.raw == "?")) {
      return false;
    }
    return true;
  }

  std::size_t ScanNumber(std::size_t begin, std::size_t body) {
    bool plain = false;
    std::size_t end = NumberBodyEnd(body, &plain);
    // Digits glued to letters belong to a word ("COVID19" handled by the
    // word path, "19th" / "5G" here).
    if (end < text_.size() && IsWordChar(At(end))) {
      if (begin == body) return Emit(SegmentKind::kWord, begin,
                                     WordEnd(begin, true));
    }
    const bool prefixed = begin != body;
    bool percent = false;
    if (end < text_.size() && text_[end] == '%') {
      ++end;
      percent = true;
    }
    if (plain && !prefixed && !percent && FollowsNameWord(begin)) {
      return Emit(SegmentKind::kWord, begin, end);
    }
    if (!percent) end = MagnitudeEnd(end);
    return Emit(SegmentKind::kNumeric, begin, end);
  }

  std::size_t ScanToken(std::size_t i, CodePoint cp) {
    const char32_t c = cp.value;
    const bool at_boundary = !IsWordChar(Before(i));

    if (StartsWithIgnoreCase(text_, i, "http://") ||
        StartsWithIgnoreCase(text_, i, "https://") ||
        StartsWithIgnoreCase(text_, i, "www.")) {
      std::size_t end = i;
      while (end < text_.size()) {
        const CodePoint next = Decode(text_, end);
        if (IsSpace(next.value)) break;
        end += next.length;
      }
      return Emit(SegmentKind::kUrl, i, end);
    }
    if (c == '@' && at_boundary && IsAsciiWord(At(i + 1))) {
      std::size_t end = i + 1;
      while (end < text_.size() && IsAsciiWord(text_[end])) ++end;
      return Emit(SegmentKind::kMention, i, end);
    }
    if (c == '#' && IsWordChar(At(i + 1))) {
      return Emit(SegmentKind::kHashtag, i, WordEnd(i + 1, false));
    }
    if (c == '$' && IsAsciiDigit(At(i + 1))) {
      return ScanNumber(i, i + 1);
    }
    if ((c == '+' || c == '-') && IsAsciiDigit(At(i + 1)) && at_boundary &&
        !IsAsciiDigit(Before(i))) {
      return ScanNumber(i, i + 1);
    }
    if (IsAsciiDigit(c)) return ScanNumber(i, i);
    if (IsWordChar(c)) return Emit(SegmentKind::kWord, i, WordEnd(i, true));
    return Emit(SegmentKind::kPunct, i, i + cp.length);
  }

  std::string_view text_;
  std::vector<Segment> segments_;
};

void ReplaceAll(std::string& s, std::string_view from, std::string_view to) {
  std::size_t pos = 0;
  while ((pos = s.find(from, pos)) != std::string::npos) {
    s.replace(pos, from.size(), to);
    pos += to.size();
  }
}

std::string_view SpecialTokenFor(SegmentKind kind) {
  switch (kind) {
    case SegmentKind::kHashtag: return kHashtagToken;
    case SegmentKind::kMention: return kAccountToken;
    case SegmentKind::kUrl: return kUrlToken;
    case SegmentKind::kNumeric: return kNumberToken;
    default: return {};
  }
}

std::vector<std::string> SplitSpaces(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && s[i] == ' ') ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ') ++j;
    if (j > i) out.emplace_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace

std::string_view SegmentKindName(SegmentKind kind) {
  switch (kind) {
    case SegmentKind::kWord: return "WORD";
    case SegmentKind::kHashtag: return "HASHTAG";
    case SegmentKind::kMention: return "MENTION";
    case SegmentKind::kUrl: return "URL";
    case SegmentKind::kNumeric: return "NUMERIC";
    case SegmentKind::kPunct: return "PUNCT";
  }
  return "?";
}

std::vector<Segment> SegmentText(std::string_view text) {
  return Segmenter(text).Run();
}

std::string ToDisplayForm(std::string_view text) {
  std::string out(text);
  for (std::string_view token :
       {kNumberToken, kUrlToken, kAccountToken, kHashtagToken}) {
    std::string display = "⟨";
    display.append(token.substr(1, token.size() - 2));
    display.append("⟩");
    ReplaceAll(out, token, display);
  }
  return out;
}

std::string_view SegmentActionName(SegmentAction action) {
  switch (action) {
    case SegmentAction::kKeep: return "keep";
    case SegmentAction::kRemove: return "remove";
    case SegmentAction::kSpecialToken: return "special_token";
    case SegmentAction::kRootMap: return "root_map";
  }
  return "?";
}

SegmentAction ParseSegmentAction(std::string_view name) {
  for (SegmentAction a : {SegmentAction::kKeep, SegmentAction::kRemove,
                          SegmentAction::kSpecialToken,
                          SegmentAction::kRootMap}) {
    if (SegmentActionName(a) == name) return a;
  }
  throw ConfigError("unknown segment action '" + std::string(name) + "'");
}

void ConsolidationMap::Add(std::string raw, std::string root) {
  if (raw.empty()) throw ArgumentError("consolidation: empty raw segment");
  if (root.empty() || root.front() == '#' || root.front() == '@' ||
      root.front() == ' ' || root.back() == ' ' ||
      root.find('\t') != std::string::npos ||
      root != internal::ToLowerAscii(root)) {
    throw ArgumentError("consolidation: invalid root '" + root + "' for '" +
                        raw + "'");
  }
  entries_[std::move(raw)] = std::move(root);
}

void ConsolidationMap::AddGroup(std::span<const std::string> raws,
                                const std::string& root) {
  for (const std::string& raw : raws) Add(raw, root);
}

const std::string* ConsolidationMap::Find(std::string_view raw) const {
  const auto it = entries_.find(raw);
  return it == entries_.end() ? nullptr : &it->second;
}

ConsolidationMap ConsolidationMap::Load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  ConsolidationMap map;
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    internal::StripCarriageReturn(line);
    if (internal::Trim(line).empty()) continue;
    const auto fields = internal::SplitTabs(line);
    if (fields.size() != 2) {
      throw ParseError(path.string() + " line " + std::to_string(row) +
                       ": expected raw_segment<TAB>root");
    }
    map.Add(fields[0], fields[1]);
  }
  return map;
}

void ConsolidationMap::Save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  for (const auto& [raw, root] : entries_) out << raw << '\t' << root << '\n';
}

SegmentAction PreprocessPolicy::ActionFor(SegmentKind kind) const {
  switch (kind) {
    case SegmentKind::kHashtag: return hashtag;
    case SegmentKind::kMention: return mention;
    case SegmentKind::kUrl: return url;
    case SegmentKind::kNumeric: return numeric;
    default: return SegmentAction::kKeep;
  }
}

bool PreprocessPolicy::UsesRootMap() const {
  return hashtag == SegmentAction::kRootMap ||
         mention == SegmentAction::kRootMap ||
         url == SegmentAction::kRootMap || numeric == SegmentAction::kRootMap;
}

void PreprocessPolicy::Validate() const {
  if (UsesRootMap() && !consolidation) {
    throw ConfigError("root_map action requires a consolidation map");
  }
}

std::vector<std::vector<std::string>> ApplyPolicyPerSegment(
    std::span<const Segment> segments, const PreprocessPolicy& policy) {
  policy.Validate();
  std::vector<std::vector<std::string>> out;
  out.reserve(segments.size());
  for (const Segment& seg : segments) {
    std::vector<std::string>& tokens = out.emplace_back();
    if (seg.kind == SegmentKind::kWord) {
      tokens.push_back(policy.lowercase ? internal::ToLowerAscii(seg.raw)
                                        : seg.raw);
      continue;
    }
    switch (policy.ActionFor(seg.kind)) {
      case SegmentAction::kKeep:
        tokens.push_back(seg.raw);
        break;
      case SegmentAction::kRemove:
        break;
      case SegmentAction::kSpecialToken:
        tokens.emplace_back(SpecialTokenFor(seg.kind));
        break;
      case SegmentAction::kRootMap:
        if (const std::string* root = policy.consolidation->Find(seg.raw)) {
          tokens = SplitSpaces(*root);
        } else {
          tokens.emplace_back(SpecialTokenFor(seg.kind));
        }
        break;
    }
  }
  return out;
}

std::vector<std::string> ApplyPolicy(std::span<const Segment> segments,
                                     const PreprocessPolicy& policy) {
  std::vector<std::string> flat;
  for (auto& tokens : ApplyPolicyPerSegment(segments, policy)) {
    for (auto& t : tokens) flat.push_back(std::move(t));
  }
  return flat;
}

std::string RenderWithPolicy(std::string_view text,
                             const PreprocessPolicy& policy) {
  const std::vector<Segment> segments = SegmentText(text);
  const auto per_segment = ApplyPolicyPerSegment(segments, policy);
  std::string out;
  std::optional<std::size_t> last_end;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    if (per_segment[i].empty()) continue;
    if (last_end) {
      const std::string_view gap =
          text.substr(*last_end, segments[i].begin - *last_end);
      const bool spaced = std::any_of(gap.begin(), gap.end(), [](char c) {
        return c == ' ' || c == '\t' || c == '\n' || c == '\r';
      });
      if (spaced) out.push_back(' ');
    }
    for (std::size_t k = 0; k < per_segment[i].size(); ++k) {
      if (k > 0) out.push_back(' ');
      out += per_segment[i][k];
    }
    last_end = segments[i].end;
  }
  return out;
}

std::vector<std::string> Preprocess(std::string_view text,
                                    const PreprocessPolicy& policy) {
  return ApplyPolicy(SegmentText(text), policy);
}

double Chi2Score(long a, long b, long c, long d) {
  const double n = static_cast<double>(a + b + c + d);
  const double denom = static_cast<double>(a + c) * static_cast<double>(b + d) *
                       static_cast<double>(a + b) * static_cast<double>(c + d);
  if (denom == 0.0) return 0.0;
  const double cross = static_cast<double>(a) * static_cast<double>(d) -
                       static_cast<double>(c) * static_cast<double>(b);
  return n * cross * cross / denom;
}

Chi2Table Chi2Scores(std::span<const std::vector<Segment>> tweets,
                     std::span<const int> labels) {
  if (tweets.size() != labels.size()) {
    throw ArgumentError("chi2: tweets and labels differ in length");
  }
  long positives = 0;
  for (int y : labels) {
    if (y != 0 && y != 1) throw ArgumentError("chi2: labels must be 0/1");
    positives += y;
  }
  const long total = static_cast<long>(labels.size());
  if (positives == 0 || positives == total) {
    throw DegenerateInputError("chi2: corpus must contain both classes");
  }

  struct Counts {
    SegmentKind kind;
    long pos = 0;
    long neg = 0;
  };
  std::map<std::string, Counts> counts;
  for (std::size_t i = 0; i < tweets.size(); ++i) {
    std::set<std::string> present;
    for (const Segment& seg : tweets[i]) {
      if (seg.kind != SegmentKind::kHashtag &&
          seg.kind != SegmentKind::kMention) {
        continue;
      }
      if (!present.insert(seg.raw).second) continue;
      Counts& c = counts.try_emplace(seg.raw, Counts{seg.kind}).first->second;
      (labels[i] == 1 ? c.pos : c.neg) += 1;
    }
  }

  Chi2Table table;
  table.corpus_size = tweets.size();
  const long negatives = total - positives;
  for (const auto& [term, c] : counts) {
    Chi2Entry e;
    e.segment = term;
    e.kind = c.kind;
    e.a = c.pos;
    e.b = positives - c.pos;
    e.c = c.neg;
    e.d = negatives - c.neg;
    e.score = Chi2Score(e.a, e.b, e.c, e.d);
    table.entries.push_back(std::move(e));
  }
  return table;
}

void WriteChi2Table(const Chi2Table& table,
                    const std::filesystem::path& path) {
  std::FILE* out = std::fopen(path.string().c_str(), "wb");
  if (out == nullptr) throw IoError("cannot write " + path.string());
  std::fprintf(out, "segment\tA\tB\tC\tD\tscore\n");
  for (const Chi2Entry& e : table.entries) {
    std::fprintf(out, "%s\t%ld\t%ld\t%ld\t%ld\t%.6f\n", e.segment.c_str(), e.a,
                 e.b, e.c, e.d, e.score);
  }
  std::fclose(out);
}

std::vector<std::pair<std::string, double>> ProposeConsolidation(
    const Chi2Table& table, int top_k) {
  if (top_k <= 0) throw ArgumentError("top_k must be positive");
  std::vector<std::pair<std::string, double>> ranked;
  ranked.reserve(table.entries.size());
  for (const Chi2Entry& e : table.entries) ranked.emplace_back(e.segment, e.score);
  std::sort(ranked.begin(), ranked.end(), [](const auto& x, const auto& y) {
    if (x.second != y.second) return x.second > y.second;
    return x.first < y.first;
  });
  if (ranked.size() > static_cast<std::size_t>(top_k)) ranked.resize(top_k);
  return ranked;
}

}  // namespace checkworthy
