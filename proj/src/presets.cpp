#include "checkworthy/presets.hpp"

#include <sstream>

#include "checkworthy/errors.hpp"

namespace checkworthy {
namespace {

using A = SegmentAction;

PreprocessPolicy Policy(A hashtag, A mention, A url, A numeric,
                        bool lowercase) {
  PreprocessPolicy p;
  p.hashtag = hashtag;
  p.mention = mention;
  p.url = url;
  p.numeric = numeric;
  p.lowercase = lowercase;
  return p;
}

std::vector<Preset> AllPresets() {
  std::vector<Preset> presets;

  Preset m1;
  m1.name = "M1";
  m1.description =
      "Handles and hashtags rooted via chi-square-guided consolidation, "
      "remaining hashtags/URLs/numbers as special tokens; CT-BERT; widths "
      "2,4,7";
  m1.policy = Policy(A::kRootMap, A::kRootMap, A::kSpecialToken,
                     A::kSpecialToken, false);
  m1.policy.consolidation = CoronavirusHashtagGroup();
  m1.filter_widths = {2, 4, 7};
  m1.embedding_source = "ct-bert";
  presets.push_back(m1);

  Preset m2;
  m2.name = "M2";
  m2.description =
      "Special tokens for numbers; handles, URLs and hashtags removed; "
      "CT-BERT; widths 2,4";
  m2.policy = Policy(A::kRemove, A::kRemove, A::kRemove, A::kSpecialToken,
                     false);
  m2.filter_widths = {2, 4};
  m2.embedding_source = "ct-bert";
  m2.trainable_fallback = true;
  presets.push_back(m2);

  Preset m3;
  m3.name = "M3";
  m3.description =
      "CLEF train + PHEME rumours; special tokens for numbers; uncased BERT";
  m3.policy = Policy(A::kKeep, A::kKeep, A::kKeep, A::kSpecialToken, true);
  m3.augmentation = AugmentationMode::kPhemeRumoursOnly;
  m3.filter_widths = {2, 4, 7};
  m3.embedding_source = "bert-base-uncased";
  presets.push_back(m3);

  Preset m4;
  m4.name = "M4";
  m4.description =
      "Numbers, handles, URLs and hashtags removed; embeddings trained on "
      "CLEF train + TF-IDF";
  m4.policy = Policy(A::kRemove, A::kRemove, A::kRemove, A::kRemove, false);
  m4.filter_widths = {2, 4, 7};
  m4.provider = ProviderKind::kTfidfConcat;
  m4.embedding_source = "clef-train";
  presets.push_back(m4);

  Preset m5;
  m5.name = "M5";
  m5.description =
      "CLEF train + Twitter15/16; special tokens for numbers; uncased BERT";
  m5.policy = Policy(A::kKeep, A::kKeep, A::kKeep, A::kSpecialToken, true);
  m5.augmentation = AugmentationMode::kTw1516;
  m5.filter_widths = {2, 4, 7};
  m5.embedding_source = "bert-base-uncased";
  presets.push_back(m5);

  Preset m6;
  m6.name = "M6";
  m6.description =
      "CLEF train + PHEME + Twitter15/16; special tokens for numbers; "
      "uncased BERT";
  m6.policy = Policy(A::kKeep, A::kKeep, A::kKeep, A::kSpecialToken, true);
  m6.augmentation = AugmentationMode::kPhemePlusTw1516;
  m6.filter_widths = {2, 4, 7};
  m6.embedding_source = "bert-base-uncased";
  presets.push_back(m6);

  Preset m7;
  m7.name = "M7";
  m7.description = "No preprocessing; ELMo";
  m7.policy = Policy(A::kKeep, A::kKeep, A::kKeep, A::kKeep, false);
  m7.filter_widths = {2, 4, 7};
  m7.embedding_source = "elmo";
  presets.push_back(m7);

  Preset m8;
  m8.name = "M8";
  m8.description =
      "PHEME + Twitter15/16 only, no CLEF training data; special tokens for "
      "numbers; uncased BERT";
  m8.policy = Policy(A::kKeep, A::kKeep, A::kKeep, A::kSpecialToken, true);
  m8.augmentation = AugmentationMode::kExternalOnly;
  m8.filter_widths = {2, 4, 7};
  m8.embedding_source = "bert-base-uncased";
  presets.push_back(m8);

  for (Preset& p : presets) p.optim = OptimConfig::Standard();
  return presets;
}

}  // namespace

std::vector<std::string> PresetNames() {
  std::vector<std::string> names;
  for (const Preset& p : AllPresets()) names.push_back(p.name);
  return names;
}

Preset GetPreset(std::string_view name) {
  for (Preset& p : AllPresets()) {
    if (p.name == name) return p;
  }
  std::string valid;
  for (const std::string& n : PresetNames()) valid += (valid.empty() ? "" : ", ") + n;
  throw ConfigError("unknown preset '" + std::string(name) +
                    "' (valid: " + valid + ")");
}

ConsolidationMap CoronavirusHashtagGroup() {
  static const std::vector<std::string> kGroup = {
      "#coronavirus", "#COVID19'", "#COVID-19",
      "#COVID19",     "#Coronavirus", "#Corona-virus"};
  ConsolidationMap map;
  map.AddGroup(kGroup, "coronavirus");
  return map;
}

std::string DumpPreset(const Preset& preset) {
  std::ostringstream out;
  out << "preset " << preset.name << '\n';
  out << "augmentation " << AugmentationModeName(preset.augmentation) << '\n';
  out << "hashtag " << SegmentActionName(preset.policy.hashtag) << '\n';
  out << "mention " << SegmentActionName(preset.policy.mention) << '\n';
  out << "url " << SegmentActionName(preset.policy.url) << '\n';
  out << "numeric " << SegmentActionName(preset.policy.numeric) << '\n';
  out << "lowercase " << (preset.policy.lowercase ? 1 : 0) << '\n';
  out << "consolidation_entries "
      << (preset.policy.consolidation ? preset.policy.consolidation->entries().size() : 0)
      << '\n';
  out << "filter_widths";
  for (std::size_t w : preset.filter_widths) out << ' ' << w;
  out << '\n';
  out << "filters_per_width 32\n";
  out << "provider " << ProviderKindName(preset.provider) << '\n';
  out << "embedding_source " << preset.embedding_source << '\n';
  out << "trainable_fallback " << (preset.trainable_fallback ? 1 : 0) << '\n';
  out << "learning_rate " << preset.optim.learning_rate << '\n';
  out << "epochs " << preset.optim.epochs << '\n';
  out << "batch_size " << preset.optim.batch_size << '\n';
  return out.str();
}

}  // namespace checkworthy
