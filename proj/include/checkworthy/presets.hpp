#ifndef CHECKWORTHY_PRESETS_HPP_
#define CHECKWORTHY_PRESETS_HPP_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "checkworthy/dataset_io.hpp"
#include "checkworthy/features.hpp"
#include "checkworthy/optim.hpp"
#include "checkworthy/preprocess.hpp"

namespace checkworthy {

// One of the eight model variants M1..M8: token policy, training data,
// filter widths and input representation.
struct Preset {
  std::string name;
  std::string description;
  PreprocessPolicy policy;
  AugmentationMode augmentation = AugmentationMode::kNone;
  std::vector<std::size_t> filter_widths;
  ProviderKind provider = ProviderKind::kPrecomputed;
  // Which pretrained vectors the embedding file should hold.
  std::string embedding_source;
  // Fall back to trainable embeddings when no file is given.
  bool trainable_fallback = false;
  OptimConfig optim;
};

std::vector<std::string> PresetNames();

// Throws ConfigError listing the valid names.
Preset GetPreset(std::string_view name);

// The COVID-19 hashtag family consolidated under "coronavirus".
ConsolidationMap CoronavirusHashtagGroup();

// Stable multi-line textual dump (used for golden tests and `presets`).
std::string DumpPreset(const Preset& preset);

}  // namespace checkworthy

#endif  // CHECKWORTHY_PRESETS_HPP_
