#ifndef CHECKWORTHY_CHECKPOINT_HPP_
#define CHECKWORTHY_CHECKPOINT_HPP_

#include <cstdint>
#include <filesystem>
#include <string>

#include "checkworthy/model.hpp"
#include "checkworthy/preprocess.hpp"
#include "checkworthy/vocab.hpp"

namespace checkworthy {

// Everything needed to score new tweets: the model plus the preprocessing
// it was trained with and a reference to its vocabulary file. The layout is
// documented in docs/checkpoint.md.
struct Checkpoint {
  std::string preset;
  PreprocessPolicy policy;
  std::string vocab_file;  // relative to the checkpoint's directory
  std::uint64_t vocab_hash = 0;
  std::size_t epoch = 0;
  Model model;
};

void SaveCheckpoint(const Checkpoint& checkpoint,
                    const std::filesystem::path& path);

// The vocabulary is needed to rebuild TF-IDF weights and is checked against
// the stored hash.
Checkpoint LoadCheckpoint(const std::filesystem::path& path,
                          const Vocabulary& vocab);

// Reads just enough of the header to locate the vocabulary file.
std::filesystem::path CheckpointVocabPath(const std::filesystem::path& path);

}  // namespace checkworthy

#endif  // CHECKWORTHY_CHECKPOINT_HPP_
