#ifndef CHECKWORTHY_PIPELINE_HPP_
#define CHECKWORTHY_PIPELINE_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "checkworthy/dataset_io.hpp"
#include "checkworthy/features.hpp"
#include "checkworthy/metrics.hpp"
#include "checkworthy/optim.hpp"
#include "checkworthy/presets.hpp"
#include "checkworthy/preprocess.hpp"
#include "checkworthy/vocab.hpp"

namespace checkworthy {

// Fully resolved inputs of a train / predict run.
struct RunSpec {
  std::string preset = "M2";
  std::optional<std::filesystem::path> train;
  std::optional<std::filesystem::path> dev;
  std::optional<std::filesystem::path> test;
  std::optional<std::filesystem::path> embeddings;
  std::optional<std::filesystem::path> pheme;
  std::optional<std::filesystem::path> tw15;
  std::optional<std::filesystem::path> tw16;
  std::optional<std::filesystem::path> consolidation;
  std::filesystem::path out = ".";
  std::string run_id;  // defaults to the lowercase preset name
  std::uint64_t seed = 0;
  std::optional<ProviderKind> provider;
  std::optional<std::string> optim;  // "standard" or "acceptance"
  std::optional<double> learning_rate;
  std::optional<std::size_t> epochs;
  std::optional<std::size_t> batch_size;
  std::size_t embed_dim = 64;
  std::size_t min_freq = 1;

  std::string RunId() const;
  // Throws ConfigError for unknown presets or inconsistent settings and
  // IoError for paths that do not exist.
  void Validate() const;
};

// Applies "key=value" pairs (from a config file or the command line).
// Unknown keys raise ConfigError.
void ApplySetting(RunSpec& spec, const std::string& key,
                  const std::string& value);

// Parses a flat key=value file; '#' starts a comment.
std::map<std::string, std::string> ReadConfigFile(
    const std::filesystem::path& path);

// The preset's policy, with the consolidation map replaced from
// spec.consolidation when given.
PreprocessPolicy ResolvePolicy(const RunSpec& spec, const Preset& preset);
OptimConfig ResolveOptim(const RunSpec& spec, const Preset& preset);
ProviderKind ResolveProvider(const RunSpec& spec, const Preset& preset);

std::vector<std::vector<std::string>> TokenizeAll(
    std::span<const LabeledTweet> tweets, const PreprocessPolicy& policy);

std::vector<EncodedTweet> EncodeAll(
    std::span<const LabeledTweet> tweets,
    std::span<const std::vector<std::string>> tokens, const Vocabulary& vocab);

// Loads CLEF train plus the external corpora the preset's augmentation
// needs, and merges them.
std::vector<LabeledTweet> LoadTrainingData(const RunSpec& spec,
                                           const Preset& preset);

struct TrainOutputs {
  std::filesystem::path checkpoint;
  std::filesystem::path best_checkpoint;
  std::filesystem::path vocab;
  std::filesystem::path history;
  TrainResult result;
};

TrainOutputs RunTrain(const RunSpec& spec,
                      const EpochCallback& on_epoch = {});

// Scores `input` (a CLEF-format TSV) with a checkpoint and writes
// <out>/<run_id>.run.tsv. Returns the written path.
std::filesystem::path RunPredict(const RunSpec& spec,
                                 const std::filesystem::path& checkpoint,
                                 const std::filesystem::path& input);

MetricsRow RunEvaluate(const std::filesystem::path& gold,
                       const std::filesystem::path& run_file);

}  // namespace checkworthy

#endif  // CHECKWORTHY_PIPELINE_HPP_
