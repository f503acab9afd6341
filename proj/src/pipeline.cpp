#include "checkworthy/pipeline.hpp"

#include <charconv>
#include <fstream>

#include "checkworthy/checkpoint.hpp"
#include "checkworthy/errors.hpp"
#include "checkworthy/model.hpp"
#include "text_util.hpp"

namespace checkworthy {
namespace fs = std::filesystem;

namespace {

template <typename T>
T ParseNumber(const std::string& key, const std::string& value) {
  T out{};
  const auto [ptr, ec] =
      std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw ConfigError("invalid value '" + value + "' for " + key);
  }
  return out;
}

void RequireExists(const std::optional<fs::path>& path, const char* what) {
  if (path && !fs::exists(*path)) {
    throw IoError(std::string(what) + " path does not exist: " +
                  path->string());
  }
}

}  // namespace

std::string RunSpec::RunId() const {
  return run_id.empty() ? internal::ToLowerAscii(preset) : run_id;
}

void RunSpec::Validate() const {
  GetPreset(preset);
  RequireExists(train, "train");
  RequireExists(dev, "dev");
  RequireExists(test, "test");
  RequireExists(embeddings, "embeddings");
  RequireExists(pheme, "pheme");
  RequireExists(tw15, "tw15");
  RequireExists(tw16, "tw16");
  RequireExists(consolidation, "consolidation");
  if (provider && *provider != ProviderKind::kPrecomputed && embeddings) {
    throw ConfigError("an embeddings file conflicts with provider '" +
                      std::string(ProviderKindName(*provider)) + "'");
  }
  if (optim && *optim != "standard" && *optim != "acceptance") {
    throw ConfigError("optim must be 'standard' or 'acceptance'");
  }
  if (embed_dim == 0) throw ConfigError("embed_dim must be positive");
  if (min_freq == 0) throw ConfigError("min_freq must be >= 1");
}

void ApplySetting(RunSpec& spec, const std::string& key,
                  const std::string& value) {
  if (key == "preset") {
    spec.preset = value;
  } else if (key == "train") {
    spec.train = value;
  } else if (key == "dev") {
    spec.dev = value;
  } else if (key == "test") {
    spec.test = value;
  } else if (key == "embeddings") {
    spec.embeddings = value;
  } else if (key == "pheme") {
    spec.pheme = value;
  } else if (key == "tw15") {
    spec.tw15 = value;
  } else if (key == "tw16") {
    spec.tw16 = value;
  } else if (key == "consolidation") {
    spec.consolidation = value;
  } else if (key == "out") {
    spec.out = value;
  } else if (key == "run_id" || key == "run-id") {
    spec.run_id = value;
  } else if (key == "seed") {
    spec.seed = ParseNumber<std::uint64_t>(key, value);
  } else if (key == "provider") {
    spec.provider = ParseProviderKind(value);
  } else if (key == "optim") {
    spec.optim = value;
  } else if (key == "lr" || key == "learning_rate") {
    spec.learning_rate = ParseNumber<double>(key, value);
  } else if (key == "epochs") {
    spec.epochs = ParseNumber<std::size_t>(key, value);
  } else if (key == "batch_size") {
    spec.batch_size = ParseNumber<std::size_t>(key, value);
  } else if (key == "embed_dim") {
    spec.embed_dim = ParseNumber<std::size_t>(key, value);
  } else if (key == "min_freq") {
    spec.min_freq = ParseNumber<std::size_t>(key, value);
  } else {
    throw ConfigError("unknown setting '" + key + "'");
  }
}

std::map<std::string, std::string> ReadConfigFile(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path.string());
  std::map<std::string, std::string> out;
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    const std::string_view trimmed = internal::Trim(line);
    if (trimmed.empty()) continue;
    const std::size_t eq = trimmed.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(path.string() + " line " + std::to_string(row) +
                        ": expected key=value");
    }
    out[std::string(internal::Trim(trimmed.substr(0, eq)))] =
        std::string(internal::Trim(trimmed.substr(eq + 1)));
  }
  return out;
}

PreprocessPolicy ResolvePolicy(const RunSpec& spec, const Preset& preset) {
  PreprocessPolicy policy = preset.policy;
  if (spec.consolidation) {
    policy.consolidation = ConsolidationMap::Load(*spec.consolidation);
  }
  policy.Validate();
  return policy;
}

OptimConfig ResolveOptim(const RunSpec& spec, const Preset& preset) {
  OptimConfig config = preset.optim;
  if (spec.optim == "acceptance") config = OptimConfig::Acceptance();
  if (spec.learning_rate) config.learning_rate = *spec.learning_rate;
  if (spec.epochs) config.epochs = *spec.epochs;
  if (spec.batch_size) config.batch_size = *spec.batch_size;
  config.seed = spec.seed;
  config.Validate();
  return config;
}

ProviderKind ResolveProvider(const RunSpec& spec, const Preset& preset) {
  const ProviderKind kind = spec.provider.value_or(preset.provider);
  if (kind == ProviderKind::kPrecomputed && !spec.embeddings) {
    if (!spec.provider && preset.trainable_fallback) {
      return ProviderKind::kTrainable;
    }
    throw ConfigError("preset " + preset.name +
                      " uses precomputed embeddings (" +
                      preset.embedding_source +
                      "); pass --embeddings or --provider trainable");
  }
  return kind;
}

std::vector<std::vector<std::string>> TokenizeAll(
    std::span<const LabeledTweet> tweets, const PreprocessPolicy& policy) {
  std::vector<std::vector<std::string>> out;
  out.reserve(tweets.size());
  for (const LabeledTweet& t : tweets) out.push_back(Preprocess(t.text, policy));
  return out;
}

std::vector<EncodedTweet> EncodeAll(
    std::span<const LabeledTweet> tweets,
    std::span<const std::vector<std::string>> tokens, const Vocabulary& vocab) {
  if (tweets.size() != tokens.size()) {
    throw InternalError("EncodeAll: tweets/tokens length mismatch");
  }
  std::vector<EncodedTweet> out;
  out.reserve(tweets.size());
  for (std::size_t i = 0; i < tweets.size(); ++i) {
    out.push_back(EncodedTweet{Encode(tokens[i], vocab), tweets[i].label,
                               tweets[i].tweet_id, tweets[i].topic_id});
  }
  return out;
}

std::vector<LabeledTweet> LoadTrainingData(const RunSpec& spec,
                                           const Preset& preset) {
  std::vector<LabeledTweet> clef;
  if (preset.augmentation != AugmentationMode::kExternalOnly) {
    if (!spec.train) throw ConfigError("a --train file is required");
    clef = LoadClefTsv(*spec.train);
  }
  ExternalCorpora externals;
  if (NeedsPheme(preset.augmentation)) {
    if (!spec.pheme) {
      throw ConfigError("preset " + preset.name + " needs the PHEME corpus");
    }
    externals.pheme = LoadPheme(*spec.pheme, false).tweets;
  }
  if (NeedsTwitter1516(preset.augmentation)) {
    if (!spec.tw15 || !spec.tw16) {
      throw ConfigError("preset " + preset.name +
                        " needs the Twitter15 and Twitter16 corpora");
    }
    externals.tw15 = LoadTwitter1516(*spec.tw15, Source::kTw15).tweets;
    externals.tw16 = LoadTwitter1516(*spec.tw16, Source::kTw16).tweets;
  }
  return Augment(clef, preset.augmentation, externals);
}

TrainOutputs RunTrain(const RunSpec& spec, const EpochCallback& on_epoch) {
  spec.Validate();
  const Preset preset = GetPreset(spec.preset);
  const PreprocessPolicy policy = ResolvePolicy(spec, preset);
  const OptimConfig optim = ResolveOptim(spec, preset);
  const ProviderKind provider_kind = ResolveProvider(spec, preset);

  const std::vector<LabeledTweet> train = LoadTrainingData(spec, preset);
  if (train.empty()) throw EmptyDatasetError("no training tweets");
  const auto train_tokens = TokenizeAll(train, policy);
  const Vocabulary vocab = Vocabulary::Build(train_tokens, spec.min_freq);
  const std::vector<EncodedTweet> train_encoded =
      EncodeAll(train, train_tokens, vocab);

  std::vector<EncodedTweet> dev_encoded;
  if (spec.dev) {
    const std::vector<LabeledTweet> dev = LoadClefTsv(*spec.dev);
    dev_encoded = EncodeAll(dev, TokenizeAll(dev, policy), vocab);
  }

  constexpr double kInitScale = 0.05;
  const std::uint64_t embed_seed = spec.seed ^ 0xD1B54A32D192ED03ULL;
  EmbeddingProvider provider = [&] {
    switch (provider_kind) {
      case ProviderKind::kPrecomputed:
        return EmbeddingProvider::Precomputed(
            vocab, LoadEmbeddingFile(*spec.embeddings));
      case ProviderKind::kTfidfConcat:
        return EmbeddingProvider::TfidfConcat(
            vocab, TfIdfModel::Fit(train_tokens), spec.embed_dim, kInitScale,
            embed_seed);
      case ProviderKind::kTrainable:
        break;
    }
    return EmbeddingProvider::Trainable(vocab.size(), spec.embed_dim,
                                        kInitScale, embed_seed);
  }();

  ModelConfig config;
  config.filter_widths = preset.filter_widths;
  config.filters_per_width = 32;
  config.seed = spec.seed;
  Model model = Model::Create(config, std::move(provider));

  TrainOutputs out;
  out.result = Train(std::move(model), train_encoded, dev_encoded, optim,
                     on_epoch);

  fs::create_directories(spec.out);
  const std::string run_id = spec.RunId();
  out.vocab = spec.out / (run_id + ".vocab.tsv");
  out.checkpoint = spec.out / (run_id + ".ckpt");
  out.best_checkpoint = spec.out / (run_id + ".best.ckpt");
  out.history = spec.out / (run_id + ".history.tsv");
  vocab.Save(out.vocab);

  Checkpoint ckpt{preset.name, policy, out.vocab.filename().string(),
                  vocab.Hash(), optim.epochs, out.result.final_model};
  SaveCheckpoint(ckpt, out.checkpoint);
  ckpt.epoch = out.result.best_epoch;
  ckpt.model = out.result.best_model;
  SaveCheckpoint(ckpt, out.best_checkpoint);
  WriteHistory(out.result.history, out.history);
  return out;
}

fs::path RunPredict(const RunSpec& spec, const fs::path& checkpoint,
                    const fs::path& input) {
  const Vocabulary vocab = Vocabulary::Load(CheckpointVocabPath(checkpoint));
  const Checkpoint ckpt = LoadCheckpoint(checkpoint, vocab);
  const std::vector<LabeledTweet> tweets = LoadClefTsv(input, false);
  const std::vector<EncodedTweet> encoded =
      EncodeAll(tweets, TokenizeAll(tweets, ckpt.policy), vocab);
  const std::string run_id = spec.RunId();
  const std::vector<RankedRun> runs = Rank(ckpt.model, encoded, run_id);
  fs::create_directories(spec.out);
  const fs::path path = spec.out / (run_id + ".run.tsv");
  WritePredictions(runs, path);
  return path;
}

MetricsRow RunEvaluate(const fs::path& gold, const fs::path& run_file) {
  const std::vector<LabeledTweet> labels = LoadClefTsv(gold);
  const std::vector<RankedRun> runs = ReadPredictions(run_file);
  return Evaluate(runs, GoldByTopic(labels));
}

}  // namespace checkworthy
