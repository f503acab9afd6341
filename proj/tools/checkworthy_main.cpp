// checkworthy: preprocess, chi2, train, predict, evaluate, presets.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "checkworthy/dataset_io.hpp"
#include "checkworthy/errors.hpp"
#include "checkworthy/metrics.hpp"
#include "checkworthy/pipeline.hpp"
#include "checkworthy/presets.hpp"
#include "checkworthy/preprocess.hpp"

namespace fs = std::filesystem;
using namespace checkworthy;

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

// Flags shared by the commands that take a RunSpec. Values stay strings until
// they are merged over the config file.
struct SpecFlags {
  std::string config;
  std::map<std::string, std::string> values;

  void Register(CLI::App* cmd, const std::vector<std::string>& keys) {
    cmd->add_option("--config", config, "flat key=value config file");
    for (const std::string& key : keys) {
      std::string flag = "--" + key;
      for (char& c : flag) {
        if (c == '_') c = '-';
      }
      cmd->add_option_function<std::string>(
          flag, [this, key](const std::string& v) { values[key] = v; },
          "override '" + key + "'");
    }
  }

  RunSpec Resolve() const {
    RunSpec spec;
    if (!config.empty()) {
      for (const auto& [k, v] : ReadConfigFile(config)) ApplySetting(spec, k, v);
    }
    for (const auto& [k, v] : values) ApplySetting(spec, k, v);
    spec.Validate();
    return spec;
  }
};

const std::vector<std::string> kTrainKeys = {
    "preset", "seed",     "train",     "dev",        "test",
    "embeddings", "out",  "run_id",    "provider",   "optim",
    "lr",     "epochs",   "batch_size", "embed_dim", "min_freq",
    "pheme",  "tw15",     "tw16",      "consolidation"};

int CmdPreprocess(const SpecFlags& flags, const std::string& input) {
  const RunSpec spec = flags.Resolve();
  const Preset preset = GetPreset(spec.preset);
  const PreprocessPolicy policy = ResolvePolicy(spec, preset);
  const fs::path in = input.empty() ? spec.train.value_or("") : fs::path(input);
  if (in.empty()) throw ConfigError("preprocess needs --input or --train");
  const std::vector<LabeledTweet> tweets = LoadClefTsv(in, false);
  fs::create_directories(spec.out);
  const fs::path path = spec.out / (spec.RunId() + ".tokens.tsv");
  std::FILE* out = std::fopen(path.string().c_str(), "wb");
  if (out == nullptr) throw IoError("cannot write " + path.string());
  std::fprintf(out, "tweet_id\tlabel\ttokens\n");
  for (const LabeledTweet& t : tweets) {
    std::string joined;
    for (const std::string& tok : Preprocess(t.text, policy)) {
      if (!joined.empty()) joined.push_back(' ');
      joined += tok;
    }
    std::fprintf(out, "%s\t%d\t%s\n", t.tweet_id.c_str(), t.label,
                 joined.c_str());
  }
  std::fclose(out);
  std::cout << path.string() << '\n';
  return 0;
}

int CmdChi2(const SpecFlags& flags, int top_k) {
  const RunSpec spec = flags.Resolve();
  if (!spec.train) throw ConfigError("chi2 needs --train");
  const std::vector<LabeledTweet> tweets = LoadClefTsv(*spec.train);
  std::vector<std::vector<Segment>> segments;
  std::vector<int> labels;
  for (const LabeledTweet& t : tweets) {
    segments.push_back(SegmentText(t.text));
    labels.push_back(t.label);
  }
  const Chi2Table table = Chi2Scores(segments, labels);
  fs::create_directories(spec.out);
  const fs::path path = spec.out / (spec.RunId() + ".chi2.tsv");
  WriteChi2Table(table, path);
  std::cerr << "wrote " << path.string() << '\n';
  for (const auto& [segment, score] : ProposeConsolidation(table, top_k)) {
    std::printf("%s\t%.6f\n", segment.c_str(), score);
  }
  return 0;
}

int CmdTrain(const SpecFlags& flags) {
  const RunSpec spec = flags.Resolve();
  const TrainOutputs out = RunTrain(spec, [](const EpochRecord& r) {
    std::fprintf(stderr, "epoch %zu\ttrain_loss %.6f\tdev_map %.4f\n", r.epoch,
                 r.train_loss, r.dev_map);
  });
  std::cout << out.checkpoint.string() << '\n'
            << out.best_checkpoint.string() << '\n';
  return 0;
}

int CmdPredict(const SpecFlags& flags, const std::string& checkpoint,
               const std::string& input) {
  const RunSpec spec = flags.Resolve();
  fs::path in = input;
  if (in.empty()) in = spec.test.value_or(spec.dev.value_or(""));
  if (in.empty()) throw ConfigError("predict needs --input, --test or --dev");
  std::cout << RunPredict(spec, checkpoint, in).string() << '\n';
  return 0;
}

int CmdEvaluate(const std::string& gold, const std::string& run,
                const std::string& out_dir, const std::string& run_id) {
  const MetricsRow row = RunEvaluate(gold, run);
  std::string id = run_id;
  if (id.empty()) {
    const auto runs = ReadPredictions(run);
    id = runs.empty() ? "run" : runs.front().run_id;
  }
  const std::string text = MetricsHeader() + "\n" + FormatMetricsRow(id, row) + "\n";
  std::cout << text;
  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    const fs::path path = fs::path(out_dir) / (id + ".metrics.tsv");
    std::FILE* out = std::fopen(path.string().c_str(), "wb");
    if (out == nullptr) throw IoError("cannot write " + path.string());
    std::fputs(text.c_str(), out);
    std::fclose(out);
  }
  return 0;
}

int CmdPresets(const std::string& name) {
  if (!name.empty()) {
    std::cout << DumpPreset(GetPreset(name));
    return 0;
  }
  for (const std::string& n : PresetNames()) {
    const Preset p = GetPreset(n);
    std::cout << p.name << '\t' << p.description << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Check-worthiness ranking: CNN over token embeddings"};
  app.require_subcommand(1);

  SpecFlags pre_flags, chi2_flags, train_flags, predict_flags;
  std::string pre_input, predict_input, checkpoint, gold, run, eval_out,
      eval_run_id, preset_name;
  int top_k = 20;

  auto* pre = app.add_subcommand("preprocess", "tokenise a TSV with a preset");
  pre_flags.Register(pre, {"preset", "train", "out", "run_id", "consolidation"});
  pre->add_option("--input", pre_input, "CLEF-format TSV");

  auto* chi2 = app.add_subcommand("chi2", "score hashtags/handles by chi-square");
  chi2_flags.Register(chi2, {"train", "out", "run_id"});
  chi2->add_option("--top-k", top_k, "number of proposals to print");

  auto* train = app.add_subcommand("train", "train a model");
  train_flags.Register(train, kTrainKeys);

  auto* predict = app.add_subcommand("predict", "write a ranked run file");
  predict_flags.Register(predict, kTrainKeys);
  predict->add_option("--checkpoint", checkpoint)->required();
  predict->add_option("--input", predict_input, "CLEF-format TSV to score");

  auto* evaluate = app.add_subcommand("evaluate", "score a run file");
  evaluate->add_option("--gold", gold)->required();
  evaluate->add_option("--run", run)->required();
  evaluate->add_option("--out", eval_out);
  evaluate->add_option("--run-id", eval_run_id);

  auto* presets = app.add_subcommand("presets", "list or dump model presets");
  presets->add_option("--preset", preset_name);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*pre) return CmdPreprocess(pre_flags, pre_input);
    if (*chi2) return CmdChi2(chi2_flags, top_k);
    if (*train) return CmdTrain(train_flags);
    if (*predict) return CmdPredict(predict_flags, checkpoint, predict_input);
    if (*evaluate) return CmdEvaluate(gold, run, eval_out, eval_run_id);
    if (*presets) return CmdPresets(preset_name);
  } catch (const ConfigError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}
