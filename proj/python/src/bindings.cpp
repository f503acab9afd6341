#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <map>
#include <string>
#include <vector>

#include "checkworthy/checkworthy.hpp"

namespace py = pybind11;
using namespace checkworthy;

namespace {

Judged MakeJudged(std::vector<int> relevance, std::size_t pool_relevant) {
  return Judged{std::move(relevance), pool_relevant};
}

py::dict ExternalDict(const ExternalLoadResult& r) {
  py::dict d;
  d["tweets"] = r.tweets;
  d["skipped"] = r.skipped;
  return d;
}

py::dict MetricsDict(const MetricsRow& row) {
  py::dict d;
  d["map"] = row.map;
  d["r_precision"] = row.r_precision;
  py::dict p;
  for (const auto& [k, v] : row.precision_at) p[py::int_(k)] = v;
  d["precision_at"] = p;
  d["topics"] = row.topics;
  return d;
}

RunSpec SpecFromDict(const std::map<std::string, std::string>& settings) {
  RunSpec spec;
  for (const auto& [k, v] : settings) ApplySetting(spec, k, v);
  spec.Validate();
  return spec;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Check-worthiness ranking core";
  m.attr("__version__") = "0.1.0";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<IoError>(m, "IoError", base);
  py::register_exception<SchemaError>(m, "SchemaError", base);
  py::register_exception<ParseError>(m, "ParseError", base);
  py::register_exception<FormatError>(m, "FormatError", base);
  py::register_exception<EmptyDatasetError>(m, "EmptyDatasetError", base);
  py::register_exception<ConfigError>(m, "ConfigError", base);
  py::register_exception<ArgumentError>(m, "ArgumentError", base);
  py::register_exception<DegenerateInputError>(m, "DegenerateInputError", base);
  py::register_exception<UndefinedMetricError>(m, "UndefinedMetricError", base);
  py::register_exception<BatchTooShortError>(m, "BatchTooShortError", base);
  py::register_exception<TrainingError>(m, "TrainingError", base);
  py::register_exception<InternalError>(m, "InternalError", base);

  // Datasets.
  py::enum_<Source>(m, "Source")
      .value("CLEF", Source::kClef)
      .value("PHEME", Source::kPheme)
      .value("TW15", Source::kTw15)
      .value("TW16", Source::kTw16);
  py::class_<LabeledTweet>(m, "LabeledTweet")
      .def(py::init<>())
      .def_readwrite("topic_id", &LabeledTweet::topic_id)
      .def_readwrite("tweet_id", &LabeledTweet::tweet_id)
      .def_readwrite("text", &LabeledTweet::text)
      .def_readwrite("label", &LabeledTweet::label)
      .def_readwrite("source", &LabeledTweet::source)
      .def("__repr__", [](const LabeledTweet& t) {
        return "LabeledTweet(" + t.tweet_id + ", label=" +
               std::to_string(t.label) + ")";
      });
  m.def("load_clef_tsv", &LoadClefTsv, py::arg("path"),
        py::arg("require_label") = true);
  m.def("load_pheme", [](const std::filesystem::path& p, bool rumours_only) {
    return ExternalDict(LoadPheme(p, rumours_only));
  }, py::arg("path"), py::arg("rumours_only") = false);
  m.def("load_twitter1516", [](const std::filesystem::path& p, Source which) {
    return ExternalDict(LoadTwitter1516(p, which));
  }, py::arg("path"), py::arg("which"));

  // Preprocessing.
  py::enum_<SegmentKind>(m, "SegmentKind")
      .value("WORD", SegmentKind::kWord)
      .value("HASHTAG", SegmentKind::kHashtag)
      .value("MENTION", SegmentKind::kMention)
      .value("URL", SegmentKind::kUrl)
      .value("NUMERIC", SegmentKind::kNumeric)
      .value("PUNCT", SegmentKind::kPunct);
  py::class_<Segment>(m, "Segment")
      .def_readonly("kind", &Segment::kind)
      .def_readonly("raw", &Segment::raw)
      .def_readonly("begin", &Segment::begin)
      .def_readonly("end", &Segment::end)
      .def("__repr__", [](const Segment& s) {
        return "Segment(" + std::string(SegmentKindName(s.kind)) + ", '" +
               s.raw + "')";
      });
  py::enum_<SegmentAction>(m, "SegmentAction")
      .value("KEEP", SegmentAction::kKeep)
      .value("REMOVE", SegmentAction::kRemove)
      .value("SPECIAL_TOKEN", SegmentAction::kSpecialToken)
      .value("ROOT_MAP", SegmentAction::kRootMap);
  py::class_<PreprocessPolicy>(m, "PreprocessPolicy")
      .def(py::init<>())
      .def_readwrite("hashtag", &PreprocessPolicy::hashtag)
      .def_readwrite("mention", &PreprocessPolicy::mention)
      .def_readwrite("url", &PreprocessPolicy::url)
      .def_readwrite("numeric", &PreprocessPolicy::numeric)
      .def_readwrite("lowercase", &PreprocessPolicy::lowercase)
      .def_property(
          "consolidation",
          [](const PreprocessPolicy& p) {
            std::map<std::string, std::string> out;
            if (p.consolidation) {
              for (const auto& [k, v] : p.consolidation->entries()) out[k] = v;
            }
            return out;
          },
          [](PreprocessPolicy& p, const std::map<std::string, std::string>& e) {
            ConsolidationMap map;
            for (const auto& [k, v] : e) map.Add(k, v);
            p.consolidation = map;
          })
      .def("validate", &PreprocessPolicy::Validate);
  m.def("segment", &SegmentText, py::arg("text"));
  m.def("preprocess", &Preprocess, py::arg("text"), py::arg("policy"));
  m.def("render", &RenderWithPolicy, py::arg("text"), py::arg("policy"));
  m.def("to_display_form", &ToDisplayForm, py::arg("text"));
  m.def("chi2_score", &Chi2Score, py::arg("a"), py::arg("b"), py::arg("c"),
        py::arg("d"));
  m.def("propose_consolidation",
        [](const std::vector<std::string>& texts, const std::vector<int>& labels,
           int top_k) {
          std::vector<std::vector<Segment>> segments;
          for (const auto& t : texts) segments.push_back(SegmentText(t));
          return ProposeConsolidation(Chi2Scores(segments, labels), top_k);
        },
        py::arg("texts"), py::arg("labels"), py::arg("top_k"));

  // Presets.
  py::class_<Preset>(m, "Preset")
      .def_readonly("name", &Preset::name)
      .def_readonly("description", &Preset::description)
      .def_readonly("policy", &Preset::policy)
      .def_readonly("filter_widths", &Preset::filter_widths)
      .def_readonly("embedding_source", &Preset::embedding_source)
      .def_property_readonly("augmentation", [](const Preset& p) {
        return std::string(AugmentationModeName(p.augmentation));
      })
      .def_property_readonly("provider", [](const Preset& p) {
        return std::string(ProviderKindName(p.provider));
      })
      .def("dump", &DumpPreset);
  m.def("preset_names", &PresetNames);
  m.def("get_preset", [](const std::string& n) { return GetPreset(n); },
        py::arg("name"));

  // Vocabulary.
  py::class_<Vocabulary>(m, "Vocabulary")
      .def_static(
          "build",
          [](const std::vector<std::vector<std::string>>& corpora,
             std::size_t min_freq) { return Vocabulary::Build(corpora, min_freq); },
          py::arg("corpora"), py::arg("min_freq") = 1)
      .def_static("load", &Vocabulary::Load, py::arg("path"))
      .def("save", &Vocabulary::Save, py::arg("path"))
      .def("lookup", &Vocabulary::Lookup, py::arg("token"))
      .def("token", &Vocabulary::Token, py::arg("id"))
      .def("__contains__", &Vocabulary::Contains)
      .def("__len__", &Vocabulary::size)
      .def_property_readonly("tokens", &Vocabulary::tokens)
      .def("hash", &Vocabulary::Hash);
  m.def("encode", [](const std::vector<std::string>& tokens,
                     const Vocabulary& vocab) { return Encode(tokens, vocab); },
        py::arg("tokens"), py::arg("vocab"));
  m.def("decode", [](const std::vector<TokenId>& ids, const Vocabulary& vocab) {
    return Decode(ids, vocab);
  }, py::arg("ids"), py::arg("vocab"));

  // Embedding files.
  m.def("load_embedding_file", [](const std::filesystem::path& p) {
    const EmbeddingTable t = LoadEmbeddingFile(p);
    py::dict d;
    d["dim"] = t.dim;
    d["tokens"] = t.tokens;
    py::dict vectors;
    for (const auto& [tok, v] : t.vectors) vectors[py::str(tok)] = v;
    d["vectors"] = vectors;
    return d;
  }, py::arg("path"));
  m.def("write_embedding_file",
        [](const std::vector<std::string>& tokens,
           const std::vector<std::vector<double>>& vectors,
           const std::filesystem::path& p) {
          if (tokens.size() != vectors.size() || tokens.empty()) {
            throw ArgumentError("tokens and vectors must be non-empty and aligned");
          }
          EmbeddingTable t;
          t.dim = vectors.front().size();
          t.tokens = tokens;
          for (std::size_t i = 0; i < tokens.size(); ++i) {
            if (vectors[i].size() != t.dim) {
              throw ArgumentError("vector " + std::to_string(i) +
                                  " has the wrong dimension");
            }
            t.vectors[tokens[i]] = vectors[i];
          }
          WriteEmbeddingFile(t, p);
        },
        py::arg("tokens"), py::arg("vectors"), py::arg("path"));

  // Model pieces.
  m.def("sigmoid", &Sigmoid, py::arg("x"));
  m.def("classify", &Classify, py::arg("prob"));
  m.def("bce_loss", [](const std::vector<double>& probs,
                       const std::vector<int>& labels) {
    const BceResult r = BceLoss(probs, labels);
    return py::make_tuple(r.loss, r.grads);
  }, py::arg("probs"), py::arg("labels"));

  // Metrics.
  m.def("average_precision", [](std::vector<int> rel, std::size_t r) {
    return AveragePrecision(MakeJudged(std::move(rel), r));
  }, py::arg("relevance"), py::arg("pool_relevant"));
  m.def("precision_at_k", [](std::vector<int> rel, std::size_t r, std::size_t k) {
    return PrecisionAtK(MakeJudged(std::move(rel), r), k);
  }, py::arg("relevance"), py::arg("pool_relevant"), py::arg("k"));
  m.def("r_precision", [](std::vector<int> rel, std::size_t r) {
    return RPrecision(MakeJudged(std::move(rel), r));
  }, py::arg("relevance"), py::arg("pool_relevant"));
  m.def("mean_average_precision",
        [](const std::vector<std::pair<std::vector<int>, std::size_t>>& runs) {
          std::vector<Judged> judged;
          for (const auto& [rel, r] : runs) judged.push_back(MakeJudged(rel, r));
          return MeanAveragePrecision(judged);
        },
        py::arg("runs"));

  // Whole runs, configured with the same keys as the command line.
  m.def("train", [](const std::map<std::string, std::string>& settings) {
    const TrainOutputs out = RunTrain(SpecFromDict(settings));
    py::dict d;
    d["checkpoint"] = out.checkpoint;
    d["best_checkpoint"] = out.best_checkpoint;
    d["vocab"] = out.vocab;
    d["history"] = out.history;
    d["best_epoch"] = out.result.best_epoch;
    return d;
  }, py::arg("settings"));
  m.def("predict",
        [](const std::map<std::string, std::string>& settings,
           const std::filesystem::path& checkpoint,
           const std::filesystem::path& input) {
          return RunPredict(SpecFromDict(settings), checkpoint, input);
        },
        py::arg("settings"), py::arg("checkpoint"), py::arg("input"));
  m.def("evaluate", [](const std::filesystem::path& gold,
                       const std::filesystem::path& run) {
    return MetricsDict(RunEvaluate(gold, run));
  }, py::arg("gold"), py::arg("run"));
}
