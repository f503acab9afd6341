#include "checkworthy/metrics.hpp"

#include <cstdio>

#include "checkworthy/errors.hpp"

namespace checkworthy {

double AveragePrecision(const Judged& judged) {
  if (judged.pool_relevant == 0) {
    throw UndefinedMetricError("average precision undefined for R = 0");
  }
  double sum = 0.0;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < judged.relevance.size(); ++i) {
    if (judged.relevance[i] == 0) continue;
    ++hits;
    sum += double(hits) / double(i + 1);
  }
  return sum / double(judged.pool_relevant);
}

double MeanAveragePrecision(std::span<const Judged> runs) {
  if (runs.empty()) throw UndefinedMetricError("MAP of an empty run list");
  double sum = 0.0;
  for (const Judged& j : runs) sum += AveragePrecision(j);
  return sum / double(runs.size());
}

double PrecisionAtK(const Judged& judged, std::size_t k) {
  if (k == 0) throw ArgumentError("precision@k requires k >= 1");
  std::size_t hits = 0;
  const std::size_t n = std::min(k, judged.relevance.size());
  for (std::size_t i = 0; i < n; ++i) hits += judged.relevance[i] != 0;
  return double(hits) / double(k);
}

double RPrecision(const Judged& judged) {
  if (judged.pool_relevant == 0) {
    throw UndefinedMetricError("R-precision undefined for R = 0");
  }
  return PrecisionAtK(judged, judged.pool_relevant);
}

Judged Judge(const RankedRun& run, const std::map<std::string, int>& gold) {
  Judged judged;
  for (const auto& [id, label] : gold) judged.pool_relevant += label == 1;
  judged.relevance.reserve(run.entries.size());
  for (const RunEntry& e : run.entries) {
    const auto it = gold.find(e.tweet_id);
    judged.relevance.push_back(it != gold.end() && it->second == 1 ? 1 : 0);
  }
  return judged;
}

MetricsRow Evaluate(
    std::span<const RankedRun> runs,
    const std::map<std::string, std::map<std::string, int>>& gold) {
  if (runs.empty()) throw UndefinedMetricError("no topics to evaluate");
  MetricsRow row;
  for (std::size_t k : kReportedCutoffs) row.precision_at.emplace_back(k, 0.0);
  std::vector<Judged> judged;
  for (const RankedRun& run : runs) {
    const auto it = gold.find(run.topic_id);
    if (it == gold.end()) {
      throw UndefinedMetricError("no gold labels for topic '" + run.topic_id +
                                 "'");
    }
    judged.push_back(Judge(run, it->second));
    if (judged.back().pool_relevant == 0) {
      throw UndefinedMetricError("topic '" + run.topic_id +
                                 "' has no relevant tweets");
    }
  }
  row.topics = judged.size();
  row.map = MeanAveragePrecision(judged);
  for (const Judged& j : judged) {
    row.r_precision += RPrecision(j);
    for (auto& [k, value] : row.precision_at) value += PrecisionAtK(j, k);
  }
  row.r_precision /= double(row.topics);
  for (auto& [k, value] : row.precision_at) value /= double(row.topics);
  return row;
}

std::map<std::string, std::map<std::string, int>> GoldByTopic(
    std::span<const LabeledTweet> tweets) {
  std::map<std::string, std::map<std::string, int>> gold;
  for (const LabeledTweet& t : tweets) gold[t.topic_id][t.tweet_id] = t.label;
  return gold;
}

std::string MetricsHeader() {
  std::string header = "run_id\tAP\tR-precision";
  for (std::size_t k : kReportedCutoffs) header += "\tP@" + std::to_string(k);
  return header;
}

std::string FormatMetricsRow(const std::string& run_id, const MetricsRow& row) {
  char buf[32];
  std::string line = run_id;
  auto append = [&](double v) {
    std::snprintf(buf, sizeof(buf), "\t%.4f", v);
    line += buf;
  };
  append(row.map);
  append(row.r_precision);
  for (const auto& [k, value] : row.precision_at) append(value);
  return line;
}

}  // namespace checkworthy
