#ifndef CHECKWORTHY_METRICS_HPP_
#define CHECKWORTHY_METRICS_HPP_

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "checkworthy/dataset_io.hpp"

namespace checkworthy {

// Binary relevance of a ranked list, best first. `pool_relevant` is R, the
// number of relevant items in the whole judged pool (which may exceed the
// number of 1s when the run misses some).
struct Judged {
  std::vector<int> relevance;
  std::size_t pool_relevant = 0;
};

// Mean over relevant items of precision at their rank, divided by R; relevant
// items missing from the run contribute 0.
double AveragePrecision(const Judged& judged);

double MeanAveragePrecision(std::span<const Judged> runs);

// Relevant in the first min(k, n) entries, divided by k.
double PrecisionAtK(const Judged& judged, std::size_t k);

double RPrecision(const Judged& judged);

// Aligns a ranked run with gold labels. Tweets absent from `gold` count as
// non-relevant; R is the number of positives in `gold`.
Judged Judge(const RankedRun& run, const std::map<std::string, int>& gold);

// Row of the standard report: MAP, R-precision and P@{1,3,5,10,20,50},
// each averaged over topics.
struct MetricsRow {
  double map = 0.0;
  double r_precision = 0.0;
  std::vector<std::pair<std::size_t, double>> precision_at;
  std::size_t topics = 0;
};

inline constexpr std::size_t kReportedCutoffs[] = {1, 3, 5, 10, 20, 50};

// gold: topic -> (tweet_id -> label). Topics of the run without any
// positive gold label raise UndefinedMetricError.
MetricsRow Evaluate(
    std::span<const RankedRun> runs,
    const std::map<std::string, std::map<std::string, int>>& gold);

std::map<std::string, std::map<std::string, int>> GoldByTopic(
    std::span<const LabeledTweet> tweets);

std::string MetricsHeader();
std::string FormatMetricsRow(const std::string& run_id, const MetricsRow& row);

}  // namespace checkworthy

#endif  // CHECKWORTHY_METRICS_HPP_
