#include <chrono>
#include <random>

#include "doctest.h"
#include "checkworthy/errors.hpp"
#include "checkworthy/metrics.hpp"
#include "support/oracles.hpp"

using namespace checkworthy;

TEST_CASE("average precision: definitional examples") {
  CHECK(AveragePrecision({{1, 1, 0, 0}, 2}) == doctest::Approx(1.0));
  CHECK(AveragePrecision({{1, 0, 1}, 2}) == doctest::Approx(0.8333333333));
  CHECK(AveragePrecision({{0, 1}, 1}) == doctest::Approx(0.5));
  // Relevant item missing from the run contributes nothing.
  CHECK(AveragePrecision({{1, 0}, 2}) == doctest::Approx(0.5));
  CHECK_THROWS_AS(AveragePrecision({{0, 0}, 0}), UndefinedMetricError);
}

TEST_CASE("MAP averages topics") {
  const Judged a{{1, 0}, 1};        // AP 1.0
  const Judged b{{0, 1, 0, 0}, 1};  // AP 0.5
  const std::vector<Judged> one = {a};
  CHECK(MeanAveragePrecision(one) == doctest::Approx(AveragePrecision(a)));
  const std::vector<Judged> two = {a, b};
  CHECK(MeanAveragePrecision(two) == doctest::Approx(0.75));
  const Judged c{{0, 1, 0, 0, 1}, 2};  // (1/2 + 2/5)/2 = 0.45
  const Judged d{{1, 0, 0, 1}, 2};     // (1 + 2/4)/2 = 0.75
  const std::vector<Judged> cd = {c, d};
  CHECK(MeanAveragePrecision(cd) == doctest::Approx(0.6));
  CHECK_THROWS_AS(MeanAveragePrecision(std::vector<Judged>{}),
                  UndefinedMetricError);
}

TEST_CASE("precision at k and R-precision") {
  CHECK(PrecisionAtK({{1}, 1}, 1) == 1.0);
  CHECK(PrecisionAtK({{1, 0, 1}, 2}, 3) == doctest::Approx(2.0 / 3.0));
  CHECK(PrecisionAtK({{1}, 1}, 5) == doctest::Approx(0.2));
  CHECK_THROWS_AS(PrecisionAtK({{1}, 1}, 0), ArgumentError);
  CHECK(RPrecision({{1, 1, 0, 0}, 2}) == 1.0);
  CHECK(RPrecision({{1, 0, 1, 0}, 2}) == 0.5);
  CHECK(RPrecision({{1, 0, 1}, 3}) == doctest::Approx(2.0 / 3.0));
  CHECK_THROWS_AS(RPrecision({{0}, 0}), UndefinedMetricError);
}

TEST_CASE("metrics match enumeration oracle on random rankings") {
  std::mt19937 gen(12345);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 1 + gen() % 12;
    Judged j;
    for (std::size_t i = 0; i < n; ++i) j.relevance.push_back(gen() % 2);
    const std::size_t ones =
        std::count(j.relevance.begin(), j.relevance.end(), 1);
    j.pool_relevant = ones + gen() % 3;  // some relevant items may be missing
    if (j.pool_relevant == 0) j.pool_relevant = 1;
    const double ap = AveragePrecision(j);
    CHECK(std::abs(ap - oracle::AveragePrecision(j.relevance, j.pool_relevant)) <
          1e-12);
    CHECK(ap >= 0.0);
    CHECK(ap <= 1.0);
    for (std::size_t k : kReportedCutoffs) {
      CHECK(std::abs(PrecisionAtK(j, k) - oracle::PrecisionAt(j.relevance, k)) <
            1e-12);
    }
    CHECK(std::abs(RPrecision(j) -
                   oracle::RPrecision(j.relevance, j.pool_relevant)) < 1e-12);
  }
}

TEST_CASE("AP is 1 exactly when positives precede negatives") {
  CHECK(AveragePrecision({{1, 1, 1, 0, 0}, 3}) == 1.0);
  CHECK(AveragePrecision({{1, 1, 0, 1, 0}, 3}) < 1.0);
}

TEST_CASE("Evaluate joins runs with gold labels") {
  const RankedRun run =
      MakeRankedRun("covid", "m2", {{"a", 0.9}, {"b", 0.8}, {"c", 0.1}});
  std::map<std::string, std::map<std::string, int>> gold;
  gold["covid"] = {{"a", 1}, {"b", 0}, {"c", 1}};
  const MetricsRow row = Evaluate(std::vector<RankedRun>{run}, gold);
  CHECK(row.map == doctest::Approx((1.0 + 2.0 / 3.0) / 2.0));
  CHECK(row.r_precision == doctest::Approx(0.5));
  CHECK(row.precision_at.front().second == 1.0);
  CHECK(FormatMetricsRow("m2", row).rfind("m2\t0.8333\t0.5000\t1.0000", 0) == 0);

  gold["covid"] = {{"a", 0}, {"b", 0}, {"c", 0}};
  CHECK_THROWS_AS(Evaluate(std::vector<RankedRun>{run}, gold),
                  UndefinedMetricError);
}
