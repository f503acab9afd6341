#ifndef CHECKWORTHY_TESTS_SUPPORT_ORACLES_HPP_
#define CHECKWORTHY_TESTS_SUPPORT_ORACLES_HPP_

// Independent reference computations used only by tests. Nothing here calls
// into the code under test except where a function is explicitly the thing
// being differentiated.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <set>
#include <vector>

namespace checkworthy::oracle {

// Ranks (1-based) of relevant items.
inline std::set<std::size_t> RelevantRanks(const std::vector<int>& rel) {
  std::set<std::size_t> ranks;
  for (std::size_t i = 0; i < rel.size(); ++i) {
    if (rel[i] == 1) ranks.insert(i + 1);
  }
  return ranks;
}

// |{relevant ranks <= k}| counted by enumeration of the prefix set.
inline std::size_t RelevantInTop(const std::vector<int>& rel, std::size_t k) {
  const auto ranks = RelevantRanks(rel);
  return static_cast<std::size_t>(std::count_if(
      ranks.begin(), ranks.end(), [&](std::size_t r) { return r <= k; }));
}

inline double PrecisionAt(const std::vector<int>& rel, std::size_t k) {
  return double(RelevantInTop(rel, k)) / double(k);
}

inline double AveragePrecision(const std::vector<int>& rel, std::size_t R) {
  double total = 0.0;
  for (std::size_t r : RelevantRanks(rel)) total += PrecisionAt(rel, r);
  return total / double(R);
}

inline double RPrecision(const std::vector<int>& rel, std::size_t R) {
  return PrecisionAt(rel, R);
}

// Central difference of f at x[i].
inline double CentralDifference(const std::function<double()>& f, double& x,
                                double h) {
  const double saved = x;
  x = saved + h;
  const double up = f();
  x = saved - h;
  const double down = f();
  x = saved;
  return (up - down) / (2.0 * h);
}

inline double RelativeError(double a, double b) {
  const double scale = std::max({std::abs(a), std::abs(b), 1e-8});
  return std::abs(a - b) / scale;
}

}  // namespace checkworthy::oracle

#endif  // CHECKWORTHY_TESTS_SUPPORT_ORACLES_HPP_
