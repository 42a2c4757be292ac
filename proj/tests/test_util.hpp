#ifndef LWP_TESTS_TEST_UTIL_HPP
#define LWP_TESTS_TEST_UTIL_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "lwp/stepfn.hpp"

namespace lwp::testutil {

/// Independent oracle for the decreasing rearrangement:
/// f*(t) = inf{ s : mu(|f| > s) <= t }, with the distribution function
/// computed by direct summation over cells.  The infimum over real s is
/// attained at 0 or at one of the cell magnitudes.
inline double rearrangement_oracle(const SimpleFunction& f, double t) {
  std::vector<double> mags;
  for (double v : f.values()) mags.push_back(std::abs(v));
  auto dist = [&](double s) {
    double mu = 0.0;
    const auto& cells = f.partition().cells();
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (std::abs(f.values()[i]) > s) mu += cells[i].measure;
    }
    return mu;
  };
  double best = std::numeric_limits<double>::infinity();
  if (dist(0.0) <= t) best = 0.0;
  for (double s : mags) {
    if (dist(s) <= t && s < best) best = s;
  }
  return best;
}

/// Random simple function with m cells, measures summing to `support`,
/// values in [-scale, scale] (nonzero unless allow_zero).
inline SimpleFunction random_function(std::mt19937_64& rng, int m,
                                      double support = 1.0,
                                      double scale = 4.0,
                                      bool allow_zero = false) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> measures(m);
  double total = 0.0;
  for (double& mu : measures) {
    mu = 0.05 + unit(rng);
    total += mu;
  }
  std::vector<std::tuple<std::string, double, double>> cells;
  for (int k = 0; k < m; ++k) {
    double v = scale * (2.0 * unit(rng) - 1.0);
    if (!allow_zero && std::abs(v) < 1e-3) v = 1e-3;
    cells.emplace_back("t" + std::to_string(k), measures[k] / total * support,
                       v);
  }
  return SimpleFunction::build(cells);
}

}  // namespace lwp::testutil

#endif  // LWP_TESTS_TEST_UTIL_HPP
