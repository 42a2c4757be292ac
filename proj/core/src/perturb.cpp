#include "lwp/perturb.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace lwp {

namespace {

void require_nonzero(const SimpleFunction& f) {
  for (double v : f.values()) {
    if (v == 0.0) {
      throw ZeroCoefficient("all coefficients must be nonzero");
    }
  }
}

std::vector<std::size_t> modulus_descending_order(
    const std::vector<double>& values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return std::abs(values[a]) > std::abs(values[b]);
                   });
  return order;
}

bool in_open_exclusion(double ratio, double delta) {
  return ratio > 3.0 - delta && ratio < 3.0;
}

// S-set on a coefficient vector already in sorted (or any) order.
std::vector<std::size_t> s_set_of(const std::vector<double>& coeffs,
                                  std::size_t k, double delta) {
  std::vector<std::size_t> out;
  const double base = std::abs(coeffs[k]);
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    if (in_open_exclusion(std::abs(coeffs[j]) / base, delta)) {
      out.push_back(j);
    }
  }
  return out;
}

}  // namespace

SimpleFunction ratio_round(const SimpleFunction& f, double eta) {
  if (!(eta > 0.0)) throw NonPositiveEta("eta must be > 0");
  require_nonzero(f);
  const std::vector<double>& vals = f.values();
  const auto order = modulus_descending_order(vals);

  std::vector<double> out(vals.size());
  std::size_t i = 0;
  while (i < order.size()) {
    const double run_max = std::abs(vals[order[i]]);
    std::size_t j = i;
    while (j < order.size() &&
           run_max / std::abs(vals[order[j]]) < 1.0 + eta) {
      out[order[j]] = std::copysign(run_max, vals[order[j]]);
      ++j;
    }
    i = j;
  }
  return f.with_values(std::move(out));
}

std::vector<std::size_t> s_set(const SimpleFunction& f, std::size_t k,
                               double delta) {
  if (!(delta > 0.0) || !(delta < 3.0)) {
    throw DeltaOutOfRange("s_set needs delta in (0, 3)");
  }
  if (k >= f.size()) {
    throw IndexOutOfRange("s_set index " + std::to_string(k) +
                          " out of range");
  }
  require_nonzero(f);
  return s_set_of(f.values(), k, delta);
}

std::pair<SimpleFunction, PerturbTrace> make_ddot(const SimpleFunction& f,
                                                  double delta) {
  if (!(delta > 0.0) || !(delta < 1.0 / 8.0)) {
    throw DeltaOutOfRange("make_ddot needs delta in (0, 1/8)");
  }
  require_nonzero(f);

  PerturbTrace trace;
  const double factor = 3.0 / (3.0 - delta);
  trace.eta = factor * factor * factor - 1.0;
  trace.order = modulus_descending_order(f.values());

  const SimpleFunction rounded = ratio_round(f, trace.eta);

  // Work on the sorted view so that pivot indices follow the
  // non-increasing coefficient ordering.
  const std::size_t m = f.size();
  std::vector<double> cur(m);
  for (std::size_t i = 0; i < m; ++i) {
    cur[i] = rounded.values()[trace.order[i]];
  }
  trace.rounded = cur;

  while (true) {
    // Pivot: the largest index whose S-set is nonempty.
    std::size_t k = m;  // sentinel: none
    std::vector<std::size_t> s;
    for (std::size_t cand = m; cand-- > 0;) {
      s = s_set_of(cur, cand, delta);
      if (!s.empty()) {
        k = cand;
        break;
      }
    }
    if (k == m) break;
    if (trace.rounds.size() > m) {
      // The induction terminates in at most m+1 rounds.
      throw Error("bump induction failed to terminate");
    }
    // The quotient target/|cur[k]| must not round below 3, or the pivot
    // would see the bumped value inside the open window again.
    const double base = std::abs(cur[k]);
    double target = 3.0 * base;
    while (target / base < 3.0) {
      target = std::nextafter(target, std::numeric_limits<double>::infinity());
    }
    for (std::size_t j : s) {
      cur[j] = std::copysign(target, cur[j]);
    }
    trace.rounds.push_back({k, s, cur});
  }

  // Flag ratios numerically close to the open-interval endpoints.
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (i == j) continue;
      const double r = std::abs(cur[i]) / std::abs(cur[j]);
      if (std::abs(r - 3.0) < 1e-13 || std::abs(r - (3.0 - delta)) < 1e-13) {
        if (trace.fragile.empty() || trace.fragile.back() != i) {
          trace.fragile.push_back(i);
        }
        break;
      }
    }
  }

  std::vector<double> out(m);
  for (std::size_t i = 0; i < m; ++i) {
    out[trace.order[i]] = cur[i];
  }
  return {f.with_values(std::move(out)), std::move(trace)};
}

bool close_check(double delta, CloseCase c, std::span<const double> t,
                 std::span<const double> t_tilde) {
  if (!(delta > 0.0) || !(delta < 3.0)) {
    throw DeltaOutOfRange("close_check needs delta in (0, 3)");
  }
  if (t.size() != 4 || t_tilde.size() != 4) {
    throw BadArguments("close_check needs four t and four t-tilde values");
  }
  const double hi = 3.0 / (3.0 - delta);
  for (std::size_t i = 0; i < 4; ++i) {
    if (!(t[i] > 0.0) || !(t_tilde[i] > 0.0)) {
      throw RatioOutOfRange("witness values must be positive");
    }
    const double r = t_tilde[i] / t[i];
    if (!(r >= 1.0) || !(r < hi)) {
      throw RatioOutOfRange("t_tilde/t must lie in [1, 3/(3-delta))");
    }
  }
  auto in_excl = [&](double r) { return in_open_exclusion(r, delta); };
  switch (c) {
    case CloseCase::i: {
      const bool hyp = t[0] == t[1] && in_excl(t_tilde[0] / t_tilde[2]) &&
                       in_excl(t_tilde[1] / t_tilde[3]);
      if (!hyp) return true;
      const double r = t[2] / t[3];
      const double cube = hi * hi * hi;
      return r > 1.0 / cube && r < cube;
    }
    case CloseCase::ii: {
      const bool hyp = in_excl(t[0] / t[1]) && t[2] / t[1] == 3.0;
      if (!hyp) return true;
      const double r = t[2] / t[0];
      return r > 1.0 && r < hi;
    }
    case CloseCase::iii: {
      if (!(t[0] < t[1])) return true;
      return t_tilde[0] / t_tilde[1] < hi * hi;
    }
    case CloseCase::iv: {
      const bool hyp = t[0] / t_tilde[1] == 3.0 && in_excl(t[0] / t_tilde[2]);
      if (!hyp) return true;
      const double r = t[1] / t[2];
      return r > 1.0 / (hi * hi) && r < hi;
    }
  }
  throw BadArguments("unknown close_check case");
}

}  // namespace lwp
