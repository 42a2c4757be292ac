#include "lwp/oplab.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <string>

namespace lwp {

DyadicGrid::DyadicGrid(int cells) : n(cells) {
  if (n < 2 || (n & (n - 1)) != 0) {
    throw BadArguments("grid size must be a power of two >= 2, got " +
                       std::to_string(cells));
  }
}

OperatorMatrix::OperatorMatrix(DyadicGrid grid, std::vector<double> entries)
    : grid_(grid), a_(std::move(entries)) {
  if (a_.size() != static_cast<std::size_t>(grid_.n) * grid_.n) {
    throw BadArguments("entry count does not match grid dimension");
  }
  for (double v : a_) {
    if (!std::isfinite(v)) throw BadArguments("non-finite operator entry");
  }
}

OperatorMatrix OperatorMatrix::identity(DyadicGrid grid) {
  std::vector<double> e(static_cast<std::size_t>(grid.n) * grid.n, 0.0);
  for (int i = 0; i < grid.n; ++i) e[i * grid.n + i] = 1.0;
  return OperatorMatrix(grid, std::move(e));
}

OperatorMatrix OperatorMatrix::zero(DyadicGrid grid) {
  return OperatorMatrix(
      grid, std::vector<double>(static_cast<std::size_t>(grid.n) * grid.n));
}

std::vector<double> OperatorMatrix::column(int j) const {
  std::vector<double> col(grid_.n);
  for (int i = 0; i < grid_.n; ++i) col[i] = a_[i * grid_.n + j];
  return col;
}

std::vector<double> OperatorMatrix::apply(std::span<const double> x) const {
  if (x.size() != static_cast<std::size_t>(grid_.n)) {
    throw BadArguments("vector length does not match grid");
  }
  std::vector<double> y(grid_.n, 0.0);
  for (int i = 0; i < grid_.n; ++i) {
    double s = 0.0;
    for (int j = 0; j < grid_.n; ++j) s += a_[i * grid_.n + j] * x[j];
    y[i] = s;
  }
  return y;
}

OperatorMatrix OperatorMatrix::compose(const OperatorMatrix& rhs) const {
  const int n = grid_.n;
  std::vector<double> out(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      const double aik = a_[i * n + k];
      if (aik == 0.0) continue;
      for (int j = 0; j < n; ++j) out[i * n + j] += aik * rhs.a_[k * n + j];
    }
  }
  return OperatorMatrix(grid_, std::move(out));
}

OperatorMatrix OperatorMatrix::subtract_from_identity() const {
  const int n = grid_.n;
  std::vector<double> out(a_.size());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      out[i * n + j] = (i == j ? 1.0 : 0.0) - a_[i * n + j];
    }
  }
  return OperatorMatrix(grid_, std::move(out));
}

OperatorMatrix rank_one_A(DyadicGrid grid) {
  const double inv = 1.0 / grid.n;
  return OperatorMatrix(
      grid,
      std::vector<double>(static_cast<std::size_t>(grid.n) * grid.n, inv));
}

double grid_norm(const LorentzSpace& space, const DyadicGrid& grid,
                 std::span<const double> values) {
  if (values.size() != static_cast<std::size_t>(grid.n)) {
    throw BadArguments("vector length does not match grid");
  }
  std::vector<double> mags(values.begin(), values.end());
  for (double& v : mags) v = std::abs(v);
  std::sort(mags.begin(), mags.end(), std::greater<double>());
  const double h = grid.cell_measure();
  double sum = 0.0;
  for (int i = 0; i < grid.n; ++i) {
    sum += std::pow(mags[i], space.p()) *
           space.weight().mass(i * h, (i + 1) * h);
  }
  return std::pow(sum, 1.0 / space.p());
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Norm of a cell vector given pre-computed per-slot weight masses.
double fast_norm(std::span<const double> values,
                 const std::vector<double>& block_mass, double p,
                 std::vector<double>& scratch) {
  scratch.assign(values.begin(), values.end());
  for (double& v : scratch) v = std::abs(v);
  std::sort(scratch.begin(), scratch.end(), std::greater<double>());
  double sum = 0.0;
  for (std::size_t i = 0; i < scratch.size(); ++i) {
    sum += std::pow(scratch[i], p) * block_mass[i];
  }
  return std::pow(sum, 1.0 / p);
}

class RatioAscent {
 public:
  RatioAscent(const LorentzSpace& space, const OperatorMatrix& T, double tol)
      : T_(T), p_(space.p()), tol_(tol), n_(T.grid().n) {
    const double h = T.grid().cell_measure();
    block_mass_.resize(n_);
    for (int i = 0; i < n_; ++i) {
      block_mass_[i] = space.weight().mass(i * h, (i + 1) * h);
    }
    columns_.reserve(n_);
    for (int j = 0; j < n_; ++j) columns_.push_back(T.column(j));
  }

  double ratio(std::span<const double> x) const {
    const double nx = fast_norm(x, block_mass_, p_, scratch_);
    if (nx == 0.0) return 0.0;
    const std::vector<double> y = T_.apply(x);
    return fast_norm(y, block_mass_, p_, scratch_) / nx;
  }

  // Coordinate ascent from `x`; returns the exact ratio at the final
  // witness, which is left in `x`.
  double ascend(std::vector<double>& x, int max_sweeps = 60) const {
    double best = ratio(x);
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
      // The ratio is scale invariant; renormalizing stops the search
      // window from drifting and keeps the objective well conditioned.
      double scale = 0.0;
      for (double v : x) scale = std::max(scale, std::abs(v));
      if (scale > 0.0) {
        for (double& v : x) v /= scale;
      }
      // Recompute T x exactly each sweep: the incremental column updates
      // below accumulate cancellation error.
      std::vector<double> y = T_.apply(x);
      const double before = best;
      for (int i = 0; i < n_; ++i) {
        const double lo = x[i] - 4.0;
        const double hi = x[i] + 4.0;
        const auto eval = [&](double t) {
          return ratio_with_coordinate(x, y, i, t);
        };
        double t = golden_max(eval, lo, hi);
        // The flat direction t -> 0 is worth probing separately.
        if (eval(0.0) > eval(t)) t = 0.0;
        const double cand = eval(t);
        if (cand > best) {
          const double d = t - x[i];
          for (int r = 0; r < n_; ++r) y[r] += d * columns_[i][r];
          x[i] = t;
          best = cand;
        }
      }
      if (best - before <= tol_ * std::max(1.0, before)) break;
    }
    // Certify: the reported estimate is the ratio recomputed from scratch
    // at the witness, never a cached intermediate.
    return ratio(x);
  }

 private:
  double ratio_of(std::span<const double> x, std::span<const double> y) const {
    const double nx = fast_norm(x, block_mass_, p_, scratch_);
    if (nx == 0.0) return 0.0;
    return fast_norm(y, block_mass_, p_, scratch_) / nx;
  }

  double ratio_with_coordinate(const std::vector<double>& x,
                               const std::vector<double>& y, int i,
                               double t) const {
    const double d = t - x[i];
    xbuf_ = x;
    xbuf_[i] = t;
    ybuf_ = y;
    for (int r = 0; r < n_; ++r) ybuf_[r] += d * columns_[i][r];
    return ratio_of(xbuf_, ybuf_);
  }

  template <class F>
  static double golden_max(const F& f, double lo, double hi) {
    constexpr double inv_phi = 0.6180339887498949;
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    for (int it = 0; it < 48; ++it) {
      if (fc > fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - inv_phi * (b - a);
        fc = f(c);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + inv_phi * (b - a);
        fd = f(d);
      }
    }
    return fc > fd ? c : d;
  }

  const OperatorMatrix& T_;
  double p_;
  double tol_;
  int n_;
  std::vector<double> block_mass_;
  std::vector<std::vector<double>> columns_;
  mutable std::vector<double> scratch_, xbuf_, ybuf_;
};

}  // namespace

OpNormResult op_norm_estimate(const LorentzSpace& space,
                              const OperatorMatrix& T, int restarts,
                              double tol, std::uint64_t seed) {
  if (restarts < 1) throw BadArguments("restarts must be >= 1");
  const int n = T.grid().n;
  RatioAscent ascent(space, T, tol);

  OpNormResult result;
  auto consider = [&](std::vector<double> x) {
    const double r = ascent.ascend(x);
    if (r > result.estimate) {
      result.estimate = r;
      result.witness = std::move(x);
    }
  };

  // Basis indicators: cheap certified starts, and exact maximizers for
  // vertex-attained norms.
  for (int i = 0; i < n; ++i) {
    std::vector<double> e(n, 0.0);
    e[i] = 1.0;
    const double r = ascent.ratio(e);
    if (r > result.estimate) {
      result.estimate = r;
      result.witness = e;
    }
  }
  {
    std::vector<double> e(n, 0.0);
    e[0] = 1.0;
    consider(std::move(e));
  }

  for (int r = 0; r < restarts; ++r) {
    std::mt19937_64 rng(splitmix64(seed ^ splitmix64(r)));
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> x(n);
    for (double& v : x) v = gauss(rng);
    consider(std::move(x));
  }
  if (result.witness.empty()) result.witness.assign(n, 0.0);
  return result;
}

IMinusAReport i_minus_a_report(const LorentzSpace& space, int n, int restarts,
                               std::uint64_t seed) {
  const DyadicGrid grid(n);
  const OperatorMatrix ia = rank_one_A(grid).subtract_from_identity();
  const OpNormResult r = op_norm_estimate(space, ia, restarts, 1e-8, seed);
  return IMinusAReport{r.estimate, r.estimate - 1.0, r.witness};
}

}  // namespace lwp
