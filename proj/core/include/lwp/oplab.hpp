#ifndef LWP_OPLAB_HPP
#define LWP_OPLAB_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "lwp/errors.hpp"
#include "lwp/lorentz.hpp"

namespace lwp {

/// Equal-measure discretization of [0,1] into n cells, n a power of two.
struct DyadicGrid {
  int n = 0;
  explicit DyadicGrid(int cells);
  double cell_measure() const { return 1.0 / n; }
};

/// A linear operator on cell-value vectors, dense row-major n x n.
class OperatorMatrix {
 public:
  OperatorMatrix(DyadicGrid grid, std::vector<double> entries);

  static OperatorMatrix identity(DyadicGrid grid);
  static OperatorMatrix zero(DyadicGrid grid);

  const DyadicGrid& grid() const { return grid_; }
  double entry(int i, int j) const { return a_[i * grid_.n + j]; }
  /// Column j as a contiguous copy.
  std::vector<double> column(int j) const;
  std::vector<double> apply(std::span<const double> x) const;
  OperatorMatrix compose(const OperatorMatrix& rhs) const;
  OperatorMatrix subtract_from_identity() const;  // I - this

 private:
  DyadicGrid grid_;
  std::vector<double> a_;
};

/// The rank-one averaging projection: (Ax)_i = (1/n) sum_j x_j.
OperatorMatrix rank_one_A(DyadicGrid grid);

/// Lorentz norm of a cell-value vector on the grid (cells of measure 1/n).
double grid_norm(const LorentzSpace& space, const DyadicGrid& grid,
                 std::span<const double> values);

struct OpNormResult {
  double estimate = 0.0;  // certified lower bound: the ratio at `witness`
  std::vector<double> witness;
};

/// Randomized coordinate-ascent maximization of ||Tx|| / ||x||.  Runs
/// `restarts` Gaussian starts plus every basis indicator, golden-section
/// line search per coordinate, stopping when the relative gain drops
/// below `tol`.  The returned estimate is always a lower bound on the
/// true operator norm.
OpNormResult op_norm_estimate(const LorentzSpace& space,
                              const OperatorMatrix& T, int restarts,
                              double tol, std::uint64_t seed);

struct IMinusAReport {
  double estimate = 0.0;
  double margin_over_one = 0.0;
  std::vector<double> witness;
};

/// Norm estimate for I - A on the n-cell grid.
IMinusAReport i_minus_a_report(const LorentzSpace& space, int n, int restarts,
                               std::uint64_t seed);

}  // namespace lwp

#endif  // LWP_OPLAB_HPP
