#ifndef LWP_STEPFN_HPP
#define LWP_STEPFN_HPP

#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "lwp/errors.hpp"

namespace lwp {

/// One cell of a labeled partition: an opaque label and a strictly
/// positive Lebesgue measure.
struct Cell {
  std::string label;
  double measure = 0.0;
};

/// A finite measurable partition of a sub-interval of [0,1], represented
/// as an ordered measure-multiset.  Only (label, measure) data is kept;
/// the geometric placement of cells is irrelevant for every
/// rearrangement-invariant quantity computed downstream.
class LabeledPartition {
 public:
  explicit LabeledPartition(std::vector<Cell> cells);

  const std::vector<Cell>& cells() const { return cells_; }
  std::size_t size() const { return cells_.size(); }
  double support_measure() const { return support_; }

  /// Structural identity: same labels and measures in the same order.
  bool operator==(const LabeledPartition& other) const;

 private:
  std::vector<Cell> cells_;
  double support_ = 0.0;
};

/// A simple function sum a_k * chi_{A_k} over a labeled partition.
/// Immutable after construction; zero off the partition's support.
class SimpleFunction {
 public:
  SimpleFunction(LabeledPartition partition, std::vector<double> values);

  /// Build from (label, measure, value) triples.
  static SimpleFunction build(
      const std::vector<std::tuple<std::string, double, double>>& cells);

  const LabeledPartition& partition() const { return partition_; }
  const std::vector<double>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }

  /// A copy with the same partition and different values.
  SimpleFunction with_values(std::vector<double> values) const;

 private:
  LabeledPartition partition_;
  std::vector<double> values_;
};

struct RearrangementBlock {
  double magnitude = 0.0;
  double measure = 0.0;
};

/// The decreasing rearrangement of a simple function as a block list:
/// magnitudes non-increasing, equal magnitudes merged, total measure
/// equal to the source support measure.
struct RearrangementProfile {
  std::vector<RearrangementBlock> blocks;
  double support_measure = 0.0;

  /// Value of the rearranged step function at t in [0, support);
  /// 0 for t >= support.
  double at(double t) const;
};

/// Cellwise alpha*f + beta*g.  Partitions must be structurally identical.
SimpleFunction combine(double alpha, const SimpleFunction& f, double beta,
                       const SimpleFunction& g);

/// Decreasing rearrangement.  Stable sort by modulus (descending) with
/// exact-equal magnitudes merged into one block.
RearrangementProfile rearrange(const SimpleFunction& f);

/// Lebesgue integral sum a_k * mu(A_k).
double integral(const SimpleFunction& f);

/// Split cells into sub-cells with given (sub-label, fraction) lists.
/// Fractions per cell must be positive and sum to 1 within 1e-12.
/// Cells without an entry in `splits` are kept as-is.
SimpleFunction refine(
    const SimpleFunction& f,
    const std::map<std::string, std::vector<std::pair<std::string, double>>>&
        splits);

}  // namespace lwp

#endif  // LWP_STEPFN_HPP
