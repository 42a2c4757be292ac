#include "lwp/stepfn.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

namespace lwp {

namespace {
constexpr double kMeasureTol = 1e-12;
}

LabeledPartition::LabeledPartition(std::vector<Cell> cells)
    : cells_(std::move(cells)) {
  std::unordered_set<std::string> seen;
  double total = 0.0;
  for (const Cell& c : cells_) {
    if (!(c.measure > 0.0)) {
      throw NonPositiveMeasure("cell '" + c.label + "' has measure " +
                               std::to_string(c.measure));
    }
    if (!seen.insert(c.label).second) {
      throw DuplicateLabel("duplicate cell label '" + c.label + "'");
    }
    total += c.measure;
  }
  if (total > 1.0 + kMeasureTol) {
    throw MeasureOverflow("total measure " + std::to_string(total) +
                          " exceeds 1");
  }
  support_ = total;
}

bool LabeledPartition::operator==(const LabeledPartition& other) const {
  if (cells_.size() != other.cells_.size()) return false;
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    if (cells_[i].label != other.cells_[i].label ||
        cells_[i].measure != other.cells_[i].measure) {
      return false;
    }
  }
  return true;
}

SimpleFunction::SimpleFunction(LabeledPartition partition,
                               std::vector<double> values)
    : partition_(std::move(partition)), values_(std::move(values)) {
  if (values_.size() != partition_.size()) {
    throw BadArguments("value count does not match partition cell count");
  }
}

SimpleFunction SimpleFunction::build(
    const std::vector<std::tuple<std::string, double, double>>& cells) {
  std::vector<Cell> part;
  std::vector<double> vals;
  part.reserve(cells.size());
  vals.reserve(cells.size());
  for (const auto& [label, measure, value] : cells) {
    part.push_back({label, measure});
    vals.push_back(value);
  }
  return SimpleFunction(LabeledPartition(std::move(part)), std::move(vals));
}

SimpleFunction SimpleFunction::with_values(std::vector<double> values) const {
  return SimpleFunction(partition_, std::move(values));
}

double RearrangementProfile::at(double t) const {
  double cum = 0.0;
  for (const RearrangementBlock& b : blocks) {
    cum += b.measure;
    if (t < cum) return b.magnitude;
  }
  return 0.0;
}

SimpleFunction combine(double alpha, const SimpleFunction& f, double beta,
                       const SimpleFunction& g) {
  if (!(f.partition() == g.partition())) {
    throw PartitionMismatch("combine requires an identical partition");
  }
  std::vector<double> out(f.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = alpha * f.values()[i] + beta * g.values()[i];
  }
  return f.with_values(std::move(out));
}

RearrangementProfile rearrange(const SimpleFunction& f) {
  const auto& cells = f.partition().cells();
  std::vector<std::size_t> order(cells.size());
  std::iota(order.begin(), order.end(), 0);
  // Stable by input cell order among equal magnitudes.
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return std::abs(f.values()[a]) > std::abs(f.values()[b]);
                   });
  RearrangementProfile profile;
  profile.support_measure = f.partition().support_measure();
  for (std::size_t idx : order) {
    const double mag = std::abs(f.values()[idx]);
    if (!profile.blocks.empty() && profile.blocks.back().magnitude == mag) {
      profile.blocks.back().measure += cells[idx].measure;
    } else {
      profile.blocks.push_back({mag, cells[idx].measure});
    }
  }
  return profile;
}

double integral(const SimpleFunction& f) {
  const auto& cells = f.partition().cells();
  double sum = 0.0;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    sum += f.values()[i] * cells[i].measure;
  }
  return sum;
}

SimpleFunction refine(
    const SimpleFunction& f,
    const std::map<std::string, std::vector<std::pair<std::string, double>>>&
        splits) {
  const auto& cells = f.partition().cells();
  for (const auto& [label, parts] : splits) {
    bool found = false;
    for (const Cell& c : cells) found |= (c.label == label);
    if (!found) throw UnknownLabel("no cell labeled '" + label + "'");
    double total = 0.0;
    for (const auto& [sub, frac] : parts) {
      if (!(frac > 0.0)) {
        throw BadFractions("non-positive fraction for sub-cell '" + sub + "'");
      }
      total += frac;
    }
    if (std::abs(total - 1.0) > 1e-12) {
      throw BadFractions("fractions for '" + label + "' sum to " +
                         std::to_string(total));
    }
  }
  std::vector<Cell> out_cells;
  std::vector<double> out_vals;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    auto it = splits.find(cells[i].label);
    if (it == splits.end()) {
      out_cells.push_back(cells[i]);
      out_vals.push_back(f.values()[i]);
      continue;
    }
    for (const auto& [sub, frac] : it->second) {
      out_cells.push_back({sub, frac * cells[i].measure});
      out_vals.push_back(f.values()[i]);
    }
  }
  return SimpleFunction(LabeledPartition(std::move(out_cells)),
                        std::move(out_vals));
}

}  // namespace lwp
