#include "lwp/lorentz.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>

namespace lwp {

namespace {
constexpr double kNormTol = 1e-12;
}

Weight Weight::lebesgue() { return piecewise({1.0}, {1.0}); }

Weight Weight::piecewise(std::vector<double> values,
                         std::vector<double> spans) {
  if (values.empty() || values.size() != spans.size()) {
    throw BadArguments("piecewise weight needs matching values and spans");
  }
  double total = 0.0;
  for (double s : spans) {
    if (!(s > 0.0)) throw BadArguments("piecewise weight span must be > 0");
    total += s;
  }
  if (std::abs(total - 1.0) > kNormTol) {
    throw BadArguments("piecewise weight spans must cover (0,1), got total " +
                       std::to_string(total));
  }
  for (double v : values) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw BadArguments("piecewise weight values must be positive finite");
    }
  }
  return Weight(Piecewise{std::move(values), std::move(spans)});
}

Weight Weight::power(double alpha, double scale) {
  if (!(alpha > -1.0)) {
    throw BadArguments("power weight needs alpha > -1 for finite mass");
  }
  if (!(scale > 0.0)) throw BadArguments("power weight scale must be > 0");
  return Weight(Power{alpha, scale});
}

Weight Weight::power_normalized(double alpha) {
  // W(1) = scale/(alpha+1), so scale = alpha+1 gives W(1) = 1.
  return power(alpha, alpha + 1.0);
}

Weight Weight::lpq(double p, double q) {
  if (!(p > 0.0) || !(q > 0.0)) throw BadArguments("lpq needs p, q > 0");
  return power(p / q - 1.0, q / p);
}

Weight Weight::counterexample(double p) {
  if (!(p >= 1.0)) throw DomainError("counterexample weight needs p >= 1");
  const double denom = std::pow(3.0, p - 1.0) + 1.0;
  const double v1 = 4.0 / denom;
  const double v2 = 4.0 * std::pow(3.0, p - 2.0) / denom;
  return piecewise({v1, v2}, {0.25, 0.75});
}

double Weight::value_at(double t) const {
  if (const Power* pw = as_power()) {
    return pw->scale * std::pow(t, pw->alpha);
  }
  const Piecewise& pc = *as_piecewise();
  double cum = 0.0;
  for (std::size_t i = 0; i < pc.spans.size(); ++i) {
    cum += pc.spans[i];
    if (t < cum) return pc.values[i];
  }
  return pc.values.back();
}

double Weight::mass(double a, double b) const {
  if (const Power* pw = as_power()) {
    const double e = pw->alpha + 1.0;
    return pw->scale * (std::pow(b, e) - std::pow(a, e)) / e;
  }
  const Piecewise& pc = *as_piecewise();
  double sum = 0.0;
  double lo = 0.0;
  for (std::size_t i = 0; i < pc.spans.size(); ++i) {
    const double hi = lo + pc.spans[i];
    const double left = std::max(a, lo);
    const double right = std::min(b, hi);
    if (right > left) sum += pc.values[i] * (right - left);
    lo = hi;
  }
  return sum;
}

WeightValidation Weight::validate() const {
  WeightValidation report;
  if (const Power* pw = as_power()) {
    if (!(pw->scale > 0.0)) report.violations.push_back("non-positive scale");
    if (pw->alpha > 0.0) {
      report.violations.push_back("increasing (power exponent > 0)");
    }
    if (!(pw->alpha > -1.0)) {
      report.violations.push_back("infinite mass (power exponent <= -1)");
    }
    if (!std::isfinite(mass(0.0, 1.0))) {
      report.violations.push_back("W(1) not finite");
    }
    return report;
  }
  const Piecewise& pc = *as_piecewise();
  for (double v : pc.values) {
    if (!(v > 0.0)) {
      report.violations.push_back("non-positive value");
      break;
    }
  }
  for (std::size_t i = 0; i + 1 < pc.values.size(); ++i) {
    if (pc.values[i + 1] > pc.values[i]) {
      report.violations.push_back("increasing");
      break;
    }
  }
  for (double v : pc.values) {
    if (!std::isfinite(v)) {
      report.violations.push_back("W(1) not finite");
      break;
    }
  }
  return report;
}

Weight Weight::rescaled_to_unit_mass() const {
  const double total = mass(0.0, 1.0);
  if (!(total > 0.0) || !std::isfinite(total)) {
    throw DomainError("weight has non-normalizable mass");
  }
  if (const Power* pw = as_power()) {
    return power(pw->alpha, pw->scale / total);
  }
  Piecewise pc = *as_piecewise();
  for (double& v : pc.values) v /= total;
  return piecewise(std::move(pc.values), std::move(pc.spans));
}

LorentzSpace::LorentzSpace(double p, Weight weight, bool normalized)
    : p_(p), weight_(std::move(weight)), normalized_(normalized) {
  if (!(p >= 1.0)) throw DomainError("Lorentz exponent must be >= 1");
  if (normalized_) {
    const double w1 = weight_.mass(0.0, 1.0);
    if (std::abs(w1 - 1.0) > kNormTol) {
      throw DomainError("normalized space requires W(1) = 1, got W(1) = " +
                        std::to_string(w1));
    }
  }
}

double weight_mass(const Weight& w, double a, double b) {
  if (!(a >= 0.0) || !(b <= 1.0) || a > b) {
    throw RangeError("weight_mass needs 0 <= a <= b <= 1");
  }
  return w.mass(a, b);
}

double lorentz_norm(const LorentzSpace& space,
                    const RearrangementProfile& profile) {
  double sum = 0.0;
  double t = 0.0;
  for (const RearrangementBlock& b : profile.blocks) {
    sum += std::pow(b.magnitude, space.p()) *
           space.weight().mass(t, t + b.measure);
    t += b.measure;
  }
  return std::pow(sum, 1.0 / space.p());
}

double lorentz_norm(const LorentzSpace& space, const SimpleFunction& f) {
  return lorentz_norm(space, rearrange(f));
}

namespace {

double parse_real(std::string_view spec, std::size_t& pos) {
  const char* begin = spec.data() + pos;
  const char* end = spec.data() + spec.size();
  double out = 0.0;
  auto [ptr, ec] = std::from_chars(begin, end, out);
  if (ec != std::errc{} || ptr == begin) {
    throw ParseError("expected a number at position " + std::to_string(pos) +
                     " in weight spec '" + std::string(spec) + "'");
  }
  pos += static_cast<std::size_t>(ptr - begin);
  return out;
}

void expect(std::string_view spec, std::size_t& pos, char c) {
  if (pos >= spec.size() || spec[pos] != c) {
    throw ParseError(std::string("expected '") + c + "' at position " +
                     std::to_string(pos) + " in weight spec '" +
                     std::string(spec) + "'");
  }
  ++pos;
}

}  // namespace

Weight parse_weight_spec(std::string_view spec) {
  if (spec == "lp") return Weight::lebesgue();
  if (spec.rfind("pw:", 0) == 0) {
    std::size_t pos = 3;
    std::vector<double> values;
    std::vector<double> spans;
    while (true) {
      values.push_back(parse_real(spec, pos));
      expect(spec, pos, '@');
      spans.push_back(parse_real(spec, pos));
      if (pos == spec.size()) break;
      expect(spec, pos, ',');
    }
    try {
      return Weight::piecewise(std::move(values), std::move(spans));
    } catch (const BadArguments& e) {
      throw ParseError(std::string("invalid piecewise weight: ") + e.what());
    }
  }
  if (spec.rfind("pow:", 0) == 0) {
    std::size_t pos = 4;
    const double alpha = parse_real(spec, pos);
    if (pos != spec.size()) {
      throw ParseError("trailing characters at position " +
                       std::to_string(pos) + " in weight spec '" +
                       std::string(spec) + "'");
    }
    try {
      return Weight::power_normalized(alpha);
    } catch (const BadArguments& e) {
      throw ParseError(std::string("invalid power weight: ") + e.what());
    }
  }
  if (spec.rfind("cex:", 0) == 0) {
    std::size_t pos = 4;
    const double p = parse_real(spec, pos);
    if (pos != spec.size()) {
      throw ParseError("trailing characters at position " +
                       std::to_string(pos) + " in weight spec '" +
                       std::string(spec) + "'");
    }
    try {
      return Weight::counterexample(p);
    } catch (const Error& e) {
      throw ParseError(std::string("invalid counterexample weight: ") +
                       e.what());
    }
  }
  throw ParseError("unrecognized weight spec '" + std::string(spec) +
                   "' (expected lp | pw:... | pow:... | cex:...)");
}

}  // namespace lwp
