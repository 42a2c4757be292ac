#ifndef LWP_LORENTZ_HPP
#define LWP_LORENTZ_HPP

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "lwp/errors.hpp"
#include "lwp/stepfn.hpp"

namespace lwp {

/// Result of weight admissibility checks.  Reports, never throws.
struct WeightValidation {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// A weight w on (0,1), either piecewise constant on consecutive spans
/// from 0 or a power t^alpha scaled.  Construction admits weights that
/// violate the norm axioms (positivity is required, monotonicity is not);
/// validate() reports which axioms hold so that inadmissible families,
/// e.g. the p>=2 counterexample weight, can still be inspected.
class Weight {
 public:
  struct Piecewise {
    std::vector<double> values;  // one per span
    std::vector<double> spans;   // consecutive measures from 0, summing to 1
  };
  struct Power {
    double alpha = 0.0;  // must be > -1 for integrability
    double scale = 1.0;
  };

  /// w == 1 on (0,1); the L_p weight.
  static Weight lebesgue();
  /// Piecewise constant: values[i] on a span of measure spans[i],
  /// spans consecutive from 0.  Spans must be positive and sum to 1.
  static Weight piecewise(std::vector<double> values,
                          std::vector<double> spans);
  /// scale * t^alpha with alpha > -1 (finite mass).
  static Weight power(double alpha, double scale);
  /// Power weight with scale chosen so that W(1) = 1.
  static Weight power_normalized(double alpha);
  /// The L_{p,q} weight w(t) = (q/p) t^{p/q-1}, as printed; validate()
  /// decides admissibility.
  static Weight lpq(double p, double q);
  /// The p<2 counterexample weight
  ///   4/(3^{p-1}+1) on [0,1/4),  4*3^{p-2}/(3^{p-1}+1) on [1/4,1].
  /// Constructible for any p >= 1; non-increasing only for p <= 2.
  static Weight counterexample(double p);

  /// Antiderivative difference W(b) - W(a) in closed form.
  double mass(double a, double b) const;
  /// Pointwise value w(t), t in (0,1).
  double value_at(double t) const;

  WeightValidation validate() const;

  bool is_power() const { return std::holds_alternative<Power>(rep_); }
  const Piecewise* as_piecewise() const {
    return std::get_if<Piecewise>(&rep_);
  }
  const Power* as_power() const { return std::get_if<Power>(&rep_); }

  /// Same weight rescaled so that W(1) = 1.
  Weight rescaled_to_unit_mass() const;

 private:
  explicit Weight(std::variant<Piecewise, Power> rep) : rep_(std::move(rep)) {}
  std::variant<Piecewise, Power> rep_;
};

/// The space L_{w,p}: exponent p >= 1 plus a weight.  With `normalized`
/// set (the default) the weight must satisfy W(1) = 1 so that
/// ||chi_[0,1]|| = 1.
class LorentzSpace {
 public:
  LorentzSpace(double p, Weight weight, bool normalized = true);

  double p() const { return p_; }
  const Weight& weight() const { return weight_; }
  bool normalized() const { return normalized_; }

 private:
  double p_;
  Weight weight_;
  bool normalized_;
};

/// W(b) - W(a); throws RangeError unless 0 <= a <= b <= 1.
double weight_mass(const Weight& w, double a, double b);

/// The Lorentz norm (integral of w * (f*)^p)^(1/p), exact given the
/// rearrangement profile: block boundaries are cumulative measures,
/// weight masses in closed form, no quadrature.
double lorentz_norm(const LorentzSpace& space, const SimpleFunction& f);

/// Norm of a pre-computed rearrangement profile.
double lorentz_norm(const LorentzSpace& space,
                    const RearrangementProfile& profile);

inline WeightValidation validate_weight(const Weight& w) {
  return w.validate();
}

/// Weight spec grammar:
///   lp | pw:v1@m1,v2@m2,... | pow:alpha | cex:p
/// Errors carry the offending position in the spec string.
Weight parse_weight_spec(std::string_view spec);

}  // namespace lwp

#endif  // LWP_LORENTZ_HPP
