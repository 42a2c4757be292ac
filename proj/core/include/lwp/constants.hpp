#ifndef LWP_CONSTANTS_HPP
#define LWP_CONSTANTS_HPP

#include "lwp/errors.hpp"

namespace lwp {

/// The constant bundle behind the projection-norm lower bound for p > 2.
struct CaseConstants {
  double p = 0.0;
  double C = 0.0;       // (1/4) p (3^{p-1} - 3)
  double M = 0.0;       // p (p-1) 4^p
  double D = 0.0;       // C / (8 * 3^p * p) = (3^{p-2} - 1) / (32 * 3^{p-1})
  double delta = 0.0;   // min{1/8, 4C/M, 8D}
  double lambda = 0.0;  // -delta/4
  double gamma = 0.0;   // (1 - delta * p * D)^{1/p}
  double rho = 0.0;     // (gamma + (1/2) delta |lambda|)^{-1}
};

/// Evaluate the whole bundle.  Throws DomainError for p <= 2, where
/// C <= 0 and the construction collapses.
CaseConstants case_constants(double p);

/// gamma(delta) = (1 - delta * C_p / (8 * 3^p))^{1/p}, valid for p > 2
/// and delta in [0, min{1/8, 4C_p/M_p}].
double gamma_of(double p, double delta);

}  // namespace lwp

#endif  // LWP_CONSTANTS_HPP
