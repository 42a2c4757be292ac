#include "lwp/constants.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace lwp {

CaseConstants case_constants(double p) {
  if (!(p > 2.0)) {
    throw DomainError("case constants need p > 2, got p = " +
                      std::to_string(p));
  }
  CaseConstants k;
  k.p = p;
  k.C = 0.25 * p * (std::pow(3.0, p - 1.0) - 3.0);
  k.M = p * (p - 1.0) * std::pow(4.0, p);
  k.D = k.C / (8.0 * std::pow(3.0, p) * p);
  k.delta = std::min({1.0 / 8.0, 4.0 * k.C / k.M, 8.0 * k.D});
  k.lambda = -k.delta / 4.0;
  k.gamma = std::pow(1.0 - k.delta * p * k.D, 1.0 / p);
  k.rho = 1.0 / (k.gamma + 0.5 * k.delta * std::abs(k.lambda));
  return k;
}

double gamma_of(double p, double delta) {
  if (!(p > 2.0)) throw DomainError("gamma needs p > 2");
  const double c = 0.25 * p * (std::pow(3.0, p - 1.0) - 3.0);
  const double m = p * (p - 1.0) * std::pow(4.0, p);
  const double cap = std::min(1.0 / 8.0, 4.0 * c / m);
  if (!(delta >= 0.0) || delta > cap) {
    throw DomainError("delta outside [0, min{1/8, 4C_p/M_p}]");
  }
  return std::pow(1.0 - delta * c / (8.0 * std::pow(3.0, p)), 1.0 / p);
}

}  // namespace lwp
