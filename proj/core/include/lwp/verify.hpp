#ifndef LWP_VERIFY_HPP
#define LWP_VERIFY_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lwp/constants.hpp"
#include "lwp/errors.hpp"
#include "lwp/lorentz.hpp"
#include "lwp/stepfn.hpp"

namespace lwp {

/// The quarter split of x = sum a_k chi_{A_k}: each cell A_k (taken in
/// modulus-descending coefficient order) is divided into B_k of measure
/// mu(A_k)/4 and C_k of measure 3 mu(A_k)/4, and
///   y = sum 3 a_k chi_{B_k} - a_k chi_{C_k}.
struct QuarterSplit {
  SimpleFunction x_sorted;   // x relabeled into modulus-descending order
  SimpleFunction x_refined;  // x on the refined B/C partition
  SimpleFunction y;          // the split sign function
  std::vector<std::pair<std::string, std::string>> pairing;  // (B_k, C_k)
  std::vector<std::size_t> order;  // sorted position -> input cell index
};

QuarterSplit quarter_split(const SimpleFunction& x, std::uint64_t seed = 0);

/// Coefficients, rearrangement positions, and weight masses realizing the
/// norm polynomial psi(lambda) = ||lambda x + y||^p in closed form.
struct PsiData {
  double p = 0.0;
  std::vector<double> b, c;        // 3 a_k and -a_k
  std::vector<double> mu_b, mu_c;  // cell measures
  std::vector<double> t_b, t_c, t_a;
  std::vector<double> w_b, w_c, w_a;
};

/// Build the psi table.  `delta` is the ratio-exclusion parameter in use;
/// coefficients of x with a modulus ratio inside (3-delta, 3) are
/// rejected.  The identity psi(0) = ||y||^p is checked at construction
/// (1e-10 relative).
PsiData psi_data(const QuarterSplit& split, const LorentzSpace& space,
                 double delta);

/// psi, psi', or psi'' at lambda in (-3, 1) by the closed forms.
double psi_eval(const PsiData& data, double lambda, int order);

struct CheckResult {
  std::string name;
  bool pass = false;
  double margin = 0.0;  // >= 0 means pass, by how much
};

struct Case1Report {
  double p = 0.0;
  double lambda_used = 0.0;
  double lhs = 0.0;  // ||lambda x + y||
  double rhs = 0.0;  // gamma_p ||y||
  bool holds = false;
  std::vector<CheckResult> checks;
  std::string psi2_interval;  // which lambda interval the psi'' sup used
};

/// The one-instance inequality pipeline: positions, weight masses,
/// psi'(0) lower bound, psi'' grid bound, Taylor step, and the final
/// norm comparison ||lambda_p x + y|| <= gamma_p ||y||.
/// Pre: 1 <= ||x|| <= 1 + (3/2) delta_p and the ratio exclusion holds.
Case1Report verify_case1(const SimpleFunction& x, const LorentzSpace& space,
                         const CaseConstants& consts,
                         std::optional<double> lambda_override = std::nullopt);

struct CounterexampleReport {
  double p = 0.0;
  double norm_y = 0.0;
  double min_margin = 0.0;  // min over grid of ||lambda x + y|| - ||y||
  double argmin_lambda = 0.0;
  bool holds = false;  // min_margin >= -1e-12
};

/// The p < 2 obstruction: with the two-piece weight tuned to p, the
/// split of chi_[0,1] minimizes ||lambda x + y|| at lambda = 0, so no
/// negative-lambda gain exists.  Scans the given lambda grid.
CounterexampleReport counterexample_check(double p,
                                          const std::vector<double>& grid);

struct TrialResult {
  std::uint64_t index = 0;
  bool pass = false;
  std::string failure;      // empty when pass
  double min_margin = 0.0;  // smallest sub-check margin of the trial
};

struct EndToEndReport {
  double p = 0.0;
  std::uint64_t seed = 0;
  int trials = 0;
  int m_max = 0;
  int passes = 0;
  double rho = 0.0;  // the implied projection-norm bound
  double min_margin = 0.0;
  std::vector<TrialResult> results;
};

/// Random instance sweep of the whole deterministic inequality chain:
/// draw x with ||x|| = 1, perturb with make_ddot(delta_p), quarter-split,
/// run verify_case1, and confirm the norm comparison that yields the
/// bound rho_p.  The narrow-operator epsilon terms are set to zero; the
/// quantifier over all projections is not (and cannot be) exercised here.
EndToEndReport end_to_end(double p, const LorentzSpace& space, int trials,
                          std::uint64_t seed, int m_max);

/// The two-cell sign pattern (2^n - 1) on measure 2^{-n} * cell_measure
/// and -1 on the rest; integrates to zero.
SimpleFunction rademacher_h(double cell_measure, int n);

/// Seeded random simple function with m cells: log-uniform moduli over
/// [1e-2, 1e2], random signs, simplex-distributed measures of total 1,
/// then rescaled so that its norm in `space` is exactly 1.
SimpleFunction random_unit_function(const LorentzSpace& space, int m,
                                    std::uint64_t seed);

}  // namespace lwp

#endif  // LWP_VERIFY_HPP
