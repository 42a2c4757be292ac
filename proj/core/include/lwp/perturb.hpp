#ifndef LWP_PERTURB_HPP
#define LWP_PERTURB_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "lwp/errors.hpp"
#include "lwp/stepfn.hpp"

namespace lwp {

/// One round of the inductive bump procedure.  Indices refer to the
/// modulus-descending order of the input coefficients.
struct PerturbRound {
  std::size_t k = 0;                    // the pivot index k_n
  std::vector<std::size_t> s_set;       // S(x^(n), k_n)
  std::vector<double> coefficients;     // after the round, sorted order
};

struct PerturbTrace {
  double eta = 0.0;
  std::vector<std::size_t> order;       // sorted position -> input cell index
  std::vector<double> rounded;          // ratio_round output, sorted order
  std::vector<PerturbRound> rounds;
  std::vector<std::size_t> fragile;     // ratios within 1e-13 of {3-delta, 3}
};

/// Round coefficient moduli up to run maxima so that no pair has a
/// modulus ratio in (1, 1+eta).  Runs are grown greedily from the largest
/// modulus: a coefficient joins the current run while its ratio to the
/// run maximum stays below 1+eta, which keeps the cellwise growth factor
/// in [1, 1+eta).  Signs are preserved.
SimpleFunction ratio_round(const SimpleFunction& f, double eta);

/// S(f, k) = { j : |a_j|/|a_k| strictly inside (3-delta, 3) }, indices
/// into the cell order of f.
std::vector<std::size_t> s_set(const SimpleFunction& f, std::size_t k,
                               double delta);

/// The full two-stage perturbation: ratio_round with
/// 1+eta = (3/(3-delta))^3, then inductive bumps of the S-set of the
/// smallest-modulus pivot until every S-set is empty.  The result has no
/// modulus ratio in (3-delta, 3), stays cellwise within a factor
/// [1, 3/(3-delta)) of the rounded coefficients, and satisfies
/// ||f - out|| <= (3/2) delta ||f|| in every r.i. norm.
std::pair<SimpleFunction, PerturbTrace> make_ddot(const SimpleFunction& f,
                                                  double delta);

enum class CloseCase { i, ii, iii, iv };

/// Checks one of four ratio-transfer implications used by the bump
/// induction, on concrete positive witnesses t[0..3], t_tilde[0..3] with
/// t_tilde[i]/t[i] in [1, 3/(3-delta)).  Returns whether the implication
/// (hypothesis => conclusion) holds; a witness that fails the hypothesis
/// satisfies the implication vacuously.
bool close_check(double delta, CloseCase c, std::span<const double> t,
                 std::span<const double> t_tilde);

}  // namespace lwp

#endif  // LWP_PERTURB_HPP
