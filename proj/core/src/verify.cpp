#include "lwp/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "lwp/perturb.hpp"

namespace lwp {

namespace {

std::vector<std::size_t> modulus_descending_order(
    const std::vector<double>& values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return std::abs(values[a]) > std::abs(values[b]);
                   });
  return order;
}

bool ratio_excluded(const std::vector<double>& values, double delta) {
  for (double vi : values) {
    for (double vj : values) {
      const double r = std::abs(vi) / std::abs(vj);
      if (r > 3.0 - delta && r < 3.0) return false;
    }
  }
  return true;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

QuarterSplit quarter_split(const SimpleFunction& x, std::uint64_t /*seed*/) {
  for (double v : x.values()) {
    if (v == 0.0) throw ZeroCoefficient("quarter_split needs nonzero cells");
  }
  const auto& cells = x.partition().cells();
  const auto order = modulus_descending_order(x.values());

  std::vector<Cell> sorted_cells, refined_cells;
  std::vector<double> sorted_vals, refined_vals, y_vals;
  std::vector<std::pair<std::string, std::string>> pairing;
  for (std::size_t pos : order) {
    const Cell& cell = cells[pos];
    const double a = x.values()[pos];
    sorted_cells.push_back(cell);
    sorted_vals.push_back(a);
    const std::string b_label = cell.label + ".B";
    const std::string c_label = cell.label + ".C";
    refined_cells.push_back({b_label, cell.measure * 0.25});
    refined_cells.push_back({c_label, cell.measure * 0.75});
    refined_vals.push_back(a);
    refined_vals.push_back(a);
    y_vals.push_back(3.0 * a);
    y_vals.push_back(-a);
    pairing.emplace_back(b_label, c_label);
  }
  LabeledPartition refined(std::move(refined_cells));
  return QuarterSplit{
      SimpleFunction(LabeledPartition(std::move(sorted_cells)),
                     std::move(sorted_vals)),
      SimpleFunction(refined, std::move(refined_vals)),
      SimpleFunction(refined, std::move(y_vals)),
      std::move(pairing),
      order};
}

PsiData psi_data(const QuarterSplit& split, const LorentzSpace& space,
                 double delta) {
  const std::vector<double>& a = split.x_sorted.values();
  if (!(delta > 0.0) || !(delta < 3.0)) {
    throw DeltaOutOfRange("psi_data needs delta in (0, 3)");
  }
  if (!ratio_excluded(a, delta)) {
    throw RatioConditionViolated(
        "coefficient modulus ratio falls inside (3-delta, 3)");
  }
  const std::size_t m = a.size();
  PsiData d;
  d.p = space.p();
  d.b.resize(m);
  d.c.resize(m);
  d.mu_b.resize(m);
  d.mu_c.resize(m);
  for (std::size_t k = 0; k < m; ++k) {
    d.b[k] = 3.0 * a[k];
    d.c[k] = -a[k];
    const double mu = split.x_sorted.partition().cells()[k].measure;
    d.mu_b[k] = 0.25 * mu;
    d.mu_c[k] = 0.75 * mu;
  }
  d.t_a.resize(m);
  d.t_b.resize(m);
  d.t_c.resize(m);
  d.w_a.resize(m);
  d.w_b.resize(m);
  d.w_c.resize(m);
  const Weight& w = space.weight();
  double ta = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    d.t_a[k] = ta;
    d.w_a[k] = w.mass(ta, ta + d.mu_b[k] + d.mu_c[k]);
    ta += d.mu_b[k] + d.mu_c[k];
  }
  for (std::size_t i = 0; i < m; ++i) {
    double tc = 0.0;
    for (std::size_t k = 0; k < i; ++k) tc += d.mu_c[k];
    for (std::size_t l = 0; l < m; ++l) {
      if (std::abs(d.b[l]) > std::abs(d.c[i])) tc += d.mu_b[l];
    }
    d.t_c[i] = tc;
    d.w_c[i] = w.mass(tc, tc + d.mu_c[i]);
  }
  for (std::size_t j = 0; j < m; ++j) {
    double tb = 0.0;
    for (std::size_t k = 0; k < j; ++k) tb += d.mu_b[k];
    for (std::size_t i = 0; i < m; ++i) {
      if (std::abs(d.c[i]) >= std::abs(d.b[j])) tb += d.mu_c[i];
    }
    d.t_b[j] = tb;
    d.w_b[j] = w.mass(tb, tb + d.mu_b[j]);
  }

  const double psi0 = psi_eval(d, 0.0, 0);
  const double ynorm = lorentz_norm(space, split.y);
  const double ynorm_p = std::pow(ynorm, d.p);
  if (std::abs(psi0 - ynorm_p) > 1e-10 * std::max(1.0, ynorm_p)) {
    throw PsiMismatch("psi(0) does not reproduce ||y||^p");
  }
  return d;
}

double psi_eval(const PsiData& d, double lambda, int order) {
  if (!(lambda > -3.0) || !(lambda < 1.0)) {
    throw LambdaOutOfRange("psi is defined for lambda in (-3, 1)");
  }
  const double p = d.p;
  const double ub = 1.0 + lambda / 3.0;
  const double uc = 1.0 - lambda;
  double sum = 0.0;
  for (std::size_t k = 0; k < d.b.size(); ++k) {
    const double bp = std::pow(std::abs(d.b[k]), p);
    const double cp = std::pow(std::abs(d.c[k]), p);
    switch (order) {
      case 0:
        sum += bp * std::pow(ub, p) * d.w_b[k] +
               cp * std::pow(uc, p) * d.w_c[k];
        break;
      case 1:
        sum += p * (bp * std::pow(ub, p - 1.0) * (1.0 / 3.0) * d.w_b[k] -
                    cp * std::pow(uc, p - 1.0) * d.w_c[k]);
        break;
      case 2:
        sum += p * (p - 1.0) *
               (bp * std::pow(ub, p - 2.0) * (1.0 / 9.0) * d.w_b[k] +
                cp * std::pow(uc, p - 2.0) * d.w_c[k]);
        break;
      default:
        throw BadArguments("psi_eval order must be 0, 1 or 2");
    }
  }
  return sum;
}

Case1Report verify_case1(const SimpleFunction& x, const LorentzSpace& space,
                         const CaseConstants& consts,
                         std::optional<double> lambda_override) {
  constexpr double kPreTol = 1e-9;
  if (space.p() != consts.p) {
    throw PreconditionViolated("space exponent does not match constants");
  }
  const double nx = lorentz_norm(space, x);
  if (nx < 1.0 - kPreTol || nx > 1.0 + 1.5 * consts.delta + kPreTol) {
    throw PreconditionViolated("||x|| outside [1, 1 + (3/2) delta_p]");
  }
  if (!ratio_excluded(x.values(), consts.delta)) {
    throw PreconditionViolated(
        "coefficient modulus ratio falls inside (3-delta_p, 3)");
  }

  const QuarterSplit split = quarter_split(x);
  const PsiData data = psi_data(split, space, consts.delta);

  Case1Report report;
  report.p = consts.p;
  report.lambda_used = lambda_override.value_or(consts.lambda);

  const double ynorm = lorentz_norm(space, split.y);
  report.lhs = lorentz_norm(
      space, combine(report.lambda_used, split.x_refined, 1.0, split.y));
  report.rhs = consts.gamma * ynorm;
  report.holds = report.lhs <= report.rhs;

  const double p = consts.p;
  // Equality is attained on degenerate instances (a single cell makes
  // psi'(0) = C_p exactly), so checks carry a relative rounding slack.
  constexpr double kSlack = 1e-12;
  {
    const double lower = consts.C * std::max(std::pow(nx, p), 1.0);
    const double margin = psi_eval(data, 0.0, 1) - lower;
    report.checks.push_back(
        {"psi_prime_lower", margin >= -kSlack * std::max(1.0, lower), margin});
  }
  {
    const double lo = consts.delta / (consts.delta - 4.0) + 1e-9;
    const double hi = consts.delta / (4.0 - consts.delta) - 1e-9;
    double sup = 0.0;
    for (int i = 0; i < 101; ++i) {
      const double lam = lo + (hi - lo) * i / 100.0;
      sup = std::max(sup, std::abs(psi_eval(data, lam, 2)));
    }
    const double margin = consts.M - sup;
    report.checks.push_back({"psi_second_bound", margin >= 0.0, margin});
    report.psi2_interval = "(delta/(delta-4), delta/(4-delta))";
  }
  {
    const double psi0 = psi_eval(data, 0.0, 0);
    const double taylor_rhs =
        psi0 * (1.0 + report.lambda_used * consts.C /
                          (2.0 * std::pow(3.0, p)));
    const double margin =
        taylor_rhs - psi_eval(data, report.lambda_used, 0);
    report.checks.push_back(
        {"taylor_bound", margin >= -kSlack * std::max(1.0, psi0), margin});
  }
  {
    double margin = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < data.w_b.size(); ++j) {
      margin = std::min(margin, data.w_b[j] - 0.25 * data.w_a[j]);
    }
    report.checks.push_back({"wB_quarter_of_wA", margin >= -kSlack, margin});
  }
  report.checks.push_back(
      {"norm_comparison", report.holds, report.rhs - report.lhs});
  return report;
}

CounterexampleReport counterexample_check(double p,
                                          const std::vector<double>& grid) {
  if (!(p >= 1.0) || p >= 2.0) {
    throw DomainError(
        "counterexample weight is non-increasing only for 1 <= p < 2");
  }
  if (grid.empty()) throw BadArguments("lambda grid must be non-empty");
  const LorentzSpace space(p, Weight::counterexample(p));
  const SimpleFunction x = SimpleFunction::build({{"a", 1.0, 1.0}});
  const QuarterSplit split = quarter_split(x);

  CounterexampleReport report;
  report.p = p;
  report.norm_y = lorentz_norm(space, split.y);
  report.min_margin = std::numeric_limits<double>::infinity();
  for (double lam : grid) {
    const double n =
        lorentz_norm(space, combine(lam, split.x_refined, 1.0, split.y));
    const double margin = n - report.norm_y;
    if (margin < report.min_margin) {
      report.min_margin = margin;
      report.argmin_lambda = lam;
    }
  }
  report.holds = report.min_margin >= -1e-12;
  return report;
}

SimpleFunction random_unit_function(const LorentzSpace& space, int m,
                                    std::uint64_t seed) {
  if (m < 1) throw BadArguments("need at least one cell");
  std::mt19937_64 rng(splitmix64(seed));
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::vector<double> measures(m);
  double total = 0.0;
  for (double& mu : measures) {
    mu = -std::log(1.0 - unit(rng));
    total += mu;
  }
  std::vector<std::tuple<std::string, double, double>> cells;
  for (int k = 0; k < m; ++k) {
    const double modulus = std::pow(10.0, -2.0 + 4.0 * unit(rng));
    const double sign = unit(rng) < 0.5 ? -1.0 : 1.0;
    cells.emplace_back("c" + std::to_string(k), measures[k] / total,
                       sign * modulus);
  }
  SimpleFunction f = SimpleFunction::build(cells);
  const double norm = lorentz_norm(space, f);
  std::vector<double> vals = f.values();
  for (double& v : vals) v /= norm;
  return f.with_values(std::move(vals));
}

EndToEndReport end_to_end(double p, const LorentzSpace& space, int trials,
                          std::uint64_t seed, int m_max) {
  if (space.p() != p) {
    throw DomainError("space exponent does not match requested p");
  }
  const CaseConstants consts = case_constants(p);

  EndToEndReport report;
  report.p = p;
  report.seed = seed;
  report.trials = trials;
  report.m_max = m_max;
  report.rho = consts.rho;
  report.min_margin = std::numeric_limits<double>::infinity();

  for (int t = 0; t < trials; ++t) {
    const std::uint64_t trial_seed = splitmix64(seed ^ splitmix64(t));
    std::mt19937_64 rng(trial_seed);
    const int m = 1 + static_cast<int>(rng() % static_cast<unsigned>(m_max));

    TrialResult result;
    result.index = static_cast<std::uint64_t>(t);
    result.min_margin = std::numeric_limits<double>::infinity();
    try {
      const SimpleFunction x = random_unit_function(space, m, trial_seed);
      auto [ddot, trace] = make_ddot(x, consts.delta);

      const double nx = lorentz_norm(space, x);
      const double nd = lorentz_norm(space, ddot);
      const double dist = lorentz_norm(space, combine(1.0, x, -1.0, ddot));
      if (dist > 1.5 * consts.delta * nx) {
        result.failure = "||x - ddot|| exceeds (3/2) delta ||x||";
      } else if (nd < nx - 1e-12 ||
                 nd > (1.0 + 1.5 * consts.delta) * nx + 1e-12) {
        result.failure = "||ddot|| outside [||x||, (1+(3/2)delta)||x||]";
      } else {
        const Case1Report c1 = verify_case1(ddot, space, consts);
        bool ok = c1.holds;
        for (const CheckResult& chk : c1.checks) {
          ok = ok && chk.pass;
          result.min_margin = std::min(result.min_margin, chk.margin);
        }
        if (!ok) result.failure = "verify_case1 sub-check failed";
      }
    } catch (const Error& e) {
      result.failure = e.what();
    }
    result.pass = result.failure.empty();
    if (result.pass) report.passes++;
    report.min_margin = std::min(report.min_margin, result.min_margin);
    report.results.push_back(std::move(result));
  }
  return report;
}

SimpleFunction rademacher_h(double cell_measure, int n) {
  if (n < 1 || !(cell_measure > 0.0) || cell_measure > 1.0) {
    throw BadArguments("rademacher_h needs n >= 1, cell_measure in (0, 1]");
  }
  const double pow2 = std::pow(2.0, n);
  const double small = cell_measure / pow2;
  return SimpleFunction::build(
      {{"hi", small, pow2 - 1.0}, {"lo", cell_measure - small, -1.0}});
}

}  // namespace lwp
