#include <doctest.h>

#include <cmath>
#include <map>
#include <random>

#include "lwp/lorentz.hpp"
#include "test_util.hpp"

using namespace lwp;

TEST_SUITE_BEGIN("lorentz");

TEST_CASE("weight_mass closed forms") {
  const Weight lp = Weight::lebesgue();
  CHECK(weight_mass(lp, 0.2, 0.7) == doctest::Approx(0.5).epsilon(1e-15));

  // The p<2 counterexample weight is normalized for every p.
  for (double p : {1.0, 1.25, 1.5, 1.75, 1.99}) {
    const Weight w = Weight::counterexample(p);
    CHECK(weight_mass(w, 0.0, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
  }

  const Weight pw = Weight::power(-0.5, 0.5);
  CHECK(weight_mass(pw, 0.0, 1.0) == doctest::Approx(1.0).epsilon(1e-15));

  CHECK_THROWS_AS(weight_mass(lp, 0.7, 0.2), RangeError);
  CHECK_THROWS_AS(weight_mass(lp, -0.1, 0.5), RangeError);
  CHECK_THROWS_AS(weight_mass(lp, 0.5, 1.1), RangeError);
}

TEST_CASE("weight_mass additivity") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const Weight weights[] = {Weight::lebesgue(), Weight::counterexample(1.5),
                            Weight::power_normalized(-0.3),
                            Weight::piecewise({3.0, 2.0, 0.5},
                                              {0.2, 0.3, 0.5})};
  for (const Weight& w : weights) {
    for (int i = 0; i < 200; ++i) {
      double a = u(rng), b = u(rng), c = u(rng);
      if (a > b) std::swap(a, b);
      if (b > c) std::swap(b, c);
      if (a > b) std::swap(a, b);
      CHECK(weight_mass(w, a, c) ==
            doctest::Approx(weight_mass(w, a, b) + weight_mass(w, b, c))
                .epsilon(1e-12));
    }
  }
}

TEST_CASE("norm of the unit indicator is 1 in a normalized space") {
  const auto chi = SimpleFunction::build({{"a", 1.0, 1.0}});
  for (double p : {1.0, 2.0, 3.0, 4.5}) {
    const LorentzSpace space(p, Weight::lebesgue());
    CHECK(lorentz_norm(space, chi) == doctest::Approx(1.0).epsilon(1e-15));
  }
  const LorentzSpace cex(1.5, Weight::counterexample(1.5));
  CHECK(lorentz_norm(cex, chi) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("L_p consistency with the flat weight") {
  const auto f = SimpleFunction::build({{"a", 0.5, 2.0}});
  for (double p : {1.0, 1.5, 2.0, 3.0}) {
    const LorentzSpace space(p, Weight::lebesgue());
    CHECK(lorentz_norm(space, f) ==
          doctest::Approx(2.0 * std::pow(0.5, 1.0 / p)).epsilon(1e-14));
  }
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const int m = 1 + static_cast<int>(rng() % 8);
    const auto g = testutil::random_function(rng, m);
    const double p = 1.0 + 3.0 * (rng() % 1000) / 1000.0;
    const LorentzSpace space(p, Weight::lebesgue());
    double direct = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      direct += std::pow(std::abs(g.values()[i]), p) *
                g.partition().cells()[i].measure;
    }
    CHECK(lorentz_norm(space, g) ==
          doctest::Approx(std::pow(direct, 1.0 / p)).epsilon(1e-12));
  }
}

TEST_CASE("counterexample weight norm of the split sign function") {
  // y = 3 on 1/4, -1 on 3/4: ||y||^p = 3^p W(1/4) + (1 - W(1/4))
  // with W(1/4) = 1/(3^{p-1}+1), giving 4*3^{p-1}/(3^{p-1}+1).
  for (double p : {1.0, 1.25, 1.5, 1.75}) {
    const LorentzSpace space(p, Weight::counterexample(p));
    const auto y =
        SimpleFunction::build({{"B", 0.25, 3.0}, {"C", 0.75, -1.0}});
    const double expected = std::pow(
        4.0 * std::pow(3.0, p - 1.0) / (std::pow(3.0, p - 1.0) + 1.0),
        1.0 / p);
    CHECK(lorentz_norm(space, y) ==
          doctest::Approx(expected).epsilon(1e-14));
  }
}

TEST_CASE("validate_weight reports violations") {
  CHECK(Weight::piecewise({1.0, 2.0}, {0.5, 0.5}).validate().violations ==
        std::vector<std::string>{"increasing"});
  CHECK(Weight::counterexample(1.5).validate().ok());
  // 3^{p-2} > 1 for p > 2: the family turns increasing.
  CHECK_FALSE(Weight::counterexample(2.5).validate().ok());
  CHECK(Weight::power_normalized(-0.5).validate().ok());
  CHECK_FALSE(Weight::power(0.5, 1.0).validate().ok());
  // L_{p,q} weight (q/p) t^{p/q-1}: increasing exactly when p > q.
  CHECK(Weight::lpq(2.0, 4.0).validate().ok());
  CHECK_FALSE(Weight::lpq(4.0, 2.0).validate().ok());
}

TEST_CASE("counterexample weight values at p = 1.5") {
  const Weight w = Weight::counterexample(1.5);
  CHECK(w.value_at(0.1) == doctest::Approx(1.4641).epsilon(1e-3));
  CHECK(w.value_at(0.5) == doctest::Approx(0.8453).epsilon(1e-3));
  CHECK(w.validate().ok());
}

TEST_CASE("norm properties") {
  std::mt19937_64 rng(17);
  const Weight weights[] = {Weight::lebesgue(), Weight::counterexample(1.2),
                            Weight::power_normalized(-0.4),
                            Weight::piecewise({2.5, 1.0, 0.25},
                                              {0.25, 0.25, 0.5})};
  for (int trial = 0; trial < 200; ++trial) {
    const Weight& w = weights[trial % 4];
    const double p = 1.0 + 3.0 * (rng() % 1000) / 1000.0;
    const LorentzSpace space(p, w);
    const int m = 1 + static_cast<int>(rng() % 6);
    const auto f = testutil::random_function(rng, m);
    const double nf = lorentz_norm(space, f);

    // Absolute homogeneity.
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    const double c = u(rng);
    CHECK(lorentz_norm(space, combine(c, f, 0.0, f)) ==
          doctest::Approx(std::abs(c) * nf).epsilon(1e-12));

    // Invariance under equal-value splitting.
    std::map<std::string,
             std::vector<std::pair<std::string, double>>> splits;
    const std::string& first = f.partition().cells()[0].label;
    splits[first] = {{first + ".1", 0.25}, {first + ".2", 0.75}};
    CHECK(lorentz_norm(space, refine(f, splits)) ==
          doctest::Approx(nf).epsilon(1e-12));

    // Lattice monotonicity: |f| <= |g| cellwise => norm(f) <= norm(g).
    std::vector<double> bigger = f.values();
    std::uniform_real_distribution<double> grow(1.0, 2.0);
    for (double& v : bigger) v *= grow(rng);
    CHECK(nf <= lorentz_norm(space, f.with_values(bigger)) + 1e-12);

    // Triangle inequality on aligned partitions.
    std::vector<double> gv(f.size());
    for (double& v : gv) v = u(rng);
    const auto g = f.with_values(gv);
    CHECK(lorentz_norm(space, combine(1.0, f, 1.0, g)) <=
          nf + lorentz_norm(space, g) + 1e-9);
  }
}

TEST_CASE("normalized space rejects unnormalized weights") {
  CHECK_THROWS_AS(LorentzSpace(2.0, Weight::power(-0.5, 1.0)), DomainError);
  CHECK_NOTHROW(LorentzSpace(2.0, Weight::power(-0.5, 1.0), false));
  CHECK_THROWS_AS(LorentzSpace(0.5, Weight::lebesgue()), DomainError);
}

TEST_CASE("weight spec grammar") {
  CHECK(parse_weight_spec("lp").mass(0.0, 1.0) == doctest::Approx(1.0));
  const Weight pw = parse_weight_spec("pw:2@0.25,0.5@0.5,0.4@0.25");
  CHECK(pw.value_at(0.1) == 2.0);
  CHECK(pw.value_at(0.6) == 0.5);
  const Weight pow = parse_weight_spec("pow:-0.5");
  CHECK(pow.mass(0.0, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
  const Weight cex = parse_weight_spec("cex:1.5");
  CHECK(cex.value_at(0.1) == doctest::Approx(1.4641).epsilon(1e-3));

  CHECK_THROWS_AS(parse_weight_spec("nope"), ParseError);
  CHECK_THROWS_AS(parse_weight_spec("pw:1@"), ParseError);
  CHECK_THROWS_AS(parse_weight_spec("pw:1@0.5,2"), ParseError);
  CHECK_THROWS_AS(parse_weight_spec("pow:abc"), ParseError);
  CHECK_THROWS_AS(parse_weight_spec("pow:-1.5"), ParseError);
}

TEST_SUITE_END();
