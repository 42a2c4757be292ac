#include <doctest.h>

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>

#include "lwp/stepfn.hpp"
#include "test_util.hpp"

using namespace lwp;

TEST_SUITE_BEGIN("stepfn");

TEST_CASE("build basics") {
  const auto f = SimpleFunction::build({{"a", 1.0, 2.0}});
  CHECK(integral(f) == doctest::Approx(2.0).epsilon(1e-15));

  const auto g =
      SimpleFunction::build({{"a", 0.25, 3.0}, {"b", 0.75, -1.0}});
  CHECK(integral(g) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("build rejects bad input") {
  CHECK_THROWS_AS(SimpleFunction::build({{"a", 0.0, 1.0}}),
                  NonPositiveMeasure);
  CHECK_THROWS_AS(SimpleFunction::build({{"a", -0.1, 1.0}}),
                  NonPositiveMeasure);
  CHECK_THROWS_AS(SimpleFunction::build({{"a", 0.3, 1.0}, {"a", 0.3, 2.0}}),
                  DuplicateLabel);
  CHECK_THROWS_AS(SimpleFunction::build({{"a", 0.7, 1.0}, {"b", 0.5, 1.0}}),
                  MeasureOverflow);
}

TEST_CASE("combine is cellwise") {
  const auto f = SimpleFunction::build({{"a", 0.5, 2.0}, {"b", 0.5, -3.0}});
  const auto zero = combine(1.0, f, -1.0, f);
  for (double v : zero.values()) CHECK(v == 0.0);

  // lambda x + y with the split coefficients: (1+lambda/3)*3, (1-lambda)*(-1)
  const auto x = SimpleFunction::build({{"B", 0.25, 1.0}, {"C", 0.75, 1.0}});
  const auto y = SimpleFunction::build({{"B", 0.25, 3.0}, {"C", 0.75, -1.0}});
  const auto z = combine(-0.1, x, 1.0, y);
  CHECK(z.values()[0] == doctest::Approx(2.9).epsilon(1e-15));
  CHECK(z.values()[1] == doctest::Approx(-1.1).epsilon(1e-15));
}

TEST_CASE("combine rejects partition mismatch") {
  const auto f = SimpleFunction::build({{"a", 0.5, 1.0}});
  const auto g = SimpleFunction::build({{"b", 0.5, 1.0}});
  CHECK_THROWS_AS(combine(1.0, f, 1.0, g), PartitionMismatch);
}

TEST_CASE("rearrange sorts by modulus") {
  const auto f = SimpleFunction::build({{"a", 0.5, -2.0}, {"b", 0.5, 1.0}});
  const auto prof = rearrange(f);
  REQUIRE(prof.blocks.size() == 2);
  CHECK(prof.blocks[0].magnitude == 2.0);
  CHECK(prof.blocks[0].measure == 0.5);
  CHECK(prof.blocks[1].magnitude == 1.0);

  const auto c = SimpleFunction::build({{"a", 0.3, -5.0}});
  const auto pc = rearrange(c);
  REQUIRE(pc.blocks.size() == 1);
  CHECK(pc.blocks[0].magnitude == 5.0);
  CHECK(pc.blocks[0].measure == 0.3);
}

TEST_CASE("rearrange agrees with the distribution-function oracle") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = 1 + static_cast<int>(rng() % 8);
    const auto f = testutil::random_function(rng, m, 0.9, 4.0, true);
    const auto prof = rearrange(f);
    for (int i = 0; i < 1000; ++i) {
      const double t = (i + 0.5) / 1000.0;
      const double oracle = testutil::rearrangement_oracle(f, t);
      const double got = t < prof.support_measure ? prof.at(t) : 0.0;
      if (oracle == std::numeric_limits<double>::infinity()) continue;
      CHECK(got == oracle);
    }
  }
}

TEST_CASE("rearrange invariants") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const int m = 1 + static_cast<int>(rng() % 8);
    const auto f = testutil::random_function(rng, m);
    const auto prof = rearrange(f);

    double total = 0.0;
    for (std::size_t i = 0; i < prof.blocks.size(); ++i) {
      total += prof.blocks[i].measure;
      if (i > 0) {
        CHECK(prof.blocks[i].magnitude < prof.blocks[i - 1].magnitude);
      }
    }
    CHECK(total ==
          doctest::Approx(f.partition().support_measure()).epsilon(1e-12));

    // Permutation invariance: shuffle the cells, same profile.
    std::vector<std::size_t> perm(f.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<std::tuple<std::string, double, double>> cells;
    for (std::size_t idx : perm) {
      cells.emplace_back(f.partition().cells()[idx].label,
                         f.partition().cells()[idx].measure,
                         f.values()[idx]);
    }
    const auto prof2 = rearrange(SimpleFunction::build(cells));
    REQUIRE(prof2.blocks.size() == prof.blocks.size());
    for (std::size_t i = 0; i < prof.blocks.size(); ++i) {
      CHECK(prof2.blocks[i].magnitude == prof.blocks[i].magnitude);
      CHECK(prof2.blocks[i].measure ==
            doctest::Approx(prof.blocks[i].measure).epsilon(1e-12));
    }
  }
}

TEST_CASE("integral is linear under combine") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const int m = 1 + static_cast<int>(rng() % 6);
    const auto f = testutil::random_function(rng, m);
    const auto g = f.with_values([&] {
      std::vector<double> v(f.size());
      std::uniform_real_distribution<double> u(-3.0, 3.0);
      for (double& x : v) x = u(rng);
      return v;
    }());
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    const double a = u(rng), b = u(rng);
    CHECK(integral(combine(a, f, b, g)) ==
          doctest::Approx(a * integral(f) + b * integral(g)).epsilon(1e-12));
  }
}

TEST_CASE("refine splits cells and preserves values") {
  const auto f = SimpleFunction::build({{"a", 0.5, 2.0}, {"b", 0.5, -1.0}});
  const auto r = refine(f, {{"a", {{"a.B", 0.25}, {"a.C", 0.75}}},
                            {"b", {{"b.B", 0.25}, {"b.C", 0.75}}}});
  CHECK(r.size() == 4);
  CHECK(r.partition().cells()[0].measure == doctest::Approx(0.125));
  CHECK(r.values()[0] == 2.0);
  CHECK(r.values()[1] == 2.0);

  // Equal-value split leaves the rearrangement unchanged (blocks merge).
  const auto pf = rearrange(f);
  const auto pr = rearrange(r);
  REQUIRE(pf.blocks.size() == pr.blocks.size());
  for (std::size_t i = 0; i < pf.blocks.size(); ++i) {
    CHECK(pf.blocks[i].magnitude == pr.blocks[i].magnitude);
    CHECK(pf.blocks[i].measure ==
          doctest::Approx(pr.blocks[i].measure).epsilon(1e-12));
  }

  // Refinement creates a new partition.
  CHECK_THROWS_AS(combine(1.0, f, 1.0, r), PartitionMismatch);
}

TEST_CASE("refine rejects bad fractions and unknown labels") {
  const auto f = SimpleFunction::build({{"a", 0.5, 2.0}});
  CHECK_THROWS_AS(refine(f, {{"a", {{"x", 0.5}, {"y", 0.6}}}}), BadFractions);
  CHECK_THROWS_AS(refine(f, {{"a", {{"x", -0.5}, {"y", 1.5}}}}),
                  BadFractions);
  CHECK_THROWS_AS(refine(f, {{"zz", {{"x", 1.0}}}}), UnknownLabel);
}

TEST_CASE("zero-valued cells are kept and placed last") {
  const auto f = SimpleFunction::build({{"a", 0.25, 0.0}, {"b", 0.25, 2.0}});
  const auto prof = rearrange(f);
  REQUIRE(prof.blocks.size() == 2);
  CHECK(prof.blocks[0].magnitude == 2.0);
  CHECK(prof.blocks[1].magnitude == 0.0);
  CHECK(prof.support_measure == doctest::Approx(0.5));
}

TEST_SUITE_END();
