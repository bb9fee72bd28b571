#include <doctest.h>

#include <cmath>

#include "riesz/dimension.hpp"

using namespace riesz;

namespace {

Word W(std::initializer_list<Digit> d) { return Word(std::vector<Digit>(d)); }

// Every valid constant pair with b <= 16.
std::vector<std::pair<int, int>> small_constant_pairs() {
  std::vector<std::pair<int, int>> out;
  for (int b = 4; b <= 16; ++b) {
    for (int d = 2; d < b; ++d) {
      if (b % d == 0 && b / d >= 2) out.emplace_back(b, d);
    }
  }
  return out;
}

std::size_t depth_for_1000(int d) {
  std::size_t depth = 0;
  for (long c = 1; c < 1000; c *= d) ++depth;
  return std::max<std::size_t>(depth, 2);
}

}  // namespace

TEST_CASE("gap ratios of constant pairs") {
  for (auto [b, d] : small_constant_pairs()) {
    const auto exact = gap_ratios_exact(constant_pair(b, d), 12);
    for (const auto& r : exact) CHECK(r == Rational(1, b));
    const GapRatios g = gap_ratios(constant_pair(b, d), 12);
    CHECK(g.exact);
    CHECK(g.rd_ok);
    for (long double r : g.r) CHECK(r == 1.0L / b);
  }
}

TEST_CASE("gap ratios of explicit pairs use the exact geometric tail") {
  const ScalePair p = explicit_pair({6, 4}, {3, 2});
  const auto r = gap_ratios_exact(p, 3);
  // S_n by hand: level 1 term 2/3, then (1/2)/rho_n with rho_2 = 6, rho_3 = 24, ...
  // S_2 = (1/2)(1/6)(4/3) = 1/9, S_3 = (1/2)(1/24)(4/3) = 1/36, S_1 = 2/3 + 1/9 = 7/9.
  CHECK(r[0] == Rational(1, 7));
  CHECK(r[1] == Rational(1, 4));
  CHECK(r[2] == Rational(1, 4));
}

TEST_CASE("alpha-targeting gap ratios: r_n b_n -> 1 and r_n d_n <= 1") {
  for (double a : {0.0, 0.25, 0.5, 1.0}) {
    const ScalePair p = dimension_targeting_pair(a);
    const GapRatios g = gap_ratios(p, 30);
    CHECK_FALSE(g.exact);
    CHECK(g.rd_ok);
    CHECK(g.relative_error <= 1e-15);
    for (std::size_t n = 10; n <= 30; ++n) {
      CHECK(std::abs(g.r[n - 1] * to_long_double(p.b(n)) - 1.0L) <= 0.01L);
    }
  }
}

TEST_CASE("truncated gap ratios are stable under deeper truncation") {
  const ScalePair p = dimension_targeting_pair(0.5);
  const GapRatios a = gap_ratios(p, 8);
  const GapRatios b = gap_ratios(p, 20);
  for (std::size_t n = 1; n <= 8; ++n) {
    CHECK(std::abs(a.r[n - 1] / b.r[n - 1] - 1.0L) <= 1e-15L);
  }
}

TEST_CASE("build_intervals examples") {
  const ScalePair p = constant_pair(4, 2);
  const IntervalFamily one = build_intervals(p, 1);
  REQUIRE(one.intervals.size() == 2);
  CHECK(one.intervals[0].word == W({0}));
  CHECK(one.intervals[0].left == 0);
  CHECK(one.intervals[0].right == Rational(1, 4));
  CHECK(one.intervals[1].left == Rational(3, 4));
  CHECK(one.intervals[1].right == 1);

  const IntervalFamily two = build_intervals(p, 2);
  REQUIRE(two.intervals.size() == 4);
  for (const auto& J : two.intervals) CHECK(J.right - J.left == Rational(1, 16));

  const IntervalFamily zero = build_intervals(constant_pair(9, 3), 0);
  REQUIRE(zero.intervals.size() == 1);
  CHECK(zero.intervals[0].left == 0);
  CHECK(zero.intervals[0].right == 1);

  // C(4,2) = sum_n (1/2) 4^{-(n-1)} E = (2/3) E.
  CHECK(one.rescale == Rational(2, 3));
}

TEST_CASE("build_intervals refuses over budget") {
  CHECK_THROWS_AS(build_intervals(constant_pair(4, 2), 12, 1000), BudgetError);
}

TEST_CASE("interval family invariants hold exactly") {
  for (auto [b, d] : small_constant_pairs()) {
    const ScalePair p = constant_pair(b, d);
    const std::size_t depth = d <= 3 ? 4 : 2;
    const IntervalCheck c = check_interval_family(p, depth);
    CHECK_MESSAGE(c.ok, c.problem);
  }
  for (const auto& p : {explicit_pair({6, 8, 4}, {3, 2, 2}), dimension_targeting_pair(0.5),
                        dimension_targeting_pair(1.0)}) {
    const IntervalCheck c = check_interval_family(p, 3);
    CHECK_MESSAGE(c.ok, c.problem);
  }
}

TEST_CASE("interval lengths equal the product of gap ratios") {
  const ScalePair p = explicit_pair({6, 8, 4}, {3, 2, 2});
  const IntervalFamily f = build_intervals(p, 4);
  Rational prod = 1;
  for (const auto& r : f.r) prod *= r;
  for (const auto& J : f.intervals) CHECK(J.right - J.left == prod);
}

TEST_CASE("hausdorff_dim_formula") {
  SUBCASE("constant pairs are constant in N") {
    for (auto [b, d] : small_constant_pairs()) {
      const HausdorffReport h = hausdorff_dim_formula(constant_pair(b, d), 40);
      const long double expected = std::log(static_cast<long double>(d)) /
                                   std::log(static_cast<long double>(b));
      for (long double s : h.ratios) CHECK(std::abs(s - expected) <= 1e-12L);
    }
    CHECK(std::abs(hausdorff_dim_formula(constant_pair(4, 2), 10).value - 0.5L) <= 1e-12L);
    CHECK(std::abs(hausdorff_dim_formula(constant_pair(9, 3), 10).value - 0.5L) <= 1e-12L);
  }
  SUBCASE("alpha = 0.25 approaches 0.25 by N = 40") {
    const HausdorffReport h = hausdorff_dim_formula(dimension_targeting_pair(0.25), 40);
    CHECK(std::abs(h.value - 0.25L) <= 0.02L);
    CHECK(h.trailing_inf <= h.value);
  }
  SUBCASE("squared profile reaches every alpha within 0.02 by N = 40") {
    for (double a : {0.0, 0.25, 0.5, 1.0}) {
      const HausdorffReport h =
          hausdorff_dim_formula(dimension_targeting_pair(a, GrowthProfile::kSquaredPowersOfTwo), 40);
      CHECK(std::abs(h.value - a) <= 0.02L);
    }
  }
  SUBCASE("N < 2 is rejected") {
    CHECK_THROWS(hausdorff_dim_formula(constant_pair(4, 2), 1));
  }
}

TEST_CASE("box_counting_dim examples") {
  const BoxCountingReport a = box_counting_dim(constant_pair(4, 2), 8);
  CHECK(a.slope == doctest::Approx(0.5).epsilon(0.04));
  const BoxCountingReport b = box_counting_dim(constant_pair(9, 3), 6);
  CHECK(b.slope == doctest::Approx(0.5).epsilon(0.04));
  const BoxCountingReport c = box_counting_dim(constant_pair(8, 2), 8);
  CHECK(std::abs(c.slope - 1.0 / 3.0) <= 0.02);
  CHECK_THROWS(box_counting_dim(constant_pair(4, 2), 1));
}

TEST_CASE("box counting agrees with the formula for constant pairs with b <= 16") {
  for (auto [b, d] : small_constant_pairs()) {
    const ScalePair p = constant_pair(b, d);
    const std::size_t depth = depth_for_1000(d);
    const BoxCountingReport r = box_counting_dim(p, depth);
    CHECK(r.intervals >= 1000);
    const double formula = std::log(static_cast<double>(d)) / std::log(static_cast<double>(b));
    CHECK_MESSAGE(std::abs(r.slope - formula) <= 0.05, "(" << b << "," << d << ")");
  }
}

TEST_CASE("beurling_upper_dim examples") {
  SUBCASE("canonical mu_{4,2}, L = 8") {
    const SpectrumLevel l = enumerate_level(canonical_tau(constant_pair(4, 2)), 8);
    CHECK(std::abs(beurling_upper_dim(l).slope - 0.5) <= 0.1);
  }
  SUBCASE("arithmetic progression") {
    std::vector<BigInt> ap;
    for (int i = 0; i < 1000; ++i) ap.emplace_back(i);
    const auto grid = default_window_grid(ap);
    CHECK(std::abs(beurling_upper_dim(ap, grid).slope - 1.0) <= 0.1);
  }
  SUBCASE("singleton") {
    const std::vector<BigInt> one = {BigInt(0)};
    const auto grid = default_window_grid(one);
    CHECK(std::abs(beurling_upper_dim(one, grid).slope) <= 1e-12);
  }
  SUBCASE("degenerate grids are rejected") {
    const std::vector<BigInt> one = {BigInt(0)};
    const std::vector<double> single = {1.0};
    const std::vector<double> bad = {1.0, -2.0};
    CHECK_THROWS(beurling_upper_dim(one, single));
    CHECK_THROWS(beurling_upper_dim(one, bad));
    CHECK_THROWS(geometric_grid(2.0, 1.0, 5));
  }
}

TEST_CASE("beurling_vs_hausdorff examples") {
  const auto a = beurling_vs_hausdorff(canonical_tau(constant_pair(4, 2)), 8);
  CHECK(a.pass);
  CHECK(a.hausdorff == doctest::Approx(0.5));
  const auto b = beurling_vs_hausdorff(canonical_tau(constant_pair(8, 2)), 8);
  CHECK(b.pass);
  CHECK(std::abs(b.beurling - 1.0 / 3.0) <= 0.1);
  const TreeMapping t(constant_pair(4, 2), {{W({1}), -1}, {W({0, 1}), -1}});
  CHECK(beurling_vs_hausdorff(t, 6).pass);
}

TEST_CASE("fit_line") {
  const std::vector<double> x = {0, 1, 2, 3};
  const std::vector<double> y = {1, 3, 5, 7};
  const auto [slope, residual] = fit_line(x, y);
  CHECK(slope == doctest::Approx(2.0));
  CHECK(residual == doctest::Approx(0.0));
}
