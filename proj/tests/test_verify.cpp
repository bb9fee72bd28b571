#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "riesz/verify.hpp"

using namespace riesz;

namespace {

using CL = std::complex<long double>;

Word W(std::initializer_list<Digit> d) { return Word(std::vector<Digit>(d)); }

CL direct_H(std::uint64_t m, long double xi) {
  CL s = 0;
  for (std::uint64_t j = 0; j < m; ++j) {
    const long double a = -2.0L * std::numbers::pi_v<long double> * static_cast<long double>(j) * xi;
    s += CL(std::cos(a), std::sin(a));
  }
  return s / static_cast<long double>(m);
}

// Partition sum by direct summation over the enumerated level.
long double partition_oracle(const ScalePair& p, const std::vector<BigInt>& lambda, long double xi,
                             std::size_t L) {
  long double total = 0;
  for (const auto& l : lambda) {
    CL prod = 1;
    for (std::size_t n = 1; n <= L; ++n) {
      const BigInt dr = p.d(n) * rho(p, n);
      // Reduce the integer part exactly before going to long double.
      const BigInt q = l % dr;
      prod *= direct_H(static_cast<std::uint64_t>(p.d(n)),
                       (xi + to_long_double(q)) / to_long_double(dr));
    }
    total += std::norm(prod);
  }
  return total;
}

std::vector<BigInt> ints(std::initializer_list<long> v) {
  std::vector<BigInt> out;
  for (long x : v) out.emplace_back(x);
  return out;
}

}  // namespace

TEST_CASE("orthogonality_check examples") {
  const ScalePair p = constant_pair(4, 2);
  const OrthogonalityReport ok = orthogonality_check(enumerate_level(canonical_tau(p), 4), p);
  CHECK(ok.pass);
  CHECK(ok.element_count == 16);
  CHECK(ok.pairs_checked == 120);

  const OrthogonalityReport bad = orthogonality_check(ints({0, 8}), p);
  CHECK_FALSE(bad.pass);
  CHECK(bad.violation_count == 1);
  REQUIRE(bad.violations.size() == 1);
  CHECK(bad.violations[0].first == 0);
  CHECK(bad.violations[0].second == 8);

  const OrthogonalityReport single = orthogonality_check(ints({0}), p);
  CHECK(single.pass);
  CHECK(single.pairs_checked == 0);
}

TEST_CASE("orthogonality budget refusal") {
  const ScalePair p = constant_pair(4, 2);
  const SpectrumLevel l = enumerate_level(canonical_tau(p), 13);
  try {
    orthogonality_check(l, p);
    FAIL("expected BudgetError");
  } catch (const BudgetError& e) {
    CHECK(e.required() == 8192ULL * 8191ULL / 2);
  }
  OrthogonalityOptions opts;
  opts.max_elements = 8192;
  CHECK(orthogonality_check(l, p, opts).pass);
}

TEST_CASE("duplicates and collisions are violations") {
  const ScalePair p = constant_pair(4, 2);
  CHECK_FALSE(orthogonality_check(ints({0, 1, 1}), p).pass);
  const SpectrumLevel bad = enumerate_level(TreeMapping(p, {{W({1}), 0}}), 2);
  const OrthogonalityReport r = orthogonality_check(bad, p);
  CHECK_FALSE(r.pass);
  CHECK(r.violation_count >= 2);
}

TEST_CASE("fast divisibility path agrees with the exact scan") {
  std::mt19937_64 rng(41);
  const std::vector<ScalePair> pairs = {constant_pair(4, 2), constant_pair(9, 3),
                                        constant_pair(12, 4), constant_pair(10, 5),
                                        dimension_targeting_pair(0.5)};
  for (const auto& p : pairs) {
    const std::uint64_t max = std::uint64_t{1} << 62;
    const ExactZeroTester t(p, max);
    for (int i = 0; i < 3000; ++i) {
      // Mix of random values and values built from scales to hit both outcomes.
      std::uint64_t v = rng() >> (2 + rng() % 60);
      if (i % 2 == 0) {
        const std::size_t n = 1 + rng() % 8;
        const BigInt r = rho(p, n);
        if (r < BigInt(max)) {
          const auto rr = static_cast<std::uint64_t>(r);
          v = rr * (1 + rng() % std::max<std::uint64_t>(1, (max / rr) >> 20));
        }
      }
      if (v == 0) continue;
      CHECK(t.is_zero(v) == mu_hat_exact_zero(p, BigInt(v)).is_zero);
    }
  }
}

TEST_CASE("big-integer path is used beyond 64 bits") {
  const ScalePair p = constant_pair(4, 2);
  const BigInt base = BigInt(1) << 100;
  // Difference 1 is an exact zero of mu_hat, difference 8 is not.
  CHECK(orthogonality_check(std::vector<BigInt>{base, base + 1}, p).pass);
  CHECK_FALSE(orthogonality_check(std::vector<BigInt>{-base, -base + 8}, p).pass);
  CHECK(orthogonality_check(std::vector<BigInt>{-base, base + 1}, p).pass ==
        mu_hat_exact_zero(p, 2 * base + 1).is_zero);
}

TEST_CASE("partition identity examples") {
  SUBCASE("L = 1 is the Pythagorean identity") {
    const TreeMapping t = canonical_tau(constant_pair(4, 2));
    for (double xi : {0.0, 0.1, 0.37, 0.5, 0.99, -3.2}) {
      CHECK(partition_identity(t, xi, 1).defect <= 1e-15);
    }
  }
  SUBCASE("mu_{4,2}, L = 8, xi = 0.3 against a long double oracle") {
    const ScalePair p = constant_pair(4, 2);
    const TreeMapping t = canonical_tau(p);
    const PartitionResult r = partition_identity(t, 0.3, 8);
    CHECK(r.terms == 256);
    CHECK(r.defect <= 1e-9);
    const long double oracle = partition_oracle(p, enumerate_level(t, 8).elements, 0.3L, 8);
    CHECK(std::abs(oracle - 1.0L) <= 1e-15L);
    CHECK(std::abs(static_cast<long double>(r.sum) - oracle) <= 1e-12L);
  }
  SUBCASE("(6,3), L = 4, xi = 0.1") {
    const TreeMapping t = canonical_tau(constant_pair(6, 3));
    CHECK(partition_identity(t, 0.1, 4).defect <= 1e-9);
  }
  SUBCASE("invalid mappings are refused") {
    const TreeMapping t(constant_pair(4, 2), {{W({1}), 3}});
    CHECK_THROWS_AS(partition_identity(t, 0.1, 3), ConstraintError);
  }
}

TEST_CASE("partition identity on random draws") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const ScalePair alpha = dimension_targeting_pair(0.5);
  const std::vector<std::pair<ScalePair, std::size_t>> cases = {
      {constant_pair(4, 2), 8}, {constant_pair(9, 3), 6}, {alpha, 5}};
  for (const auto& [p, Lmax] : cases) {
    const TreeMapping t = canonical_tau(p);
    for (int i = 0; i < 50; ++i) {
      const double xi = u(rng);
      const std::size_t L = 1 + rng() % Lmax;
      CHECK(partition_identity(t, xi, L).defect <= 1e-9);
    }
  }
}

TEST_CASE("partition identity holds for table mappings and modulated filters") {
  const ScalePair p = constant_pair(4, 2);
  const TreeMapping t(p, {{W({1}), -1}, {W({1, 1}), -1}, {W({0, 1, 0}), -2}});
  const CertifiedFilters f(FilterFamily::modulated(1), p);
  for (double xi : {0.05, 0.3, 0.77}) {
    CHECK(partition_identity(t, xi, 6).defect <= 1e-12);
    CHECK(partition_identity(t, xi, 6, &f).defect <= 1e-12);
  }
}

TEST_CASE("completeness examples") {
  const ScalePair p = constant_pair(4, 2);
  const TreeMapping t = canonical_tau(p);
  SUBCASE("Q_L(0) = 1 exactly") {
    const std::vector<double> grid = {0.0};
    const CompletenessReport r = completeness_Q(t, grid, 8, 1e-14);
    for (const auto& row : r.rows) CHECK(row.Q == 1.0);
  }
  SUBCASE("xi = 0.3 matches the high-precision oracle") {
    // Frozen from tests/oracles/completeness_mu42.py.
    const double oracle[] = {0.93639048280342399024, 0.98178999392214946034,
                             0.99480784277870542548, 0.99852112784088224612,
                             0.99957890689756169851, 0.99988010991052574523,
                             0.99996586696020892096, 0.99999028232571156914,
                             0.99999723338754185409, 0.99999921234891632883,
                             0.99999977575680151318, 0.99999993615827130569};
    const std::vector<double> grid = {0.3};
    const CompletenessReport r = completeness_Q(t, grid, 12, 1e-14);
    CHECK(r.monotone);
    CHECK(r.bounded);
    REQUIRE(r.rows.size() == 12);
    for (std::size_t L = 1; L <= 12; ++L) {
      CHECK(r.rows[L - 1].Q <= 1.0 + 1e-9);
      CHECK(std::abs(r.rows[L - 1].Q - oracle[L - 1]) <= 1e-12);
    }
  }
  SUBCASE("a non-orthogonal set overshoots") {
    const std::vector<std::vector<BigInt>> levels = {ints({0, 8})};
    const std::vector<double> grid = completeness_grid(32);
    const CompletenessReport r = completeness_Q(p, levels, grid, 1e-12);
    bool overshoot = false;
    for (const auto& row : r.rows) overshoot = overshoot || row.Q > 1.0 + 1e-6;
    CHECK(overshoot);
    CHECK_FALSE(r.bounded);
  }
  SUBCASE("grid points outside [0, 1/2] are rejected") {
    const std::vector<double> grid = {0.6};
    CHECK_THROWS_AS(completeness_Q(t, grid, 2, 1e-12), std::invalid_argument);
  }
}

TEST_CASE("completeness grid") {
  const auto g = completeness_grid(32);
  REQUIRE(g.size() == 33);
  CHECK(g.front() == 0.0);
  CHECK(g.back() == 0.5);
  CHECK(g[16] == 0.25);
}

TEST_CASE("completeness on a table mapping is monotone and bounded") {
  const ScalePair p = constant_pair(4, 2);
  const TreeMapping t(p, {{W({1}), -1}, {W({0, 1}), -1}});
  const CompletenessReport r = completeness_Q(t, completeness_grid(8), 8, 1e-13);
  CHECK(r.monotone);
  CHECK(r.bounded);
}
