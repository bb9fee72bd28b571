#include <doctest.h>

#include <algorithm>
#include <set>

#include "riesz/spectra.hpp"

using namespace riesz;

namespace {

Word W(std::initializer_list<Digit> d) { return Word(std::vector<Digit>(d)); }

std::vector<BigInt> ints(std::initializer_list<long> v) {
  std::vector<BigInt> out;
  for (long x : v) out.emplace_back(x);
  return out;
}

// sum_{n<=L} ([0, d_n) & Z) rho_n by nested expansion.
std::set<BigInt> direct_expansion(const ScalePair& p, std::size_t L) {
  std::set<BigInt> acc{0};
  BigInt r = 1;
  for (std::size_t n = 1; n <= L; ++n) {
    std::set<BigInt> next;
    const auto d = static_cast<long>(p.d(n));
    for (const auto& a : acc) {
      for (long k = 0; k < d; ++k) next.insert(a + k * r);
    }
    acc = std::move(next);
    r *= p.b(n);
  }
  return acc;
}

}  // namespace

TEST_CASE("canonical tau") {
  const TreeMapping t = canonical_tau(constant_pair(4, 2));
  CHECK(t(W({0, 1})) == 1);
  CHECK(t(W({0, 0, 0})) == 0);
  CHECK(t(Word{}) == 0);
  CHECK(validate_tree_mapping(t, 6).ok);
}

TEST_CASE("word helpers") {
  CHECK(Word{}.str() == "root");
  CHECK(W({1, 0, 1}).str() == "101");
  CHECK(W({12, 3}).str() == "12.3");
  CHECK(W({1, 0, 1}).prefix(2) == W({1, 0}));
  CHECK(W({1}).zero_extended(2) == W({1, 0, 0}));
  CHECK(is_member(W({1, 1}), constant_pair(4, 2)));
  CHECK_FALSE(is_member(W({2}), constant_pair(4, 2)));
}

TEST_CASE("validate_tree_mapping examples") {
  const ScalePair p = constant_pair(4, 2);
  SUBCASE("out of range value fails condition (ii)") {
    const TreeReport r = validate_tree_mapping(TreeMapping(p, {{W({1}), 3}}), 4);
    REQUIRE_FALSE(r.ok);
    CHECK(r.violations.front().condition == "(ii)");
    CHECK(r.violations.front().word == W({1}));
  }
  SUBCASE("negative representative passes") {
    CHECK(validate_tree_mapping(TreeMapping(p, {{W({1}), -1}}), 4).ok);
  }
  SUBCASE("wrong residue fails condition (ii)") {
    CHECK_FALSE(validate_tree_mapping(TreeMapping(p, {{W({1}), 0}}), 4).ok);
  }
  SUBCASE("all-zero word with nonzero value fails condition (i)") {
    const TreeReport r = validate_tree_mapping(TreeMapping(p, {{W({0, 0}), 2}}), 4);
    REQUIRE_FALSE(r.ok);
    CHECK(r.violations.front().condition == "(i)");
  }
  SUBCASE("digits outside the alphabet are reported") {
    const TreeReport r = validate_tree_mapping(TreeMapping(p, {{W({2}), 0}}), 4);
    REQUIRE_FALSE(r.ok);
    CHECK(r.violations.front().condition == "word");
  }
  SUBCASE("chains of zero extensions end in the default and satisfy (iii)") {
    const TreeMapping ok(p, {{W({1, 0}), -2}, {W({1, 0, 0}), -2}});
    CHECK(validate_tree_mapping(ok, 4).ok);
  }
  SUBCASE("invalid pair is reported") {
    const TreeReport r = validate_tree_mapping(canonical_tau(explicit_pair({4, 5}, {2, 2})), 3);
    REQUIRE_FALSE(r.ok);
    CHECK(r.violations.front().condition == "pair");
  }
  SUBCASE("canonical defaults fit the range whenever b >= 2d") {
    CHECK(validate_tree_mapping(canonical_tau(constant_pair(6, 3)), 5).ok);
    CHECK(validate_tree_mapping(canonical_tau(constant_pair(12, 6)), 5).ok);
  }
}

TEST_CASE("lambda_of_word examples") {
  const ScalePair p = constant_pair(4, 2);
  CHECK(lambda_of_word(canonical_tau(p), W({1, 1})) == 5);
  CHECK(lambda_of_word(canonical_tau(p), W({0, 1})) == 4);
  CHECK(lambda_of_word(TreeMapping(p, {{W({1}), -1}}), W({1})) == -1);
  // Table entries beyond the word length enter through the zero extension.
  CHECK(lambda_of_word(TreeMapping(p, {{W({1, 0}), -2}}), W({1})) == 1 - 2 * 4);
}

TEST_CASE("enumerate_level examples") {
  const ScalePair p = constant_pair(4, 2);
  CHECK(enumerate_level(canonical_tau(p), 2).elements == ints({0, 1, 4, 5}));
  CHECK(enumerate_level(canonical_tau(p), 3).elements == ints({0, 1, 4, 5, 16, 17, 20, 21}));
  CHECK(enumerate_level(TreeMapping(p, {{W({1}), -1}}), 1).elements == ints({-1, 0}));
}

TEST_CASE("budget refusal names the required count") {
  const ScalePair p = constant_pair(4, 2);
  try {
    enumerate_level(canonical_tau(p), 21, 1'000'000);
    FAIL("expected BudgetError");
  } catch (const BudgetError& e) {
    CHECK(e.required() == (std::uint64_t{1} << 21));
    CHECK(std::string(e.what()).find("2097152") != std::string::npos);
  }
}

TEST_CASE("collisions are reported, not merged") {
  const ScalePair p = constant_pair(4, 2);
  const SpectrumLevel ok = enumerate_level(TreeMapping(p, {{W({1, 0}), -2}, {W({0, 1}), -1}}), 2);
  CHECK(ok.collision_count == 0);
  CHECK(ok.elements.size() == 4);

  // tau(1) = 0 breaks condition (ii) and makes lambda(1x) = lambda(0x).
  const SpectrumLevel bad = enumerate_level(TreeMapping(p, {{W({1}), 0}}), 2);
  CHECK(bad.collision_count == 2);
  CHECK(bad.elements == ints({0, 4}));
  REQUIRE(bad.collisions.size() == 2);
  CHECK(bad.collisions[0].value == 0);
  CHECK(bad.collisions[0].first != bad.collisions[0].second);
}

TEST_CASE("canonical levels: cardinality, nesting, range, direct expansion") {
  const std::vector<ScalePair> pairs = {constant_pair(4, 2), constant_pair(9, 3),
                                        constant_pair(6, 3), constant_pair(8, 4),
                                        explicit_pair({6, 8, 4}, {3, 2, 2})};
  for (const auto& p : pairs) {
    const TreeMapping t = canonical_tau(p);
    std::vector<BigInt> previous;
    for (std::size_t L = 1; L <= 6; ++L) {
      const SpectrumLevel l = enumerate_level(t, L);
      CHECK(l.collision_count == 0);
      CHECK(l.elements.size() == *word_count(p, L));
      CHECK(std::includes(l.elements.begin(), l.elements.end(), previous.begin(),
                          previous.end()));
      CHECK(l.contains(0));
      const BigInt r = rho(p, L + 1);
      for (const auto& x : l.elements) {
        CHECK(3 * x >= -2 * r);
        CHECK(2 * x <= r - 1);
      }
      const auto direct = direct_expansion(p, L);
      CHECK(std::vector<BigInt>(direct.begin(), direct.end()) == l.elements);
      previous = l.elements;
    }
  }
}

TEST_CASE("table mappings: nesting, range and injectivity") {
  const ScalePair p = constant_pair(4, 2);
  const TreeMapping t(p, {{W({1}), -1}, {W({1, 1}), -1}, {W({0, 1, 0}), -2}});
  REQUIRE(validate_tree_mapping(t, 6).ok);
  std::vector<BigInt> previous;
  for (std::size_t L = 1; L <= 6; ++L) {
    const SpectrumLevel l = enumerate_level(t, L);
    CHECK(l.collision_count == 0);
    CHECK(l.elements.size() == (std::size_t{1} << L));
    CHECK(std::includes(l.elements.begin(), l.elements.end(), previous.begin(),
                        previous.end()));
    // Tails beyond L may be nonzero, so the range applies to length-L partial sums.
    const BigInt r = rho(p, L + 1);
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << L); ++code) {
      std::vector<Digit> digits;
      for (std::size_t k = 0; k < L; ++k) digits.push_back((code >> k) & 1);
      const Word w(digits);
      BigInt partial = 0;
      for (std::size_t k = 1; k <= L; ++k) partial += t(w.prefix(k)) * rho(p, k);
      CHECK(3 * partial >= -2 * r);
      CHECK(2 * partial <= r - 1);
    }
    previous = l.elements;
  }
}

TEST_CASE("sampling mode is deterministic and draws members") {
  const ScalePair p = constant_pair(4, 2);
  const TreeMapping t = canonical_tau(p);
  const auto a = sample_level(t, 10, 50, 99);
  const auto b = sample_level(t, 10, 50, 99);
  CHECK(a == b);
  const SpectrumLevel full = enumerate_level(t, 10);
  for (const auto& x : a) CHECK(full.contains(x));
  CHECK(sample_level(t, 10, 50, 100) != a);
}

TEST_CASE("check_growth_conditions") {
  SUBCASE("canonical mapping") {
    const GrowthReport g = check_growth_conditions(canonical_tau(constant_pair(4, 2)), 8);
    CHECK(g.sup_sum == 0.0);
    CHECK(g.max_nonzero_count == 0);
  }
  SUBCASE("entry reached by a zero extension") {
    // delta = 1 sees tau(R_2(1 0^inf)) = tau(10) = 2 in its tail.
    const ScalePair p = constant_pair(8, 2);
    const GrowthReport g = check_growth_conditions(TreeMapping(p, {{W({1, 0}), 2}}), 4);
    CHECK(g.sup_sum == doctest::Approx((2.0 / 8.0) * (2.0 / 8.0)));
    CHECK(g.max_nonzero_count == 1);
    REQUIRE(g.sup_word);
    CHECK(*g.sup_word == W({1}));
  }
  SUBCASE("entry ending in a nonzero digit is never in a zero-extension tail") {
    const ScalePair p = constant_pair(8, 2);
    const GrowthReport g = check_growth_conditions(TreeMapping(p, {{W({1, 1}), 3}}), 4);
    CHECK(g.sup_sum == 0.0);
    CHECK(g.max_nonzero_count == 0);
  }
  SUBCASE("tails accumulate over several entries") {
    const ScalePair p = constant_pair(8, 2);
    const TreeMapping t(p, {{W({1, 0}), 2}, {W({1, 0, 0}), -2}});
    const GrowthReport g = check_growth_conditions(t, 4);
    CHECK(g.sup_sum == doctest::Approx(2 * (2.0 / 8.0) * (2.0 / 8.0)));
    CHECK(g.max_nonzero_count == 2);
  }
}
