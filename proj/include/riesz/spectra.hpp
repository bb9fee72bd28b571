#pragma once

// Words of the D-adic tree, maximal tree mappings, and the spectrum levels
// Lambda_L = { sum_k tau(R_k(delta 0^inf)) rho_k : delta in Sigma_D^L }.
//
// A tree mapping is stored as a finite deviation table over the canonical
// rule tau(delta_1 ... delta_n) = delta_n.

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "riesz/bigint.hpp"
#include "riesz/core.hpp"

namespace riesz {

using Digit = std::uint64_t;

class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Digit> digits) : digits_(std::move(digits)) {}

  std::size_t size() const { return digits_.size(); }
  bool empty() const { return digits_.empty(); }
  Digit operator[](std::size_t k) const { return digits_[k]; }  // 0-based
  Digit last() const { return digits_.back(); }
  const std::vector<Digit>& digits() const { return digits_; }

  // R_k: the first k digits.
  Word prefix(std::size_t k) const;
  Word with(Digit next) const;
  Word zero_extended(std::size_t extra) const;
  bool all_zero() const;
  std::string str() const;

  auto operator<=>(const Word&) const = default;

 private:
  std::vector<Digit> digits_;
};

// True when delta_k < d_k for every k.
bool is_member(const Word& w, const ScalePair& pair);

class TreeMapping {
 public:
  explicit TreeMapping(ScalePair pair, std::map<Word, BigInt> table = {});

  // tau(w); the root maps to 0.
  BigInt operator()(const Word& w) const;

  const ScalePair& pair() const { return pair_; }
  const std::map<Word, BigInt>& table() const { return table_; }
  std::size_t max_table_length() const { return max_len_; }

 private:
  ScalePair pair_;
  std::map<Word, BigInt> table_;
  std::size_t max_len_ = 0;
};

// tau_{B,D}(delta_1 ... delta_n) = delta_n.
TreeMapping canonical_tau(const ScalePair& pair);

struct TreeViolation {
  std::string condition;  // "(i)", "(ii)", "(iii)", "word" or "pair"
  Word word;
  std::string detail;
};

struct TreeReport {
  bool ok = true;
  std::size_t depth = 0;
  std::vector<TreeViolation> violations;
};

// Allowed values for tau at level n: (delta_n + d_n Z) intersected with
// {-floor(b_n/2), ..., b_n - 1 - floor(b_n/2)}.
bool in_condition_ii_range(const ScalePair& pair, std::size_t n, Digit last_digit,
                           const BigInt& value);

TreeReport validate_tree_mapping(const TreeMapping& tm, std::size_t depth);

// lambda(delta) = sum_n tau(R_n(delta 0^inf)) rho_n, exactly.
BigInt lambda_of_word(const TreeMapping& tm, const Word& delta);

struct Collision {
  BigInt value;
  Word first;
  Word second;
};

struct SpectrumLevel {
  std::size_t depth = 0;
  std::uint64_t word_count = 0;
  std::vector<BigInt> elements;  // sorted, deduplicated
  std::uint64_t collision_count = 0;
  std::vector<Collision> collisions;  // the first kMaxReportedCollisions

  bool contains(const BigInt& v) const;
};

class BudgetError : public std::runtime_error {
 public:
  BudgetError(const std::string& what, std::uint64_t required)
      : std::runtime_error(what), required_(required) {}
  std::uint64_t required() const { return required_; }

 private:
  std::uint64_t required_;
};

inline constexpr std::uint64_t kDefaultEnumerationBudget = 1'000'000;
inline constexpr std::size_t kMaxReportedCollisions = 1000;

// prod_{n<=L} d_n, or nullopt if it overflows 64 bits.
std::optional<std::uint64_t> word_count(const ScalePair& pair, std::size_t L);

SpectrumLevel enumerate_level(const TreeMapping& tm, std::size_t L,
                              std::uint64_t budget = kDefaultEnumerationBudget);

// Sampling mode for levels beyond the enumeration budget: lambda of
// `count` uniformly random words of length L, deterministic in `seed`.
std::vector<BigInt> sample_level(const TreeMapping& tm, std::size_t L, std::size_t count,
                                 std::uint64_t seed);

struct GrowthReport {
  double sup_sum = 0.0;            // sup over words of sum_j (|tau(R_{n+j}(delta 0^inf))| / b_{n+j})^2
  std::uint64_t max_nonzero_count = 0;  // sup over words of #{j >= 1 : tau(R_{n+j}(delta 0^inf)) != 0}
  std::optional<Word> sup_word;
};

GrowthReport check_growth_conditions(const TreeMapping& tm, std::size_t depth);

}  // namespace riesz
