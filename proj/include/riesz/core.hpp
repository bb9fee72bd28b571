#pragma once

// Scale-sequence pairs (B, D) and the derived scales rho_n.
//
// A pair is an infinite object: an explicit finite prefix of (b_n, d_n)
// values followed by a generator rule that extends it to every n. All
// scales are exact integers.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "riesz/bigint.hpp"

namespace riesz {

// Raised for constraint violations in constructors and for invalid inputs.
class ConstraintError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class GrowthProfile {
  kPowersOfTwo,         // d_n = 2^n, b_n = 2^{e_n}
  kSquaredPowersOfTwo,  // d_n = 2^{n^2}; faster convergence of the cumulative ratios
};

class ScalePair {
 public:
  enum class Rule {
    kConstant,    // (b_n, d_n) = (b, d) for all n
    kRepeatLast,  // explicit prefix, then the last explicit entry repeated
    kAlpha,       // dimension-targeting powers of two
  };

  // b_n and d_n for n >= 1.
  BigInt b(std::size_t n) const;
  BigInt d(std::size_t n) const;

  Rule rule() const { return rule_; }
  std::size_t prefix_length() const { return b_.size(); }
  std::optional<double> alpha() const { return alpha_; }
  GrowthProfile profile() const { return profile_; }

  // True when (b_n, d_n) is constant for every n >= first_constant_level().
  bool eventually_constant() const { return rule_ != Rule::kAlpha; }
  std::size_t first_constant_level() const;

  std::string describe() const;

  friend ScalePair constant_pair(const BigInt& b, const BigInt& d);
  friend ScalePair explicit_pair(std::vector<BigInt> b, std::vector<BigInt> d);
  friend ScalePair dimension_targeting_pair(double alpha, GrowthProfile profile);

 private:
  ScalePair() = default;

  Rule rule_ = Rule::kConstant;
  std::vector<BigInt> b_;
  std::vector<BigInt> d_;
  std::optional<double> alpha_;
  GrowthProfile profile_ = GrowthProfile::kPowersOfTwo;
};

// Rejects 1 < d < b, d | b, b/d >= 2 violations with a message naming the
// failed inequality.
ScalePair constant_pair(const BigInt& b, const BigInt& d);

// No validation: use validate_pair. Beyond the prefix the last entry repeats.
ScalePair explicit_pair(std::vector<BigInt> b, std::vector<BigInt> d);

// kPowersOfTwo: d_n = 2^n and b_n = 2^{max(n+1, ceil(n/alpha))}; alpha = 0 uses
// b_n = 2^{max(n+1, n^2)}.
// kSquaredPowersOfTwo: d_n = 2^{n^2} and b_n = 2^{max(n^2+1, ceil(n^2/alpha))};
// alpha = 0 uses d_n = 2^n, b_n = 2^{max(n+1, n^3)}.
ScalePair dimension_targeting_pair(double alpha,
                                   GrowthProfile profile = GrowthProfile::kPowersOfTwo);

// Exponents k_n, e_n with d_n = 2^{k_n}, b_n = 2^{e_n}.
std::size_t alpha_exponent(double alpha, std::size_t n,
                           GrowthProfile profile = GrowthProfile::kPowersOfTwo);
std::size_t alpha_digit_exponent(double alpha, std::size_t n,
                                 GrowthProfile profile = GrowthProfile::kPowersOfTwo);

// rho_n = prod_{j<n} b_j; rho(pair, 1) == 1.
BigInt rho(const ScalePair& pair, std::size_t n);

struct PairViolation {
  std::size_t level = 0;
  std::string constraint;  // e.g. "d_n < b_n"
  std::string detail;
};

struct PairReport {
  bool ok = true;
  std::size_t depth = 0;
  std::optional<PairViolation> first_violation;
};

PairReport validate_pair(const ScalePair& pair, std::size_t depth);

// Throws ConstraintError when validate_pair fails at this depth.
void require_valid(const ScalePair& pair, std::size_t depth);

// Exact per-level data for levels 1..depth.
struct Level {
  std::size_t n = 0;
  BigInt b;
  BigInt d;
  BigInt rho;    // rho_n
  BigInt d_rho;  // d_n * rho_n
};

class ScaleTable {
 public:
  ScaleTable(const ScalePair& pair, std::size_t depth);

  std::size_t depth() const { return levels_.size(); }
  const Level& level(std::size_t n) const { return levels_.at(n - 1); }
  const BigInt& rho(std::size_t n) const;  // valid for n <= depth + 1
  const ScalePair& pair() const { return pair_; }

 private:
  ScalePair pair_;
  std::vector<Level> levels_;
  BigInt rho_next_;
};

}  // namespace riesz
