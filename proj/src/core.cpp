#include "riesz/core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace riesz {

namespace {

BigInt pow2(std::size_t e) {
  BigInt v = 1;
  v <<= e;
  return v;
}

std::optional<PairViolation> check_level(std::size_t n, const BigInt& b, const BigInt& d) {
  std::ostringstream detail;
  detail << "b_" << n << " = " << b << ", d_" << n << " = " << d;
  if (d <= 1) return PairViolation{n, "1 < d_n", detail.str()};
  if (d >= b) return PairViolation{n, "d_n < b_n", detail.str()};
  if (b % d != 0) return PairViolation{n, "b_n/d_n in Z", detail.str()};
  if (b / d < 2) return PairViolation{n, "b_n/d_n >= 2", detail.str()};
  return std::nullopt;
}

}  // namespace

BigInt ScalePair::b(std::size_t n) const {
  if (n == 0) throw std::out_of_range("levels start at n = 1");
  if (rule_ == Rule::kAlpha) return pow2(alpha_exponent(*alpha_, n, profile_));
  return n <= b_.size() ? b_[n - 1] : b_.back();
}

BigInt ScalePair::d(std::size_t n) const {
  if (n == 0) throw std::out_of_range("levels start at n = 1");
  if (rule_ == Rule::kAlpha) return pow2(alpha_digit_exponent(*alpha_, n, profile_));
  return n <= d_.size() ? d_[n - 1] : d_.back();
}

std::size_t ScalePair::first_constant_level() const {
  if (rule_ == Rule::kAlpha) throw std::logic_error("dimension-targeting pairs never become constant");
  return b_.size();
}

std::string ScalePair::describe() const {
  std::ostringstream os;
  switch (rule_) {
    case Rule::kConstant:
      os << "constant(b=" << b_[0] << ", d=" << d_[0] << ")";
      break;
    case Rule::kRepeatLast:
      os << "explicit(b=[";
      for (std::size_t i = 0; i < b_.size(); ++i) os << (i ? "," : "") << b_[i];
      os << "], d=[";
      for (std::size_t i = 0; i < d_.size(); ++i) os << (i ? "," : "") << d_[i];
      os << "])";
      break;
    case Rule::kAlpha:
      os << "alpha(" << *alpha_ << ", "
         << (profile_ == GrowthProfile::kPowersOfTwo ? "pow2" : "pow2sq") << ")";
      break;
  }
  return os.str();
}

ScalePair constant_pair(const BigInt& b, const BigInt& d) {
  if (auto v = check_level(1, b, d)) {
    throw ConstraintError("constant pair (" + b.str() + ", " + d.str() + ") violates " +
                          v->constraint);
  }
  ScalePair p;
  p.rule_ = ScalePair::Rule::kConstant;
  p.b_ = {b};
  p.d_ = {d};
  return p;
}

ScalePair explicit_pair(std::vector<BigInt> b, std::vector<BigInt> d) {
  if (b.empty() || b.size() != d.size()) {
    throw ConstraintError("explicit pair needs equally long, nonempty b and d prefixes");
  }
  ScalePair p;
  p.rule_ = ScalePair::Rule::kRepeatLast;
  p.b_ = std::move(b);
  p.d_ = std::move(d);
  return p;
}

std::size_t alpha_digit_exponent(double alpha, std::size_t n, GrowthProfile profile) {
  if (profile == GrowthProfile::kPowersOfTwo || alpha == 0.0) return n;
  return n * n;
}

std::size_t alpha_exponent(double alpha, std::size_t n, GrowthProfile profile) {
  const std::size_t k = alpha_digit_exponent(alpha, n, profile);
  if (alpha == 0.0) {
    return std::max(k + 1, profile == GrowthProfile::kPowersOfTwo ? n * n : n * n * n);
  }
  const double ratio = static_cast<double>(k) / alpha;
  // Snap ratios that are integers up to roundoff (alpha = 1/3 given as 0.333...).
  const double nearest = std::round(ratio);
  const double ceil_ratio =
      std::abs(ratio - nearest) <= 1e-9 * ratio ? nearest : std::ceil(ratio);
  return std::max(k + 1, static_cast<std::size_t>(ceil_ratio));
}

ScalePair dimension_targeting_pair(double alpha, GrowthProfile profile) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw ConstraintError("alpha must lie in [0, 1]");
  }
  ScalePair p;
  p.rule_ = ScalePair::Rule::kAlpha;
  p.alpha_ = alpha;
  p.profile_ = profile;
  return p;
}

BigInt rho(const ScalePair& pair, std::size_t n) {
  if (n == 0) throw std::out_of_range("rho is defined for n >= 1");
  BigInt r = 1;
  for (std::size_t j = 1; j < n; ++j) r *= pair.b(j);
  return r;
}

PairReport validate_pair(const ScalePair& pair, std::size_t depth) {
  PairReport report;
  report.depth = depth;
  for (std::size_t n = 1; n <= depth; ++n) {
    if (auto v = check_level(n, pair.b(n), pair.d(n))) {
      report.ok = false;
      report.first_violation = std::move(v);
      break;
    }
  }
  return report;
}

void require_valid(const ScalePair& pair, std::size_t depth) {
  const PairReport report = validate_pair(pair, depth);
  if (!report.ok) {
    const auto& v = *report.first_violation;
    throw ConstraintError("pair " + pair.describe() + " violates " + v.constraint +
                          " at n = " + std::to_string(v.level) + " (" + v.detail + ")");
  }
}

ScaleTable::ScaleTable(const ScalePair& pair, std::size_t depth) : pair_(pair) {
  levels_.reserve(depth);
  BigInt r = 1;
  for (std::size_t n = 1; n <= depth; ++n) {
    Level lv;
    lv.n = n;
    lv.b = pair.b(n);
    lv.d = pair.d(n);
    lv.rho = r;
    lv.d_rho = lv.d * r;
    r *= lv.b;
    levels_.push_back(std::move(lv));
  }
  rho_next_ = r;
}

const BigInt& ScaleTable::rho(std::size_t n) const {
  if (n == levels_.size() + 1) return rho_next_;
  return levels_.at(n - 1).rho;
}

}  // namespace riesz
