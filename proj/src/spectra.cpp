#include "riesz/spectra.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "riesz/random.hpp"

namespace riesz {

Word Word::prefix(std::size_t k) const {
  if (k > digits_.size()) throw std::out_of_range("prefix longer than word");
  return Word(std::vector<Digit>(digits_.begin(), digits_.begin() + static_cast<long>(k)));
}

Word Word::with(Digit next) const {
  std::vector<Digit> d = digits_;
  d.push_back(next);
  return Word(std::move(d));
}

Word Word::zero_extended(std::size_t extra) const {
  std::vector<Digit> d = digits_;
  d.resize(d.size() + extra, 0);
  return Word(std::move(d));
}

bool Word::all_zero() const {
  return std::all_of(digits_.begin(), digits_.end(), [](Digit x) { return x == 0; });
}

std::string Word::str() const {
  if (digits_.empty()) return "root";
  const bool compact =
      std::all_of(digits_.begin(), digits_.end(), [](Digit x) { return x < 10; });
  std::ostringstream os;
  for (std::size_t k = 0; k < digits_.size(); ++k) {
    if (!compact && k) os << '.';
    os << digits_[k];
  }
  return os.str();
}

bool is_member(const Word& w, const ScalePair& pair) {
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (BigInt(w[k]) >= pair.d(k + 1)) return false;
  }
  return true;
}

TreeMapping::TreeMapping(ScalePair pair, std::map<Word, BigInt> table)
    : pair_(std::move(pair)), table_(std::move(table)) {
  for (const auto& [w, v] : table_) max_len_ = std::max(max_len_, w.size());
}

BigInt TreeMapping::operator()(const Word& w) const {
  if (!table_.empty()) {
    auto it = table_.find(w);
    if (it != table_.end()) return it->second;
  }
  if (w.empty()) return 0;
  return BigInt(w.last());
}

TreeMapping canonical_tau(const ScalePair& pair) { return TreeMapping(pair); }

bool in_condition_ii_range(const ScalePair& pair, std::size_t n, Digit last_digit,
                           const BigInt& value) {
  const BigInt b = pair.b(n);
  const BigInt d = pair.d(n);
  const BigInt half = b / 2;
  if (value < -half || value > b - 1 - half) return false;
  BigInt r = (value - BigInt(last_digit)) % d;
  return r == 0;
}

namespace {

std::string range_text(const ScalePair& pair, std::size_t n, Digit last) {
  const BigInt b = pair.b(n);
  const BigInt half = b / 2;
  std::ostringstream os;
  os << "(" << last << " + " << pair.d(n) << "Z) & {" << -half << ", ..., " << (b - 1 - half)
     << "}";
  return os.str();
}

}  // namespace

TreeReport validate_tree_mapping(const TreeMapping& tm, std::size_t depth) {
  TreeReport report;
  report.depth = depth;
  const ScalePair& pair = tm.pair();
  auto add = [&](std::string cond, Word w, std::string detail) {
    report.ok = false;
    report.violations.push_back({std::move(cond), std::move(w), std::move(detail)});
  };

  const PairReport pr = validate_pair(pair, std::max(depth, tm.max_table_length()));
  if (!pr.ok) {
    add("pair", Word{}, pr.first_violation->constraint + " at n = " +
                            std::to_string(pr.first_violation->level));
    return report;
  }

  for (const auto& [w, v] : tm.table()) {
    if (!is_member(w, pair)) {
      add("word", w, "digit outside Sigma_{d_k}");
      continue;
    }
    if (w.all_zero()) {
      if (v != 0) add("(i)", w, "tau(R_n(0^inf)) must be 0, table gives " + v.str());
      continue;
    }
    if (!in_condition_ii_range(pair, w.size(), w.last(), v)) {
      add("(ii)", w,
          "value " + v.str() + " not in " + range_text(pair, w.size(), w.last()));
    }
  }

  // Canonical defaults: every digit delta_n < d_n must itself be admissible.
  for (std::size_t n = 1; n <= depth; ++n) {
    const BigInt b = pair.b(n);
    const BigInt top = pair.d(n) - 1;
    if (top > b - 1 - b / 2) {
      const auto digit = static_cast<Digit>(top);
      Word w = Word{}.zero_extended(n - 1).with(digit);
      add("(ii)", w, "default value " + top.str() + " not in " + range_text(pair, n, digit));
    }
  }

  // (iii): each table word's zero extension must leave the table or reach 0.
  for (const auto& [w, v] : tm.table()) {
    bool reaches_zero = false;
    for (std::size_t k = 1; k <= tm.max_table_length() + 1 && !reaches_zero; ++k) {
      reaches_zero = tm(w.zero_extended(k)) == 0;
    }
    if (!reaches_zero) add("(iii)", w, "zero extension never maps to 0");
  }
  return report;
}

BigInt lambda_of_word(const TreeMapping& tm, const Word& delta) {
  const ScalePair& pair = tm.pair();
  if (!is_member(delta, pair)) throw ConstraintError("word " + delta.str() + " is not in Sigma_D^*");
  BigInt sum = 0;
  BigInt r = 1;
  for (std::size_t n = 1; n <= delta.size(); ++n) {
    sum += tm(delta.prefix(n)) * r;
    r *= pair.b(n);
  }
  // Zero extensions differ from the default 0 only through table entries.
  for (std::size_t n = delta.size() + 1; n <= tm.max_table_length(); ++n) {
    const BigInt v = tm(delta.zero_extended(n - delta.size()));
    if (v != 0) sum += v * r;
    r *= pair.b(n);
  }
  return sum;
}

bool SpectrumLevel::contains(const BigInt& v) const {
  return std::binary_search(elements.begin(), elements.end(), v);
}

std::optional<std::uint64_t> word_count(const ScalePair& pair, std::size_t L) {
  BigInt c = 1;
  for (std::size_t n = 1; n <= L; ++n) {
    c *= pair.d(n);
    if (!to_uint64(c)) return std::nullopt;
  }
  return static_cast<std::uint64_t>(c);
}

namespace {

Word decode_word(std::uint64_t index, const std::vector<std::uint64_t>& radix) {
  std::vector<Digit> digits(radix.size());
  for (std::size_t k = 0; k < radix.size(); ++k) {
    digits[k] = index % radix[k];
    index /= radix[k];
  }
  return Word(std::move(digits));
}

}  // namespace

SpectrumLevel enumerate_level(const TreeMapping& tm, std::size_t L, std::uint64_t budget) {
  const ScalePair& pair = tm.pair();
  require_valid(pair, std::max<std::size_t>(L, 1));
  const auto count = word_count(pair, L);
  if (!count || *count > budget) {
    const std::uint64_t required = count.value_or(std::numeric_limits<std::uint64_t>::max());
    throw BudgetError("level " + std::to_string(L) + " needs " +
                          (count ? std::to_string(*count) : std::string("more than 2^64")) +
                          " words, over the enumeration budget of " + std::to_string(budget) +
                          "; use sampling mode",
                      required);
  }

  std::vector<std::uint64_t> radix(L);
  std::vector<BigInt> rho(L + 1);
  BigInt r = 1;
  for (std::size_t n = 1; n <= L; ++n) {
    radix[n - 1] = static_cast<std::uint64_t>(pair.d(n));
    rho[n - 1] = r;
    r *= pair.b(n);
  }
  rho[L] = r;

  // Tail contribution of delta 0^inf beyond level L, only through the table.
  const bool has_table = !tm.table().empty();
  std::vector<BigInt> tail_rho;
  {
    BigInt rr = r;
    for (std::size_t n = L + 1; n <= tm.max_table_length(); ++n) {
      tail_rho.push_back(rr);
      rr *= pair.b(n);
    }
  }

  std::vector<std::pair<BigInt, std::uint64_t>> values;
  values.reserve(*count);

  // Odometer over words; index k has digit delta_{n} = (k / prod_{j<n} d_j) mod d_n.
  std::vector<Digit> digits(L, 0);
  std::vector<BigInt> partial(L + 1, 0);  // partial[n] = sum_{k<=n} tau(R_k) rho_k
  auto tau_at = [&](std::size_t n) -> BigInt {
    if (!has_table) return BigInt(digits[n - 1]);
    return tm(Word(std::vector<Digit>(digits.begin(), digits.begin() + static_cast<long>(n))));
  };
  for (std::size_t n = 1; n <= L; ++n) partial[n] = partial[n - 1] + tau_at(n) * rho[n - 1];

  for (std::uint64_t index = 0; index < *count; ++index) {
    if (index > 0) {
      // Increment the odometer from the first digit.
      for (std::size_t n = 0; n < L; ++n) {
        if (++digits[n] < radix[n]) break;
        digits[n] = 0;
      }
      // Every prefix changed, so rebuild the running sums.
      for (std::size_t k = 1; k <= L; ++k) partial[k] = partial[k - 1] + tau_at(k) * rho[k - 1];
    }
    BigInt lambda = partial[L];
    if (has_table) {
      Word w(digits);
      for (std::size_t j = 0; j < tail_rho.size(); ++j) {
        w = w.with(0);
        const BigInt v = tm(w);
        if (v != 0) lambda += v * tail_rho[j];
      }
    }
    values.emplace_back(std::move(lambda), index);
  }

  std::sort(values.begin(), values.end());
  SpectrumLevel level;
  level.depth = L;
  level.word_count = *count;
  level.elements.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0 && values[i].first == values[i - 1].first) {
      ++level.collision_count;
      if (level.collisions.size() < kMaxReportedCollisions) {
        level.collisions.push_back({values[i].first, decode_word(values[i - 1].second, radix),
                                    decode_word(values[i].second, radix)});
      }
      continue;
    }
    level.elements.push_back(values[i].first);
  }
  return level;
}

std::vector<BigInt> sample_level(const TreeMapping& tm, std::size_t L, std::size_t count,
                                 std::uint64_t seed) {
  const ScalePair& pair = tm.pair();
  require_valid(pair, std::max<std::size_t>(L, 1));
  std::vector<std::uint64_t> radix(L);
  for (std::size_t n = 1; n <= L; ++n) {
    const auto d = to_uint64(pair.d(n));
    if (!d) throw ConstraintError("d_n exceeds 64 bits");
    radix[n - 1] = *d;
  }
  std::vector<BigInt> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::vector<Digit> digits(L);
    for (std::size_t n = 0; n < L; ++n) digits[n] = counter_uniform(seed, i, n, radix[n]);
    out.push_back(lambda_of_word(tm, Word(std::move(digits))));
  }
  return out;
}

GrowthReport check_growth_conditions(const TreeMapping& tm, std::size_t depth) {
  const ScalePair& pair = tm.pair();
  struct Acc {
    long double sum = 0.0L;
    std::uint64_t count = 0;
  };
  std::map<Word, Acc> per_word;
  for (const auto& [w, v] : tm.table()) {
    if (v == 0 || w.empty()) continue;
    const std::size_t m = w.size();
    const long double ratio =
        to_long_double(BigInt(boost::multiprecision::abs(v))) / to_long_double(pair.b(m));
    // delta = R_n(w) sees tau(w) in its zero-extension tail iff w = delta 0^{m-n}.
    for (std::size_t n = m - 1; n >= 1; --n) {
      if (w[n] != 0) break;
      if (n <= depth) {
        Acc& acc = per_word[w.prefix(n)];
        acc.sum += ratio * ratio;
        acc.count += 1;
      }
    }
  }
  GrowthReport report;
  for (const auto& [w, acc] : per_word) {
    if (static_cast<double>(acc.sum) > report.sup_sum) {
      report.sup_sum = static_cast<double>(acc.sum);
      report.sup_word = w;
    }
    report.max_nonzero_count = std::max(report.max_nonzero_count, acc.count);
  }
  return report;
}

}  // namespace riesz
