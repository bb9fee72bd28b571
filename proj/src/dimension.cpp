#include "riesz/dimension.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <tuple>
#include <stdexcept>

#include "riesz/parallel.hpp"

namespace riesz {

namespace {

namespace mp = boost::multiprecision;

// a = m * 2^e with m in [2^62, 2^63) kept as long double.
long double mantissa(const BigInt& a, long& exp2) {
  const std::size_t bits = mp::msb(a) + 1;
  const std::size_t shift = bits > 63 ? bits - 63 : 0;
  exp2 = static_cast<long>(shift);
  return static_cast<long double>(static_cast<std::uint64_t>(a >> shift));
}

long double quotient_ld(const BigInt& a, const BigInt& b) {
  long ea = 0, eb = 0;
  const long double ma = mantissa(a, ea);
  const long double mb = mantissa(b, eb);
  return std::ldexp(ma / mb, static_cast<int>(ea - eb));
}

long double log_quotient(const BigInt& a, const BigInt& b) {
  long ea = 0, eb = 0;
  const long double ma = mantissa(a, ea);
  const long double mb = mantissa(b, eb);
  return std::log(ma / mb) + static_cast<long double>(ea - eb) * std::log(2.0L);
}

BigInt floor_div(const Rational& q) {
  const BigInt num = mp::numerator(q);
  const BigInt den = mp::denominator(q);
  BigInt f = num / den;
  if (num < 0 && f * den != num) f -= 1;
  return f;
}

BigInt ceil_div(const Rational& q) {
  const BigInt num = mp::numerator(q);
  const BigInt den = mp::denominator(q);
  BigInt c = num / den;
  if (num > 0 && c * den != num) c += 1;
  return c;
}

struct LevelGeometry {
  Rational child_length;
  Rational step;  // child length + gap
  Rational gap;
};

LevelGeometry geometry(const Rational& parent_length, const Rational& r, const BigInt& d) {
  LevelGeometry g;
  g.child_length = r * parent_length;
  g.gap = (parent_length - Rational(d) * g.child_length) / Rational(d - 1);
  g.step = g.child_length + g.gap;
  return g;
}

void require_budget(const ScalePair& pair, std::size_t depth, std::uint64_t budget) {
  const auto count = word_count(pair, depth);
  if (!count || *count > budget) {
    const std::uint64_t required = count.value_or(std::numeric_limits<std::uint64_t>::max());
    throw BudgetError("depth " + std::to_string(depth) + " needs " +
                          (count ? std::to_string(*count) : std::string("more than 2^64")) +
                          " intervals, over the budget of " + std::to_string(budget),
                      required);
  }
}

}  // namespace

GapSums gap_sums(const ScalePair& pair, std::size_t N) {
  if (N == 0) throw std::invalid_argument("gap ratios need N >= 1");
  GapSums out;
  out.exact = pair.eventually_constant();

  std::size_t M = N + 1;
  std::vector<BigInt> rho{1};  // rho[j-1] = rho_j
  auto extend_to = [&](std::size_t n) {
    while (rho.size() < n) rho.push_back(rho.back() * pair.b(rho.size()));
  };
  if (out.exact) {
    M = std::max(M, pair.first_constant_level());
    extend_to(M + 1);
  } else {
    extend_to(N + 2);
    const BigInt target = rho[N + 1] << 64;
    extend_to(M + 1);
    while (rho[M] < target) {
      ++M;
      extend_to(M + 1);
    }
  }
  require_valid(pair, M + 1);
  out.truncation_level = M;

  BigInt factor = 1;
  BigInt tail = 0;
  if (out.exact) {
    const BigInt b = pair.b(M + 1);
    const BigInt d = pair.d(M + 1);
    factor = d * (b - 1);
    tail = (d - 1) * b;
  }
  out.scale = rho[M] * factor;

  // Running suffix sums from level M down; P = rho_{M+1} / rho_{j+1}.
  std::vector<BigInt> W(M + 1);
  BigInt P = 1;
  BigInt acc = tail;
  for (std::size_t j = M; j >= 1; --j) {
    const BigInt d = pair.d(j);
    acc += (d - 1) * (pair.b(j) / d) * P * factor;
    W[j - 1] = acc;
    P *= pair.b(j);
  }
  W[M] = tail;
  W.resize(N + 1);
  out.W = std::move(W);

  if (!out.exact) {
    // Tail in W units is below sum_{k>=0} 4^{-k} < 2 for both S_n and S_{n+1}.
    long e = 0;
    const long double m = mantissa(out.W[N], e);
    out.relative_error = static_cast<double>(std::ldexp(4.0L / m, static_cast<int>(-e)));
  }
  return out;
}

GapRatios gap_ratios(const ScalePair& pair, std::size_t N) {
  const GapSums s = gap_sums(pair, N);
  GapRatios out;
  out.exact = s.exact;
  out.relative_error = s.relative_error;
  out.truncation_level = s.truncation_level;
  for (std::size_t n = 1; n <= N; ++n) {
    const BigInt& Wn = s.W[n - 1];
    const BigInt& Wn1 = s.W[n];
    out.r.push_back(quotient_ld(Wn1, Wn));
    out.log_inv_r.push_back(log_quotient(Wn, Wn1));
    if (Wn1 * pair.d(n) > Wn && out.rd_ok) {
      out.rd_ok = false;
      out.first_rd_failure = n;
    }
  }
  return out;
}

std::vector<Rational> gap_ratios_exact(const ScalePair& pair, std::size_t N) {
  const GapSums s = gap_sums(pair, N);
  std::vector<Rational> r;
  r.reserve(N);
  for (std::size_t n = 1; n <= N; ++n) r.emplace_back(s.W[n], s.W[n - 1]);
  return r;
}

namespace {

// Families for depths 0..depth sharing one set of gap ratios.
std::vector<std::vector<Interval>> build_levels(const ScalePair& pair, std::size_t depth,
                                                const std::vector<Rational>& r) {
  std::vector<std::vector<Interval>> levels;
  levels.push_back({{Word{}, Rational(0), Rational(1)}});
  Rational length = 1;
  for (std::size_t n = 1; n <= depth; ++n) {
    const BigInt d = pair.d(n);
    const auto dn = static_cast<std::uint64_t>(d);
    const LevelGeometry g = geometry(length, r[n - 1], d);
    std::vector<Interval> next;
    next.reserve(levels.back().size() * dn);
    for (const auto& parent : levels.back()) {
      Rational left = parent.left;
      for (std::uint64_t k = 0; k < dn; ++k) {
        next.push_back({parent.word.with(k), left, left + g.child_length});
        left += g.step;
      }
    }
    levels.push_back(std::move(next));
    length = g.child_length;
  }
  return levels;
}

}  // namespace

IntervalFamily build_intervals(const ScalePair& pair, std::size_t depth, std::uint64_t budget) {
  require_budget(pair, depth, budget);
  const GapSums s = gap_sums(pair, std::max<std::size_t>(depth, 1));

  IntervalFamily family;
  family.depth = depth;
  family.rescale = Rational(s.W[0], s.scale);
  for (std::size_t n = 1; n <= depth; ++n) family.r.emplace_back(s.W[n], s.W[n - 1]);
  family.intervals = std::move(build_levels(pair, depth, family.r).back());
  return family;
}

IntervalCheck check_interval_family(const ScalePair& pair, std::size_t depth,
                                    std::uint64_t budget) {
  IntervalCheck out;
  auto fail = [&](std::size_t n, const Word& w, const std::string& what) {
    out.ok = false;
    out.problem = "depth " + std::to_string(n) + ", parent " + w.str() + ": " + what;
  };

  const GapRatios gr = gap_ratios(pair, std::max<std::size_t>(depth, 1));
  if (!gr.rd_ok) {
    out.ok = false;
    out.problem = "r_n d_n > 1 at n = " + std::to_string(gr.first_rd_failure);
    return out;
  }

  require_budget(pair, depth, budget);
  const std::vector<Rational> r = gap_ratios_exact(pair, std::max<std::size_t>(depth, 1));
  const auto levels = build_levels(pair, depth, r);

  // Check each level against its parent level from the endpoints alone.
  Rational expected_length = 1;
  for (std::size_t n = 1; n <= depth && out.ok; ++n) {
    const auto& parents = levels[n - 1];
    const auto& children = levels[n];
    expected_length *= r[n - 1];
    const auto dn = static_cast<std::size_t>(pair.d(n));
    if (children.size() != parents.size() * dn) {
      fail(n, Word{}, "wrong number of children");
      break;
    }
    for (std::size_t p = 0; p < parents.size() && out.ok; ++p) {
      const Interval& J = parents[p];
      const Rational parent_len = J.right - J.left;
      std::optional<Rational> gap;
      for (std::size_t k = 0; k < dn; ++k) {
        const Interval& c = children[p * dn + k];
        const Rational len = c.right - c.left;
        if (len != r[n - 1] * parent_len) {
          fail(n, J.word, "child length");
          return out;
        }
        if (len != expected_length) {
          fail(n, J.word, "length != prod r_j");
          return out;
        }
        if (c.left < J.left || c.right > J.right) {
          fail(n, J.word, "not contained");
          return out;
        }
        if (k > 0) {
          const Rational g = c.left - children[p * dn + k - 1].right;
          if (g <= 0) {
          fail(n, J.word, "children overlap");
          return out;
        }
          if (gap && *gap != g) {
          fail(n, J.word, "unequal gaps");
          return out;
        }
          gap = g;
        }
      }
      if (children[p * dn].left != J.left) fail(n, J.word, "left endpoint not pinned");
      if (children[p * dn + dn - 1].right != J.right) {
        fail(n, J.word, "right endpoint not pinned");
      }
    }
  }
  return out;
}

HausdorffReport hausdorff_dim_formula(const ScalePair& pair, std::size_t N) {
  if (N < 2) throw std::invalid_argument("dimension formula needs N >= 2");
  const GapRatios gr = gap_ratios(pair, N);
  HausdorffReport out;
  long double num = 0.0L, den = 0.0L;
  for (std::size_t n = 1; n <= N; ++n) {
    num += log_abs(pair.d(n));
    den += gr.log_inv_r[n - 1];
    out.ratios.push_back(num / den);
  }
  out.value = out.ratios.back();
  const std::size_t start = (N + 1) / 2;
  out.trailing_inf = *std::min_element(out.ratios.begin() + static_cast<long>(start - 1),
                                       out.ratios.end());
  return out;
}

std::pair<double, double> fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("line fit needs at least two points");
  }
  const auto n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("line fit needs distinct abscissae");
  const double slope = sxy / sxx;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e = y[i] - (my + slope * (x[i] - mx));
    ss += e * e;
  }
  return {slope, std::sqrt(ss / n)};
}

BoxCountingReport box_counting_dim(const ScalePair& pair, std::size_t depth,
                                   std::uint64_t budget) {
  if (depth < 2) throw std::invalid_argument("box counting needs depth >= 2 (too few levels)");
  const IntervalFamily family = build_intervals(pair, depth, budget);
  BoxCountingReport out;
  out.intervals = family.intervals.size();

  Rational side = 1;
  long double log_inv = 0.0L;
  for (std::size_t n = 1; n <= depth; ++n) {
    side *= family.r[n - 1];
    log_inv -= std::log(to_long_double(family.r[n - 1]));
    // Intervals are sorted and disjoint, so box ranges arrive in order.
    BigInt count = 0;
    std::optional<BigInt> last;
    for (const auto& J : family.intervals) {
      BigInt lo = floor_div(J.left / side);
      const BigInt hi = ceil_div(J.right / side) - 1;
      if (last && lo <= *last) lo = *last + 1;
      if (hi >= lo) {
        count += hi - lo + 1;
        last = hi;
      }
    }
    out.log_inv_size.push_back(static_cast<double>(log_inv));
    out.log_count.push_back(static_cast<double>(log_abs(count)));
  }
  std::tie(out.slope, out.residual) = fit_line(out.log_inv_size, out.log_count);
  return out;
}

std::vector<double> geometric_grid(double lo, double hi, std::size_t points) {
  if (!(lo > 0.0) || !(hi > lo) || !std::isfinite(hi) || points < 2) {
    throw std::invalid_argument("degenerate window grid");
  }
  std::vector<double> h(points);
  const double ratio = std::log(hi / lo) / static_cast<double>(points - 1);
  for (std::size_t k = 0; k < points; ++k) h[k] = lo * std::exp(ratio * static_cast<double>(k));
  h.back() = hi;
  return h;
}

namespace {

std::vector<long double> offsets(std::span<const BigInt> elements) {
  std::vector<BigInt> sorted(elements.begin(), elements.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<long double> v;
  v.reserve(sorted.size());
  for (const auto& x : sorted) v.push_back(to_long_double(BigInt(x - sorted.front())));
  return v;
}

}  // namespace

std::vector<double> default_window_grid(std::span<const BigInt> elements) {
  const auto v = offsets(elements);
  long double gap = 0.0L;
  for (std::size_t i = 1; i < v.size(); ++i) {
    const long double g = v[i] - v[i - 1];
    if (g > 0 && (gap == 0 || g < gap)) gap = g;
  }
  const double lo = gap > 0 ? static_cast<double>(gap) : 1.0;
  const double span = v.empty() ? 0.0 : static_cast<double>(v.back());
  return geometric_grid(lo, std::max(span / 4.0, 2.0 * lo), 24);
}

BeurlingReport beurling_upper_dim(std::span<const BigInt> elements, std::span<const double> h) {
  if (elements.empty()) throw std::invalid_argument("Beurling estimate needs a nonempty set");
  if (h.size() < 2) throw std::invalid_argument("degenerate window grid");
  for (std::size_t k = 0; k < h.size(); ++k) {
    if (!(h[k] > 0.0) || !std::isfinite(h[k]) || (k > 0 && !(h[k] > h[k - 1]))) {
      throw std::invalid_argument("degenerate window grid");
    }
  }
  const auto v = offsets(elements);
  BeurlingReport out;
  out.h.assign(h.begin(), h.end());
  out.sup_count.assign(h.size(), 0);
  parallel_blocks(h.size(), 1, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      const long double w = h[k];
      std::size_t lo = 0, hi = 0;
      std::uint64_t best = 0;
      for (std::size_t i = 0; i < v.size(); ++i) {
        while (v[lo] < v[i] - w) ++lo;
        if (hi < i) hi = i;
        while (hi < v.size() && v[hi] <= v[i] + w) ++hi;
        best = std::max<std::uint64_t>(best, hi - lo);
      }
      out.sup_count[k] = best;
    }
  });
  std::vector<double> x, y;
  for (std::size_t k = 0; k < h.size(); ++k) {
    x.push_back(std::log(h[k]));
    y.push_back(std::log(static_cast<double>(out.sup_count[k])));
  }
  out.slope = fit_line(x, y).first;
  return out;
}

BeurlingReport beurling_upper_dim(const SpectrumLevel& level) {
  const auto grid = default_window_grid(level.elements);
  return beurling_upper_dim(level.elements, grid);
}

BeurlingHausdorffReport beurling_vs_hausdorff(const TreeMapping& tm, std::size_t L,
                                              double slack) {
  const SpectrumLevel level = enumerate_level(tm, L);
  BeurlingHausdorffReport out;
  out.slack = slack;
  out.beurling = beurling_upper_dim(level).slope;
  out.hausdorff =
      static_cast<double>(hausdorff_dim_formula(tm.pair(), std::max<std::size_t>(2 * L, 40))
                              .trailing_inf);
  out.pass = out.beurling <= out.hausdorff + slack;
  return out;
}

}  // namespace riesz
