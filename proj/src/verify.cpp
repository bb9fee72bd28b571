#include "riesz/verify.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "riesz/parallel.hpp"

namespace riesz {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

std::uint64_t inverse_mod_2_64(std::uint64_t odd) {
  std::uint64_t inv = odd;  // correct to 3 bits
  for (int i = 0; i < 5; ++i) inv *= 2 - odd * inv;
  return inv;
}

// Levels needed so that rho_{n} exceeds `magnitude`.
std::size_t levels_covering(const ScalePair& pair, const BigInt& magnitude) {
  BigInt r = 1;
  std::size_t n = 1;
  while (r <= magnitude) {
    r *= pair.b(n);
    ++n;
  }
  return n;
}

}  // namespace

ExactZeroTester::Divisor ExactZeroTester::make(std::uint64_t v) {
  Divisor d;
  d.value = v;
  d.shift = static_cast<unsigned>(std::countr_zero(v));
  const std::uint64_t odd = v >> d.shift;
  d.odd_inverse = inverse_mod_2_64(odd);
  d.limit = std::numeric_limits<std::uint64_t>::max() / odd;
  return d;
}

bool ExactZeroTester::Divisor::divides(std::uint64_t x) const {
  const std::uint64_t mask = shift == 0 ? 0 : ((std::uint64_t{1} << shift) - 1);
  if ((x & mask) != 0) return false;
  return (x >> shift) * odd_inverse <= limit;
}

ExactZeroTester::ExactZeroTester(const ScalePair& pair, std::uint64_t max_magnitude) {
  require_valid(pair, levels_covering(pair, BigInt(max_magnitude)));
  BigInt r = 1;
  for (std::size_t n = 1; r <= max_magnitude; ++n) {
    rho_.push_back(make(static_cast<std::uint64_t>(r)));
    const auto dr = to_uint64(r * pair.d(n));
    d_rho_.push_back(dr ? std::optional<Divisor>(make(*dr)) : std::nullopt);
    r *= pair.b(n);
  }
}

bool ExactZeroTester::is_zero(std::uint64_t magnitude) const {
  if (magnitude == 0) return false;
  std::size_t m = 0;
  while (m + 1 < rho_.size() && rho_[m + 1].divides(magnitude)) ++m;
  const auto& dr = d_rho_[m];
  if (!dr) return true;  // d_m rho_m > 2^64 > magnitude
  return !dr->divides(magnitude);
}

OrthogonalityReport orthogonality_check(std::span<const BigInt> elements, const ScalePair& pair,
                                        const OrthogonalityOptions& options) {
  OrthogonalityReport report;
  report.element_count = elements.size();
  const std::uint64_t n = elements.size();
  if (n > options.max_elements) {
    const std::uint64_t pairs = n * (n - 1) / 2;
    throw BudgetError("orthogonality check of " + std::to_string(n) + " elements needs " +
                          std::to_string(pairs) + " pair tests, over the budget of " +
                          std::to_string(options.max_elements) + " elements",
                      pairs);
  }
  report.pairs_checked = n < 2 ? 0 : n * (n - 1) / 2;
  if (n < 2) return report;

  std::vector<BigInt> sorted(elements.begin(), elements.end());
  std::sort(sorted.begin(), sorted.end());
  const BigInt span = sorted.back() - sorted.front();

  const std::size_t blocks_of = 64;
  const std::size_t blocks = (n + blocks_of - 1) / blocks_of;
  std::vector<std::vector<std::pair<BigInt, BigInt>>> found(blocks);
  std::vector<std::uint64_t> counts(blocks, 0);

  const bool fast = span <= BigInt(std::numeric_limits<std::int64_t>::max()) &&
                    to_int64(sorted.front()) && to_int64(sorted.back());
  if (fast) {
    const ExactZeroTester tester(pair, static_cast<std::uint64_t>(span));
    std::vector<std::int64_t> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<std::int64_t>(sorted[i]);
    parallel_blocks(n, blocks_of, [&](std::size_t b, std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          const auto diff = static_cast<std::uint64_t>(v[j]) - static_cast<std::uint64_t>(v[i]);
          if (!tester.is_zero(diff)) {
            if (++counts[b] <= options.max_reported) found[b].emplace_back(sorted[i], sorted[j]);
          }
        }
      }
    });
  } else {
    require_valid(pair, levels_covering(pair, span));
    parallel_blocks(n, blocks_of, [&](std::size_t b, std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          if (!mu_hat_exact_zero(pair, sorted[j] - sorted[i]).is_zero) {
            if (++counts[b] <= options.max_reported) found[b].emplace_back(sorted[i], sorted[j]);
          }
        }
      }
    });
  }

  for (std::size_t b = 0; b < blocks; ++b) {
    report.violation_count += counts[b];
    for (auto& p : found[b]) {
      if (report.violations.size() < options.max_reported) report.violations.push_back(std::move(p));
    }
  }
  report.pass = report.violation_count == 0;
  return report;
}

OrthogonalityReport orthogonality_check(const SpectrumLevel& level, const ScalePair& pair,
                                        const OrthogonalityOptions& options) {
  OrthogonalityReport report = orthogonality_check(level.elements, pair, options);
  if (level.collision_count > 0) {
    report.pass = false;
    report.violation_count += level.collision_count;
    std::vector<std::pair<BigInt, BigInt>> merged;
    for (const auto& c : level.collisions) {
      if (merged.size() < options.max_reported) merged.emplace_back(c.value, c.value);
    }
    for (auto& p : report.violations) {
      if (merged.size() < options.max_reported) merged.push_back(std::move(p));
    }
    report.violations = std::move(merged);
  }
  return report;
}

namespace {

void require_valid_tree(const TreeMapping& tm, std::size_t depth) {
  const TreeReport tr = validate_tree_mapping(tm, depth);
  if (!tr.ok) {
    const auto& v = tr.violations.front();
    throw ConstraintError("tree mapping violates condition " + v.condition + " at word " +
                          v.word.str() + ": " + v.detail);
  }
}

}  // namespace

PartitionResult partition_identity(const TreeMapping& tm, double xi, std::size_t L,
                                   const CertifiedFilters* filters, std::uint64_t budget) {
  if (L == 0) throw std::invalid_argument("partition identity needs L >= 1");
  require_valid_tree(tm, L);
  const SpectrumLevel level = enumerate_level(tm, L, budget);

  PartitionResult out;
  out.terms = level.elements.size();
  if (filters == nullptr) {
    const RieszProduct product(tm.pair(), L);
    out.sum = deterministic_sum<double>(level.elements.size(), [&](std::size_t i) {
      return std::norm(product.partial(Frequency{xi, level.elements[i]}, L));
    });
  } else {
    const FilterProduct product(*filters, L);
    out.sum = deterministic_sum<double>(level.elements.size(), [&](std::size_t i) {
      return std::norm(product.partial(Frequency{xi, level.elements[i]}, L));
    });
  }
  out.defect = std::abs(out.sum - 1.0);
  return out;
}

std::vector<double> completeness_grid(std::size_t K) {
  if (K == 0) return {0.0};
  std::vector<double> grid(K + 1);
  for (std::size_t k = 0; k <= K; ++k) {
    grid[k] = static_cast<double>(k) / (2.0 * static_cast<double>(K));
  }
  return grid;
}

CompletenessReport completeness_Q(const TreeMapping& tm, std::span<const double> grid,
                                  std::size_t L_max, double tol, std::uint64_t budget) {
  if (L_max == 0) throw std::invalid_argument("completeness needs L_max >= 1");
  require_valid_tree(tm, L_max);
  std::vector<std::vector<BigInt>> levels;
  levels.reserve(L_max);
  for (std::size_t L = 1; L <= L_max; ++L) {
    levels.push_back(enumerate_level(tm, L, budget).elements);
  }
  return completeness_Q(tm.pair(), levels, grid, tol);
}

CompletenessReport completeness_Q(const ScalePair& pair,
                                  const std::vector<std::vector<BigInt>>& levels,
                                  std::span<const double> grid, double tol) {
  if (grid.empty()) throw std::invalid_argument("completeness grid is empty");
  for (double xi : grid) {
    if (!(xi >= 0.0 && xi <= 0.5)) {
      throw std::invalid_argument("grid point " + std::to_string(xi) + " outside [0, 1/2]");
    }
  }
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");

  std::vector<BigInt> all;
  for (const auto& lv : levels) all.insert(all.end(), lv.begin(), lv.end());
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());

  std::vector<std::vector<std::size_t>> positions(levels.size());
  for (std::size_t k = 0; k < levels.size(); ++k) {
    std::vector<BigInt> sorted = levels[k];
    std::sort(sorted.begin(), sorted.end());
    for (const auto& v : sorted) {
      positions[k].push_back(static_cast<std::size_t>(
          std::lower_bound(all.begin(), all.end(), v) - all.begin()));
    }
  }

  const RieszProduct product(pair);
  const std::size_t G = grid.size();
  std::vector<std::vector<CompletenessRow>> per_xi(G);
  parallel_blocks(G, 1, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t g = begin; g < end; ++g) {
      const double xi = grid[g];
      std::vector<double> sq(all.size());
      std::vector<double> err(all.size());
      for (std::size_t i = 0; i < all.size(); ++i) {
        const Certified c = product(Frequency{xi, all[i]}, tol);
        const double mag = std::abs(c.value);
        sq[i] = mag * mag;
        err[i] = 2.0 * c.radius * mag + c.radius * c.radius;
      }
      double previous = -1.0;
      for (std::size_t k = 0; k < levels.size(); ++k) {
        std::vector<double> a, e;
        a.reserve(positions[k].size());
        e.reserve(positions[k].size());
        for (std::size_t p : positions[k]) {
          a.push_back(sq[p]);
          e.push_back(err[p]);
        }
        CompletenessRow row;
        row.xi = xi;
        row.L = k + 1;
        row.Q = pairwise_sum(a);
        const double n_terms = static_cast<double>(a.size());
        row.slack = pairwise_sum(e) + 2.0 * std::log2(n_terms + 1.0) * kEps * row.Q;
        row.monotone_ok = k == 0 || row.Q >= previous - kMonotoneSlack;
        row.bound_ok = row.Q <= 1.0 + row.slack;
        previous = row.Q;
        per_xi[g].push_back(row);
      }
    }
  });

  CompletenessReport report;
  report.L_max = levels.size();
  report.worst_gap = -std::numeric_limits<double>::infinity();
  for (std::size_t g = 0; g < G; ++g) {
    for (const auto& row : per_xi[g]) {
      report.monotone = report.monotone && row.monotone_ok;
      report.bounded = report.bounded && row.bound_ok;
      report.rows.push_back(row);
    }
    if (!per_xi[g].empty()) {
      const double gap = 1.0 - per_xi[g].back().Q;
      if (gap > report.worst_gap) {
        report.worst_gap = gap;
        report.worst_gap_xi = grid[g];
      }
    }
  }
  return report;
}

}  // namespace riesz
