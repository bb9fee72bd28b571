#include "riesz/sampling.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "riesz/parallel.hpp"
#include "riesz/random.hpp"

namespace riesz {

namespace {

struct Weights {
  std::vector<std::uint64_t> d;
  std::vector<long double> inv_d_rho;  // 1 / (d_n rho_n)
  BigInt rho_next;                     // rho_{depth+1}
};

Weights weights(const ScalePair& pair, std::size_t depth) {
  require_valid(pair, std::max<std::size_t>(depth, 1));
  Weights w;
  BigInt r = 1;
  for (std::size_t n = 1; n <= depth; ++n) {
    const auto d = to_uint64(pair.d(n));
    if (!d) throw ConstraintError("d_n exceeds 64 bits at n = " + std::to_string(n));
    w.d.push_back(*d);
    w.inv_d_rho.push_back(1.0L / to_long_double(BigInt(r * pair.d(n))));
    r *= pair.b(n);
  }
  w.rho_next = r;
  return w;
}

void require_nonempty(std::span<const double> samples) {
  if (samples.empty()) throw std::invalid_argument("empty sample list");
}

}  // namespace

long double series_point(const ScalePair& pair, std::span<const std::uint64_t> digits) {
  const Weights w = weights(pair, digits.size());
  long double x = 0.0L;
  for (std::size_t n = digits.size(); n >= 1; --n) {
    if (digits[n - 1] >= w.d[n - 1]) throw ConstraintError("digit outside {0, ..., d_n - 1}");
    x += static_cast<long double>(digits[n - 1]) * w.inv_d_rho[n - 1];
  }
  return x;
}

std::size_t default_sample_depth(const ScalePair& pair) {
  BigInt r = 1;
  const BigInt bound = BigInt(2) * BigInt(1'000'000'000'000'000ULL);  // 2 / 1e-15
  std::size_t depth = 0;
  while (r <= bound) r *= pair.b(++depth);
  return depth;
}

SampleSet sample_measure(const ScalePair& pair, std::size_t count, std::size_t depth,
                         std::uint64_t seed) {
  if (count == 0) throw std::invalid_argument("sample count must be >= 1");
  if (depth == 0) throw std::invalid_argument("sample depth must be >= 1");
  const Weights w = weights(pair, depth);
  SampleSet out;
  out.depth = depth;
  out.seed = seed;
  out.values.resize(count);
  out.truncation_radius = static_cast<double>(2.0L / to_long_double(w.rho_next));
  long double right = 0.0L;
  for (std::size_t n = depth; n >= 1; --n) {
    right += static_cast<long double>(w.d[n - 1] - 1) * w.inv_d_rho[n - 1];
  }
  out.support_right = static_cast<double>(right);

  parallel_blocks(count, 4096, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      long double x = 0.0L;
      for (std::size_t n = depth; n >= 1; --n) {
        const std::uint64_t j = counter_uniform(seed, k, n, w.d[n - 1]);
        x += static_cast<long double>(j) * w.inv_d_rho[n - 1];
      }
      out.values[k] = static_cast<double>(x);
    }
  });
  return out;
}

Complex empirical_char(std::span<const double> samples, double xi) {
  require_nonempty(samples);
  const auto phase = [&](std::size_t k) {
    const double t = xi * samples[k];
    return t - std::nearbyint(t);
  };
  const double re = deterministic_sum<double>(samples.size(), [&](std::size_t k) {
    return std::cos(2.0 * std::numbers::pi * phase(k));
  });
  const double im = deterministic_sum<double>(samples.size(), [&](std::size_t k) {
    return -std::sin(2.0 * std::numbers::pi * phase(k));
  });
  const auto n = static_cast<double>(samples.size());
  return {re / n, im / n};
}

double empirical_moment(std::span<const double> samples, int k) {
  require_nonempty(samples);
  if (k < 1 || k > 4) throw std::invalid_argument("moment order must be in 1..4");
  const double s = deterministic_sum<double>(samples.size(), [&](std::size_t i) {
    double p = samples[i];
    for (int j = 1; j < k; ++j) p *= samples[i];
    return p;
  });
  return s / static_cast<double>(samples.size());
}

double empirical_variance(std::span<const double> samples) {
  require_nonempty(samples);
  if (samples.size() == 1) return 0.0;
  const double mean = empirical_moment(samples, 1);
  const double ss = deterministic_sum<double>(samples.size(), [&](std::size_t i) {
    const double e = samples[i] - mean;
    return e * e;
  });
  return ss / static_cast<double>(samples.size() - 1);
}

long double expected_mean(const ScalePair& pair, std::size_t depth) {
  const Weights w = weights(pair, depth);
  long double m = 0.0L;
  for (std::size_t n = depth; n >= 1; --n) {
    m += static_cast<long double>(w.d[n - 1] - 1) * w.inv_d_rho[n - 1] / 2.0L;
  }
  return m;
}

Histogram histogram(std::span<const double> samples, std::size_t bins, double lo, double hi) {
  if (bins == 0 || !(hi > lo)) throw std::invalid_argument("degenerate histogram range");
  Histogram h{lo, hi, std::vector<std::uint64_t>(bins, 0)};
  const double width = (hi - lo) / static_cast<double>(bins);
  for (double x : samples) {
    if (x < lo || x > hi) continue;
    auto b = static_cast<std::size_t>((x - lo) / width);
    if (b >= bins) b = bins - 1;
    ++h.counts[b];
  }
  return h;
}

}  // namespace riesz
