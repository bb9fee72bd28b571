#pragma once

// Monte-Carlo realization of mu_{B,D} as the law of sum_n j_n / (d_n rho_n)
// with independent uniform digits j_n in {0, ..., d_n - 1}.

#include <cstdint>
#include <span>
#include <vector>

#include "riesz/core.hpp"
#include "riesz/fourier.hpp"

namespace riesz {

// x = sum_{n <= |digits|} digits[n-1] / (d_n rho_n), accumulated from the
// deepest level up.
long double series_point(const ScalePair& pair, std::span<const std::uint64_t> digits);

struct SampleSet {
  std::vector<double> values;
  double truncation_radius = 0.0;  // 2 / rho_{depth+1}
  double support_right = 0.0;      // sum_{n <= depth} (d_n - 1)/(d_n rho_n)
  std::size_t depth = 0;
  std::uint64_t seed = 0;
};

// Digit j_n of sample k is counter_uniform(seed, k, n, d_n).
SampleSet sample_measure(const ScalePair& pair, std::size_t count, std::size_t depth,
                         std::uint64_t seed);

// Smallest depth with 2 / rho_{depth+1} < 1e-15.
std::size_t default_sample_depth(const ScalePair& pair);

// (1/count) sum_k exp(-2 pi i xi x_k), reduced with a fixed summation tree.
Complex empirical_char(std::span<const double> samples, double xi);

// k-th raw moment, 1 <= k <= 4.
double empirical_moment(std::span<const double> samples, int k);

// Unbiased sample variance (0 for a single sample).
double empirical_variance(std::span<const double> samples);

// sum_n (d_n - 1) / (2 d_n rho_n) up to `depth` levels.
long double expected_mean(const ScalePair& pair, std::size_t depth);

struct Histogram {
  double lo = 0.0;
  double hi = 1.0;
  std::vector<std::uint64_t> counts;
};

// Equal-width bins on [lo, hi]; the last bin is closed.
Histogram histogram(std::span<const double> samples, std::size_t bins, double lo, double hi);

}  // namespace riesz
