#pragma once

// Interval construction of E(R, D), gap ratios r_n, Hausdorff dimension
// ratios, a box-counting cross-check and the upper Beurling estimator.

#include <cstdint>
#include <span>
#include <vector>

#include "riesz/bigint.hpp"
#include "riesz/core.hpp"
#include "riesz/spectra.hpp"

namespace riesz {

// S_n = sum_{j>=n} (d_j - 1)/(d_j rho_j), held as integers W_n proportional
// to S_n (common scale). Exact for eventually constant pairs; otherwise the
// sums stop at level M with relative error at most `relative_error`.
struct GapSums {
  std::vector<BigInt> W;  // W[n-1] for n = 1 .. N+1
  BigInt scale;           // S_n = W_n / scale
  std::size_t truncation_level = 0;
  bool exact = false;
  double relative_error = 0.0;
};

GapSums gap_sums(const ScalePair& pair, std::size_t N);

struct GapRatios {
  std::vector<long double> r;          // r_1 .. r_N
  std::vector<long double> log_inv_r;  // ln(1/r_n)
  bool rd_ok = true;                   // r_n d_n <= 1 for every n
  std::size_t first_rd_failure = 0;    // level of the first failure, 0 if none
  bool exact = false;
  double relative_error = 0.0;
  std::size_t truncation_level = 0;
};

GapRatios gap_ratios(const ScalePair& pair, std::size_t N);

// r_1 .. r_N as rationals (of the truncated sums when the pair is not
// eventually constant).
std::vector<Rational> gap_ratios_exact(const ScalePair& pair, std::size_t N);

struct Interval {
  Word word;
  Rational left;
  Rational right;
};

struct IntervalFamily {
  std::size_t depth = 0;
  std::vector<Interval> intervals;  // lexicographic in the word
  std::vector<Rational> r;          // r_1 .. r_depth used for the construction
  Rational rescale;                 // C(B,D) = rescale * E(R,D)
};

inline constexpr std::uint64_t kDefaultIntervalBudget = 1'000'000;

IntervalFamily build_intervals(const ScalePair& pair, std::size_t depth,
                               std::uint64_t budget = kDefaultIntervalBudget);

struct IntervalCheck {
  bool ok = true;
  std::string problem;  // first failed property
};

// Lengths, equal gaps, pinned endpoints, disjointness and containment,
// checked exactly level by level.
IntervalCheck check_interval_family(const ScalePair& pair, std::size_t depth,
                                    std::uint64_t budget = kDefaultIntervalBudget);

struct HausdorffReport {
  std::vector<long double> ratios;  // s_1 .. s_N
  long double value = 0.0L;         // s_N
  long double trailing_inf = 0.0L;  // inf of s_n over n in [ceil(N/2), N]
};

HausdorffReport hausdorff_dim_formula(const ScalePair& pair, std::size_t N);

struct BoxCountingReport {
  double slope = 0.0;
  double residual = 0.0;  // root-mean-square residual of the fit
  std::vector<double> log_inv_size;
  std::vector<double> log_count;
  std::size_t intervals = 0;  // size of the finest family
};

// Counts half-open boxes of side |J| at depth n = 1..depth meeting the
// depth-`depth` intervals; fits log count against log(1/side).
BoxCountingReport box_counting_dim(const ScalePair& pair, std::size_t depth,
                                   std::uint64_t budget = kDefaultIntervalBudget);

// Geometric grid of `points` window half-widths between lo and hi.
std::vector<double> geometric_grid(double lo, double hi, std::size_t points);

// Default grid: from the smallest positive spacing (or 1) up to a quarter of
// the span, 24 points.
std::vector<double> default_window_grid(std::span<const BigInt> elements);

struct BeurlingReport {
  double slope = 0.0;
  std::vector<double> h;
  std::vector<std::uint64_t> sup_count;
};

BeurlingReport beurling_upper_dim(std::span<const BigInt> elements, std::span<const double> h);
BeurlingReport beurling_upper_dim(const SpectrumLevel& level);

inline constexpr double kBeurlingSlack = 0.1;

struct BeurlingHausdorffReport {
  double beurling = 0.0;
  double hausdorff = 0.0;
  double slack = kBeurlingSlack;
  bool pass = false;
};

// Hausdorff side: trailing infimum of the formula at N = max(2L, 40).
BeurlingHausdorffReport beurling_vs_hausdorff(const TreeMapping& tm, std::size_t L,
                                              double slack = kBeurlingSlack);

// Least-squares slope and RMS residual.
std::pair<double, double> fit_line(std::span<const double> x, std::span<const double> y);

}  // namespace riesz
