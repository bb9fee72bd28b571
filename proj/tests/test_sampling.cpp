#include <doctest.h>

#include <cmath>
#include <vector>

#include "riesz/dimension.hpp"
#include "riesz/parallel.hpp"
#include "riesz/sampling.hpp"

using namespace riesz;

TEST_CASE("series_point examples") {
  const ScalePair p = constant_pair(4, 2);
  const std::vector<std::uint64_t> zeros(20, 0);
  CHECK(series_point(p, zeros) == 0.0L);
  const std::vector<std::uint64_t> ones(30, 1);
  CHECK(std::abs(series_point(p, ones) - 2.0L / 3.0L) <= 1e-17L);
  const std::vector<std::uint64_t> bad = {2};
  CHECK_THROWS_AS(series_point(p, bad), ConstraintError);
}

TEST_CASE("samples lie in the truncated support and are deterministic") {
  for (const auto& p : {constant_pair(4, 2), constant_pair(9, 3), dimension_targeting_pair(0.5)}) {
    const SampleSet s = sample_measure(p, 5000, 12, 7);
    for (double x : s.values) {
      CHECK(x >= 0.0);
      CHECK(x <= s.support_right);
    }
    CHECK(sample_measure(p, 5000, 12, 7).values == s.values);
    CHECK(sample_measure(p, 5000, 12, 8).values != s.values);
  }
}

TEST_CASE("thread count does not change samples") {
  const ScalePair p = constant_pair(4, 2);
  set_thread_limit(1);
  const auto a = sample_measure(p, 20000, 26, 3).values;
  set_thread_limit(4);
  const auto b = sample_measure(p, 20000, 26, 3).values;
  set_thread_limit(0);
  CHECK(a == b);
  const Complex ca = empirical_char(a, 0.3);
  set_thread_limit(3);
  CHECK(empirical_char(b, 0.3) == ca);
  set_thread_limit(0);
}

TEST_CASE("truncation radius and default depth") {
  const ScalePair p = constant_pair(4, 2);
  const std::size_t depth = default_sample_depth(p);
  const SampleSet s = sample_measure(p, 1, depth, 0);
  CHECK(s.truncation_radius < 1e-15);
  CHECK(depth <= 26);
  CHECK(sample_measure(p, 1, 3, 0).truncation_radius == doctest::Approx(2.0 / 64.0));
}

TEST_CASE("samples fall inside the constructed intervals") {
  // Depth-n intervals of E(R,D) rescaled by S_1 cover the support of mu.
  for (const auto& p : {constant_pair(4, 2), constant_pair(9, 3), explicit_pair({6, 8}, {3, 2})}) {
    const SampleSet s = sample_measure(p, 10000, 26, 11);
    for (std::size_t n = 1; n <= 6; ++n) {
      const IntervalFamily f = build_intervals(p, n);
      std::vector<std::pair<double, double>> iv;
      for (const auto& J : f.intervals) {
        iv.emplace_back(to_double(Rational(J.left * f.rescale)),
                        to_double(Rational(J.right * f.rescale)));
      }
      std::size_t outside = 0;
      for (double x : s.values) {
        auto it = std::upper_bound(iv.begin(), iv.end(), std::make_pair(x, 1e300));
        bool inside = false;
        if (it != iv.begin()) {
          --it;
          inside = x >= it->first - 1e-15 && x <= it->second + 1e-15;
        }
        if (!inside) ++outside;
      }
      CHECK_MESSAGE(outside == 0, "depth " << n);
    }
  }
}

TEST_CASE("empirical characteristic function and moments") {
  const ScalePair p = constant_pair(4, 2);
  const std::size_t count = 1'000'000;
  const SampleSet s = sample_measure(p, count, default_sample_depth(p), 2024);
  const double band = 5.0 / std::sqrt(static_cast<double>(count));

  CHECK(empirical_char(s.values, 0.0) == Complex(1.0, 0.0));
  CHECK(std::abs(empirical_char(s.values, 0.3) - mu_hat(p, 0.3, 1e-12).value) <= band);
  CHECK(std::abs(empirical_char(s.values, 1.0)) <= band);
  for (int k = 0; k < 20; ++k) {
    const double xi = -7.3 + 0.83 * k;
    CHECK(std::abs(empirical_char(s.values, xi) - mu_hat(p, xi, 1e-12).value) <= band);
  }

  const double mean = empirical_moment(s.values, 1);
  const double sd = std::sqrt(empirical_variance(s.values));
  CHECK(std::abs(mean - 1.0 / 3.0) <= 5.0 * sd / std::sqrt(static_cast<double>(count)));
  CHECK(std::abs(static_cast<double>(expected_mean(p, 40)) - 1.0 / 3.0) <= 1e-16);
  CHECK_THROWS(empirical_moment(s.values, 5));
  CHECK_THROWS(empirical_char(std::vector<double>{}, 0.1));
}

TEST_CASE("constant (9,3) mean") {
  const ScalePair p = constant_pair(9, 3);
  CHECK(std::abs(static_cast<double>(expected_mean(p, 30)) - 3.0 / 8.0) <= 1e-16);
  const SampleSet s = sample_measure(p, 200000, 20, 5);
  const double sd = std::sqrt(empirical_variance(s.values));
  CHECK(std::abs(empirical_moment(s.values, 1) - 3.0 / 8.0) <= 5.0 * sd / std::sqrt(200000.0));
}

TEST_CASE("histogram") {
  const std::vector<double> x = {0.0, 0.1, 0.5, 0.99, 1.0, 2.0};
  const Histogram h = histogram(x, 2, 0.0, 1.0);
  CHECK(h.counts[0] == 2);
  CHECK(h.counts[1] == 3);
  CHECK_THROWS(histogram(x, 0, 0.0, 1.0));
}
