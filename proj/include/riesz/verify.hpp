#pragma once

// Verification of spectral candidates:
//   * exact pairwise orthogonality, mu_hat(lambda - lambda') == 0;
//   * the finite-level partition identity
//       sum_{lambda in Lambda_L} |prod_{n<=L} G_n((xi+lambda)/(d_n rho_n))|^2 = 1;
//   * the completeness sums Q_L(xi) = sum_{lambda in Lambda_L} |mu_hat(xi+lambda)|^2.

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "riesz/bigint.hpp"
#include "riesz/core.hpp"
#include "riesz/fourier.hpp"
#include "riesz/spectra.hpp"

namespace riesz {

struct OrthogonalityOptions {
  std::size_t max_elements = 4096;
  std::size_t max_reported = 64;
};

struct OrthogonalityReport {
  bool pass = true;
  std::size_t element_count = 0;
  std::uint64_t pairs_checked = 0;
  std::uint64_t violation_count = 0;
  std::vector<std::pair<BigInt, BigInt>> violations;  // first max_reported, in index order
};

// Every unordered pair of distinct entries must satisfy mu_hat(a - b) == 0;
// repeated entries are violations (a - a = 0).
OrthogonalityReport orthogonality_check(std::span<const BigInt> elements, const ScalePair& pair,
                                        const OrthogonalityOptions& options = {});

// Collisions recorded in the level are reported as violations.
OrthogonalityReport orthogonality_check(const SpectrumLevel& level, const ScalePair& pair,
                                        const OrthogonalityOptions& options = {});

// Exact zero test of mu_hat at integers that fit 64 bits. Uses
// mu_hat(nu) == 0 iff d_m rho_m does not divide nu for m = max{n : rho_n | nu}.
class ExactZeroTester {
 public:
  ExactZeroTester(const ScalePair& pair, std::uint64_t max_magnitude);
  bool is_zero(std::uint64_t magnitude) const;

 private:
  struct Divisor {
    std::uint64_t value = 0;
    unsigned shift = 0;            // trailing zero bits
    std::uint64_t odd_inverse = 0; // inverse of the odd part mod 2^64
    std::uint64_t limit = 0;       // floor((2^64 - 1) / odd part)
    bool divides(std::uint64_t x) const;
  };
  static Divisor make(std::uint64_t v);

  std::vector<Divisor> rho_;    // rho_1, rho_2, ... while rho_n <= max_magnitude
  std::vector<std::optional<Divisor>> d_rho_;  // nullopt when d_n rho_n overflows
};

struct PartitionResult {
  double sum = 0.0;
  double defect = 0.0;  // |sum - 1|
  std::size_t terms = 0;
};

// Default filters H_{d_n} when `filters` is null.
PartitionResult partition_identity(const TreeMapping& tm, double xi, std::size_t L,
                                   const CertifiedFilters* filters = nullptr,
                                   std::uint64_t budget = kDefaultEnumerationBudget);

struct CompletenessRow {
  double xi = 0.0;
  std::size_t L = 0;
  double Q = 0.0;
  double slack = 0.0;  // certified error of Q
  bool monotone_ok = true;
  bool bound_ok = true;  // Q <= 1 + slack
};

struct CompletenessReport {
  std::vector<CompletenessRow> rows;  // ordered by xi, then L
  bool monotone = true;
  bool bounded = true;
  std::size_t L_max = 0;
  double worst_gap = 0.0;  // max over xi of 1 - Q_{L_max}(xi)
  double worst_gap_xi = 0.0;
};

inline constexpr double kMonotoneSlack = 1e-12;

// K + 1 equispaced points in [0, 1/2].
std::vector<double> completeness_grid(std::size_t K);

CompletenessReport completeness_Q(const TreeMapping& tm, std::span<const double> grid,
                                  std::size_t L_max, double tol,
                                  std::uint64_t budget = kDefaultEnumerationBudget);

// Same sums for explicitly given sets; levels[k] plays the role of Lambda_{k+1}.
CompletenessReport completeness_Q(const ScalePair& pair,
                                  const std::vector<std::vector<BigInt>>& levels,
                                  std::span<const double> grid, double tol);

}  // namespace riesz
