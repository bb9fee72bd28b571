#pragma once

// The kernel H_m, quadrature mirror filter families G_n, and the certified
// evaluation of the infinite products
//
//   mu_hat(xi)  = prod_n H_{d_n}(xi / (d_n rho_n))
//   phi_hat(xi) = prod_n G_n(xi / (d_n rho_n))
//
// Frequencies are passed as a real part plus an exact integer shift, so the
// per-level arguments are reduced modulo d_n rho_n in exact arithmetic before
// any rounding happens.

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "riesz/bigint.hpp"
#include "riesz/core.hpp"

namespace riesz {

using Complex = std::complex<double>;

// H_m(xi) = (1/m) sum_{j<m} e^{-2 pi i j xi}; H_m(k) = 1 for integers k.
Complex eval_H(std::uint64_t m, double xi);

// G(xi) = sum_j g_j e^{-2 pi i j xi} by direct summation.
Complex eval_trig(std::span<const Complex> g, double xi);

struct QmfReport {
  bool pass = false;
  std::uint64_t d = 0;
  std::size_t degree = 0;
  double max_defect = 0.0;   // max_m |a_{md} - [m=0]/d|
  double grid_defect = 0.0;  // max over the grid of |sum_l |G(xi+l/d)|^2 - 1|
  std::size_t grid_points = 0;
};

inline constexpr double kQmfThreshold = 1e-12;

// Certifies sum_{l<d} |G(xi + l/d)|^2 == 1 through the autocorrelation
// a_m = sum_j g_j conj(g_{j+m}), cross-checked on an equispaced grid.
QmfReport qmf_check(std::span<const Complex> g, std::uint64_t d,
                    double threshold = kQmfThreshold);

// One level of a filter family.
class LevelFilter {
 public:
  // H_d(xi) e^{-2 pi i shift xi}.
  static LevelFilter kernel(std::uint64_t d, std::uint64_t shift = 0);
  static LevelFilter coefficients(std::vector<Complex> g);

  Complex operator()(double xi) const;
  std::size_t degree() const;
  std::vector<Complex> materialize() const;
  // Upper bound on sup |G'|: 2 pi sum_j j |g_j|.
  double derivative_bound() const;

 private:
  bool is_kernel_ = true;
  std::uint64_t d_ = 1;
  std::uint64_t shift_ = 0;
  std::vector<Complex> g_;
};

class FilterFamily {
 public:
  // G_n = H_{d_n}.
  static FilterFamily riesz();
  // G_n(xi) = H_{d_n}(xi) e^{-2 pi i (multiple * d_n) xi}.
  static FilterFamily modulated(std::uint64_t multiple);
  // Explicit coefficient vectors for levels 1..levels.size(), then H_{d_n}.
  static FilterFamily explicit_levels(std::vector<std::vector<Complex>> levels);

  LevelFilter level(std::size_t n, std::uint64_t d_n) const;
  std::size_t explicit_count() const { return levels_.size(); }
  std::string describe() const;

 private:
  std::uint64_t multiple_ = 0;
  std::vector<std::vector<Complex>> levels_;
};

struct FilterLevelReport {
  std::size_t n = 0;
  std::uint64_t d = 0;
  std::size_t degree = 0;
  double g0_defect = 0.0;  // |G_n(0) - 1|
  QmfReport qmf;
  double window_grid_min = 0.0;
  double window_lower_bound = 0.0;  // grid minimum minus Lipschitz slack
  std::size_t window_points = 0;
  bool ok = false;
};

struct FilterCertificate {
  bool ok = false;
  std::size_t depth = 0;
  double D0 = 0.0;  // max deg(G_n) / d_n
  double D1 = 0.0;  // min certified inf of |G_n| over d_n xi in [-2/3, 1/2]
  std::vector<FilterLevelReport> levels;
  std::vector<std::string> problems;
};

// Checks G_n(0) = 1, the QMF identity and the window lower bound for
// n = 1..depth.
FilterCertificate certify_filters(const FilterFamily& filters, const ScalePair& pair,
                                  std::size_t depth);

// A filter family together with a passing certificate.
class CertifiedFilters {
 public:
  // Throws ConstraintError when certification fails.
  CertifiedFilters(FilterFamily filters, const ScalePair& pair, std::size_t depth = 12);

  const FilterFamily& filters() const { return filters_; }
  const ScalePair& pair() const { return pair_; }
  const FilterCertificate& certificate() const { return certificate_; }

 private:
  FilterFamily filters_;
  ScalePair pair_;
  FilterCertificate certificate_;
};

// A value with a guaranteed bound on its distance to the exact result.
struct Certified {
  Complex value;
  double radius = 0.0;
  std::size_t levels = 0;  // number of factors multiplied
};

// Frequency xi + shift with shift an exact integer.
struct Frequency {
  double real = 0.0;
  BigInt shift = 0;
};

// Precomputed scales for evaluating the infinite products.
class ProductScales {
 public:
  // Levels continue until rho_n passes 2^300, and at least to min_levels.
  explicit ProductScales(const ScalePair& pair, std::size_t min_levels = 0);

  struct Entry {
    std::uint64_t d = 0;
    BigInt rho;
    BigInt d_rho;
    std::optional<std::int64_t> d_rho64;
    long double rho_f = 0.0L;
    long double d_rho_f = 0.0L;
  };

  std::size_t size() const { return entries_.size(); }
  const Entry& operator[](std::size_t i) const { return entries_[i]; }
  const ScalePair& pair() const { return pair_; }
  // rho_{n+1} for n = entries size is stored as the sentinel.
  long double rho_after(std::size_t levels) const;

 private:
  ScalePair pair_;
  std::vector<Entry> entries_;
  long double rho_last_ = 0.0L;
};

// mu_hat evaluator for one pair.
class RieszProduct {
 public:
  explicit RieszProduct(const ScalePair& pair, std::size_t min_levels = 0);

  // N is the least level whose truncation bound is <= tol.
  Certified operator()(const Frequency& xi, double tol) const;
  Certified operator()(double xi, double tol) const { return (*this)(Frequency{xi, 0}, tol); }

  // Product of the first `levels` factors only (no tail bound).
  Complex partial(const Frequency& xi, std::size_t levels) const;

  const ProductScales& scales() const { return scales_; }

 private:
  ProductScales scales_;
};

Certified mu_hat(const ScalePair& pair, double xi, double tol);

// phi_hat evaluator; the tail bound uses |G_n(eta/d_n) - 1| <= 2 pi D0 |eta|.
class FilterProduct {
 public:
  explicit FilterProduct(const CertifiedFilters& filters, std::size_t min_levels = 0);

  Certified operator()(const Frequency& xi, double tol) const;
  Certified operator()(double xi, double tol) const { return (*this)(Frequency{xi, 0}, tol); }

  // prod_{n<=levels} G_n((xi + shift)/(d_n rho_n)).
  Complex partial(const Frequency& xi, std::size_t levels) const;

 private:
  CertifiedFilters filters_;
  ProductScales scales_;
  std::vector<LevelFilter> level_filters_;
};

Certified phi_hat(const CertifiedFilters& filters, double xi, double tol);

struct ExactZero {
  bool is_zero = false;
  std::optional<std::size_t> witness;  // level n with rho_n | nu and d_n rho_n does not divide nu
};

// Exact test of mu_hat(nu) == 0 for an integer nu.
ExactZero mu_hat_exact_zero(const ScalePair& pair, const BigInt& nu);

}  // namespace riesz
