#include "riesz/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace riesz {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();

// a * t reduced modulo 2 into [-1, 1], carrying the rounding error of the
// product so large a does not lose the fractional part.
double product_mod2(double a, double t) {
  const double p = a * t;
  const double err = std::fma(a, t, -p);
  const double k = 2.0 * std::nearbyint(p / 2.0);
  return (p - k) + err;
}

// Frequency split as whole + frac with frac in [0, 1).
struct Normalized {
  double frac = 0.0;
  BigInt whole;
  std::optional<std::int64_t> whole64;
  long double magnitude = 0.0L;
  bool zero = false;
};

Normalized normalize(const Frequency& f) {
  if (!std::isfinite(f.real)) throw std::invalid_argument("frequency must be finite");
  Normalized out;
  const double fl = std::floor(f.real);
  out.frac = f.real - fl;
  out.whole = f.shift + BigInt(static_cast<long long>(fl));
  if (std::abs(fl) >= 9.0e18) throw std::invalid_argument("real part of frequency too large");
  out.whole64 = to_int64(out.whole);
  out.magnitude = std::abs(to_long_double(out.whole) + static_cast<long double>(out.frac));
  out.zero = out.frac == 0.0 && out.whole == 0;
  return out;
}

struct Reduced {
  double t = 0.0;             // argument modulo 1, in [0, 1)
  bool integer = false;       // exactly an integer
  bool kernel_zero = false;   // exactly k/d_n with k not divisible by d_n
};

std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

Reduced reduce(const ProductScales::Entry& lv, const Normalized& x) {
  Reduced out;
  if (x.whole64 && lv.d_rho64) {
    const std::int64_t m = *lv.d_rho64;
    const std::int64_t r = floor_mod(*x.whole64, m);
    if (x.frac == 0.0) {
      if (r == 0) {
        out.integer = true;
        return out;
      }
      const std::int64_t rho = m / static_cast<std::int64_t>(lv.d);
      out.kernel_zero = r % rho == 0;
    }
    out.t = static_cast<double>((static_cast<long double>(r) + x.frac) /
                                static_cast<long double>(m));
  } else if (x.whole64) {
    // |whole| < 2^63 <= d_n rho_n: the quotient is already small.
    if (x.frac == 0.0 && *x.whole64 == 0) {
      out.integer = true;
      return out;
    }
    out.t = static_cast<double>((static_cast<long double>(*x.whole64) + x.frac) / lv.d_rho_f);
    if (x.frac == 0.0) out.kernel_zero = (x.whole % lv.rho) == 0;
  } else {
    BigInt r = x.whole % lv.d_rho;
    if (r < 0) r += lv.d_rho;
    if (x.frac == 0.0) {
      if (r == 0) {
        out.integer = true;
        return out;
      }
      out.kernel_zero = (r % lv.rho) == 0;
    }
    out.t = static_cast<double>((to_long_double(r) + x.frac) / lv.d_rho_f);
  }
  if (out.t >= 1.0) out.t -= 1.0;
  return out;
}

// Generic certified product. `factor(i, t)` evaluates level i (0-based) at
// the reduced argument; `factor_error(i)` bounds its rounding error;
// `tail(ax, rho_next)` bounds |prod_{n > N} G_n - 1|.
template <class Factor, class FactorError, class Tail>
Certified evaluate_product(const ProductScales& scales, const Frequency& f, double tol,
                           bool kernel_zeros_exact, Factor&& factor,
                           FactorError&& factor_error, Tail&& tail) {
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  const Normalized x = normalize(f);
  if (x.zero) return Certified{Complex(1.0, 0.0), 0.0, 0};

  Complex prod(1.0, 0.0);
  double roundoff = 0.0;
  for (std::size_t i = 0; i < scales.size(); ++i) {
    const Reduced arg = reduce(scales[i], x);
    if (arg.kernel_zero && kernel_zeros_exact) return Certified{Complex(0.0, 0.0), 0.0, i + 1};
    if (!arg.integer) {
      prod *= factor(i, arg.t);
      roundoff += factor_error(i) + 4.0 * kEps;
    } else {
      const Complex at_zero = factor(i, 0.0);
      if (at_zero != Complex(1.0, 0.0)) {
        prod *= at_zero;
        roundoff += factor_error(i);
      }
    }
    const double tail_bound = tail(x.magnitude, scales.rho_after(i + 1));
    if (tail_bound <= tol) {
      const double radius = roundoff + (std::abs(prod) + roundoff) * tail_bound;
      return Certified{prod, radius * (1.0 + 8.0 * kEps), i + 1};
    }
  }
  throw std::runtime_error("frequency too large for the precomputed scale range");
}

template <class Factor>
Complex evaluate_partial(const ProductScales& scales, const Frequency& f, std::size_t levels,
                         Factor&& factor) {
  if (levels > scales.size()) throw std::out_of_range("requested more levels than precomputed");
  const Normalized x = normalize(f);
  Complex prod(1.0, 0.0);
  for (std::size_t i = 0; i < levels; ++i) {
    const Reduced arg = reduce(scales[i], x);
    prod *= factor(i, arg.integer ? 0.0 : arg.t);
  }
  return prod;
}

}  // namespace

Complex eval_H(std::uint64_t m, double xi) {
  if (m == 0) throw std::invalid_argument("H_m needs m >= 1");
  if (m == 1) return Complex(1.0, 0.0);
  const double t = xi - std::nearbyint(xi);
  if (t == 0.0) return Complex(1.0, 0.0);
  const auto md = static_cast<double>(m);
  const double phase = product_mod2(md - 1.0, t);
  double amp;
  if (std::abs(t) < 1e-9 && md * std::abs(t) < 1e-5) {
    // Series near the removable singularity.
    const double x = kPi * t;
    amp = 1.0 - (md * md - 1.0) * x * x / 6.0;
  } else {
    amp = std::sin(kPi * product_mod2(md, t)) / (md * std::sin(kPi * t));
  }
  return std::polar(amp, -kPi * phase);
}

Complex eval_trig(std::span<const Complex> g, double xi) {
  // Horner in z = e^{-2 pi i xi}.
  const double t = xi - std::nearbyint(xi);
  const Complex z = std::polar(1.0, -2.0 * kPi * t);
  Complex acc(0.0, 0.0);
  for (std::size_t j = g.size(); j-- > 0;) acc = acc * z + g[j];
  return acc;
}

QmfReport qmf_check(std::span<const Complex> g, std::uint64_t d, double threshold) {
  if (d < 2) throw std::invalid_argument("qmf_check needs d >= 2");
  if (g.empty()) throw std::invalid_argument("qmf_check needs a nonempty coefficient vector");
  QmfReport report;
  report.d = d;
  report.degree = g.size() - 1;

  double defect = 0.0;
  for (std::size_t lag = 0; lag < g.size(); lag += d) {
    Complex a(0.0, 0.0);
    for (std::size_t j = 0; j + lag < g.size(); ++j) a += g[j] * std::conj(g[j + lag]);
    const double target = lag == 0 ? 1.0 / static_cast<double>(d) : 0.0;
    defect = std::max(defect, std::abs(a - target));
    if (lag > std::numeric_limits<std::size_t>::max() - d) break;
  }
  report.max_defect = defect;
  report.pass = defect <= threshold;

  const double work = static_cast<double>(d) * static_cast<double>(g.size());
  const auto points =
      static_cast<std::size_t>(std::clamp(2.0e8 / std::max(work, 1.0), 8.0, 1000.0));
  double grid = 0.0;
  for (std::size_t k = 0; k < points; ++k) {
    const double xi = (static_cast<double>(k) + 0.5) / static_cast<double>(points);
    double s = 0.0;
    for (std::uint64_t l = 0; l < d; ++l) {
      s += std::norm(eval_trig(g, xi + static_cast<double>(l) / static_cast<double>(d)));
    }
    grid = std::max(grid, std::abs(s - 1.0));
  }
  report.grid_defect = grid;
  report.grid_points = points;
  return report;
}

LevelFilter LevelFilter::kernel(std::uint64_t d, std::uint64_t shift) {
  if (d == 0) throw std::invalid_argument("kernel width must be positive");
  LevelFilter f;
  f.is_kernel_ = true;
  f.d_ = d;
  f.shift_ = shift;
  return f;
}

LevelFilter LevelFilter::coefficients(std::vector<Complex> g) {
  if (g.empty()) throw std::invalid_argument("filter needs at least one coefficient");
  LevelFilter f;
  f.is_kernel_ = false;
  f.g_ = std::move(g);
  return f;
}

Complex LevelFilter::operator()(double xi) const {
  if (!is_kernel_) return eval_trig(g_, xi);
  Complex v = eval_H(d_, xi);
  if (shift_ != 0) {
    const double t = xi - std::nearbyint(xi);
    v *= std::polar(1.0, -kPi * product_mod2(2.0 * static_cast<double>(shift_), t));
  }
  return v;
}

std::size_t LevelFilter::degree() const {
  return is_kernel_ ? static_cast<std::size_t>(shift_ + d_ - 1) : g_.size() - 1;
}

std::vector<Complex> LevelFilter::materialize() const {
  if (!is_kernel_) return g_;
  std::vector<Complex> g(degree() + 1, Complex(0.0, 0.0));
  for (std::uint64_t j = 0; j < d_; ++j) g[shift_ + j] = 1.0 / static_cast<double>(d_);
  return g;
}

double LevelFilter::derivative_bound() const {
  if (is_kernel_) {
    // sum_{j<d} (shift + j)/d
    const auto d = static_cast<double>(d_);
    return 2.0 * kPi * (static_cast<double>(shift_) + (d - 1.0) / 2.0);
  }
  double s = 0.0;
  for (std::size_t j = 0; j < g_.size(); ++j) s += static_cast<double>(j) * std::abs(g_[j]);
  return 2.0 * kPi * s;
}

FilterFamily FilterFamily::riesz() { return FilterFamily{}; }

FilterFamily FilterFamily::modulated(std::uint64_t multiple) {
  FilterFamily f;
  f.multiple_ = multiple;
  return f;
}

FilterFamily FilterFamily::explicit_levels(std::vector<std::vector<Complex>> levels) {
  for (const auto& g : levels) {
    if (g.empty()) throw std::invalid_argument("filter level with no coefficients");
  }
  FilterFamily f;
  f.levels_ = std::move(levels);
  return f;
}

LevelFilter FilterFamily::level(std::size_t n, std::uint64_t d_n) const {
  if (n >= 1 && n <= levels_.size()) return LevelFilter::coefficients(levels_[n - 1]);
  return LevelFilter::kernel(d_n, multiple_ * d_n);
}

std::string FilterFamily::describe() const {
  std::ostringstream os;
  if (!levels_.empty()) os << "explicit(" << levels_.size() << " levels) then ";
  if (multiple_ == 0) {
    os << "H_{d_n}";
  } else {
    os << "H_{d_n}(xi) exp(-2 pi i " << multiple_ << " d_n xi)";
  }
  return os.str();
}

namespace {

FilterLevelReport certify_level(const LevelFilter& f, std::size_t n, std::uint64_t d) {
  FilterLevelReport rep;
  rep.n = n;
  rep.d = d;
  rep.degree = f.degree();
  rep.g0_defect = std::abs(f(0.0) - Complex(1.0, 0.0));
  if (rep.degree > (std::size_t{1} << 22)) {
    rep.ok = false;
    return rep;
  }
  const std::vector<Complex> g = f.materialize();
  rep.qmf = qmf_check(g, d);

  // inf |G| over xi in [-2/(3d), 1/(2d)], certified with the Lipschitz bound.
  const double lo = -2.0 / (3.0 * static_cast<double>(d));
  const double hi = 1.0 / (2.0 * static_cast<double>(d));
  const double lip = f.derivative_bound();
  std::size_t points = 65;
  for (;;) {
    double mn = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < points; ++k) {
      const double xi = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(points - 1);
      mn = std::min(mn, std::abs(f(xi)));
    }
    const double step = (hi - lo) / static_cast<double>(points - 1);
    const double slack = lip * step / 2.0;
    rep.window_grid_min = mn;
    rep.window_lower_bound = mn - slack;
    rep.window_points = points;
    if ((rep.window_lower_bound > 0.0 && slack <= 0.1 * mn) || points > (1u << 18)) break;
    points = 2 * points - 1;
  }
  rep.ok = rep.g0_defect <= kQmfThreshold && rep.qmf.pass && rep.window_lower_bound > 0.0;
  return rep;
}

}  // namespace

FilterCertificate certify_filters(const FilterFamily& filters, const ScalePair& pair,
                                  std::size_t depth) {
  require_valid(pair, depth);
  FilterCertificate cert;
  cert.depth = depth;
  cert.ok = true;
  cert.D1 = std::numeric_limits<double>::infinity();
  for (std::size_t n = 1; n <= depth; ++n) {
    const auto d = to_uint64(pair.d(n));
    if (!d) {
      cert.ok = false;
      cert.problems.push_back("level " + std::to_string(n) + ": d_n exceeds 64 bits");
      break;
    }
    const FilterLevelReport rep = certify_level(filters.level(n, *d), n, *d);
    cert.D0 = std::max(cert.D0, static_cast<double>(rep.degree) / static_cast<double>(*d));
    cert.D1 = std::min(cert.D1, rep.window_lower_bound);
    if (!rep.ok) {
      cert.ok = false;
      std::ostringstream os;
      os << "level " << n << ":";
      if (rep.g0_defect > kQmfThreshold) os << " G_n(0) != 1 (defect " << rep.g0_defect << ")";
      if (!rep.qmf.pass) os << " QMF identity fails (defect " << rep.qmf.max_defect << ")";
      if (rep.window_lower_bound <= 0.0) os << " window infimum not certified positive";
      cert.problems.push_back(os.str());
    }
    cert.levels.push_back(rep);
  }
  if (cert.levels.empty()) cert.D1 = 0.0;
  return cert;
}

CertifiedFilters::CertifiedFilters(FilterFamily filters, const ScalePair& pair, std::size_t depth)
    : filters_(std::move(filters)), pair_(pair) {
  if (depth < filters_.explicit_count()) depth = filters_.explicit_count();
  certificate_ = certify_filters(filters_, pair_, depth);
  if (!certificate_.ok) {
    std::string msg = "filter family failed certification:";
    for (const auto& p : certificate_.problems) msg += " [" + p + "]";
    throw ConstraintError(msg);
  }
}

ProductScales::ProductScales(const ScalePair& pair, std::size_t min_levels) : pair_(pair) {
  // Stop once rho_n passes 2^300: past that the tail bound is below any
  // meaningful tolerance for every representable frequency of interest.
  const long double stop = std::ldexp(1.0L, 300);
  BigInt r = 1;
  for (std::size_t n = 1; n <= 4096; ++n) {
    const auto d = to_uint64(pair.d(n));
    if (!d) break;
    Entry e;
    e.d = *d;
    e.rho = r;
    e.d_rho = r * e.d;
    e.d_rho64 = to_int64(e.d_rho);
    e.rho_f = to_long_double(e.rho);
    e.d_rho_f = to_long_double(e.d_rho);
    entries_.push_back(std::move(e));
    r *= pair.b(n);
    if (n >= min_levels && to_long_double(r) >= stop) break;
  }
  rho_last_ = to_long_double(r);
}

long double ProductScales::rho_after(std::size_t levels) const {
  if (levels < entries_.size()) return entries_[levels].rho_f;
  return rho_last_;
}

RieszProduct::RieszProduct(const ScalePair& pair, std::size_t min_levels)
    : scales_(pair, min_levels) {}

Certified RieszProduct::operator()(const Frequency& xi, double tol) const {
  return evaluate_product(
      scales_, xi, tol, true,
      [&](std::size_t i, double t) { return eval_H(scales_[i].d, t); },
      [&](std::size_t i) { return (4.0 * kPi * static_cast<double>(scales_[i].d) + 32.0) * kEps; },
      [](long double ax, long double rho_next) {
        return static_cast<double>(std::expm1(2.0L * kPi * ax / rho_next));
      });
}

Complex RieszProduct::partial(const Frequency& xi, std::size_t levels) const {
  return evaluate_partial(scales_, xi, levels,
                          [&](std::size_t i, double t) { return eval_H(scales_[i].d, t); });
}

Certified mu_hat(const ScalePair& pair, double xi, double tol) {
  return RieszProduct(pair)(xi, tol);
}

FilterProduct::FilterProduct(const CertifiedFilters& filters, std::size_t min_levels)
    : filters_(filters), scales_(filters.pair(), min_levels) {
  level_filters_.reserve(scales_.size());
  for (std::size_t i = 0; i < scales_.size(); ++i) {
    level_filters_.push_back(filters_.filters().level(i + 1, scales_[i].d));
  }
}

Certified FilterProduct::operator()(const Frequency& xi, double tol) const {
  const auto& cert = filters_.certificate();
  const std::size_t explicit_count = filters_.filters().explicit_count();
  // Levels past the explicit ones are modulated kernels, whose degree ratio
  // is bounded by (multiple + 1).
  double d0 = cert.D0;
  for (std::size_t i = explicit_count; i < scales_.size(); ++i) {
    d0 = std::max(d0, static_cast<double>(level_filters_[i].degree()) /
                          static_cast<double>(scales_[i].d));
  }
  const bool kernels_only = explicit_count == 0;
  return evaluate_product(
      scales_, xi, tol, kernels_only,
      [&](std::size_t i, double t) { return level_filters_[i](t); },
      [&](std::size_t i) {
        return (2.0 * level_filters_[i].derivative_bound() + 16.0 + 4.0 * kPi) * kEps *
               (i < explicit_count ? static_cast<double>(level_filters_[i].degree() + 1) : 1.0);
      },
      [d0](long double ax, long double rho_next) {
        return static_cast<double>(std::expm1(4.0L * kPi * d0 * ax / rho_next));
      });
}

Complex FilterProduct::partial(const Frequency& xi, std::size_t levels) const {
  return evaluate_partial(scales_, xi, levels,
                          [&](std::size_t i, double t) { return level_filters_[i](t); });
}

Certified phi_hat(const CertifiedFilters& filters, double xi, double tol) {
  return FilterProduct(filters)(xi, tol);
}

ExactZero mu_hat_exact_zero(const ScalePair& pair, const BigInt& nu) {
  ExactZero out;
  if (nu == 0) return out;
  const BigInt mag = boost::multiprecision::abs(nu);
  BigInt r = 1;
  for (std::size_t n = 1;; ++n) {
    if (r > mag) break;
    const BigInt d = pair.d(n);
    if (nu % r == 0 && nu % (d * r) != 0) {
      out.is_zero = true;
      out.witness = n;
      break;
    }
    r *= pair.b(n);
  }
  return out;
}

}  // namespace riesz
