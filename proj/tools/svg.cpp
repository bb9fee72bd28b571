#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace riesz::cli {

namespace {

constexpr double kWidth = 720, kHeight = 480;
constexpr double kLeft = 80, kRight = 180, kTop = 40, kBottom = 60;
const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Range {
  double lo = 0.0, hi = 1.0;

  void include(double v) {
    if (!std::isfinite(v)) return;
    if (empty) {
      lo = hi = v;
      empty = false;
    } else {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  void finish() {
    if (empty) {
      lo = 0.0;
      hi = 1.0;
    }
    if (hi - lo < 1e-300) {
      const double pad = std::max(std::abs(lo) * 0.05, 0.5);
      lo -= pad;
      hi += pad;
    }
  }
  bool empty = true;
};

// Roughly five round tick values covering [lo, hi].
std::vector<double> ticks(double lo, double hi) {
  const double raw = (hi - lo) / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    step = m * mag;
    if (step >= raw) break;
  }
  std::vector<double> out;
  for (double t = std::ceil(lo / step) * step; t <= hi + step * 1e-9; t += step) {
    out.push_back(std::abs(t) < step * 1e-9 ? 0.0 : t);
  }
  return out;
}

class Canvas {
 public:
  Canvas(const std::string& title, const std::string& x_label, const std::string& y_label,
         Range x, Range y)
      : x_(x), y_(y) {
    os_ << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight
        << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << num(kWidth / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">"
        << escape(title) << "</text>\n";
    const double right = kWidth - kRight, bottom = kHeight - kBottom;
    os_ << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << right - kLeft
        << "\" height=\"" << bottom - kTop << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (double t : ticks(x_.lo, x_.hi)) {
      const double px = X(t);
      os_ << "<line x1=\"" << num(px) << "\" y1=\"" << bottom << "\" x2=\"" << num(px)
          << "\" y2=\"" << bottom + 5 << "\" stroke=\"black\"/>\n"
          << "<text x=\"" << num(px) << "\" y=\"" << bottom + 18
          << "\" text-anchor=\"middle\">" << num(t) << "</text>\n";
    }
    for (double t : ticks(y_.lo, y_.hi)) {
      const double py = Y(t);
      os_ << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << num(py) << "\" x2=\"" << kLeft
          << "\" y2=\"" << num(py) << "\" stroke=\"black\"/>\n"
          << "<text x=\"" << kLeft - 8 << "\" y=\"" << num(py + 4)
          << "\" text-anchor=\"end\">" << num(t) << "</text>\n";
    }
    os_ << "<text x=\"" << num((kLeft + right) / 2) << "\" y=\"" << kHeight - 18
        << "\" text-anchor=\"middle\">" << escape(x_label) << "</text>\n"
        << "<text transform=\"translate(18," << num((kTop + bottom) / 2)
        << ") rotate(-90)\" text-anchor=\"middle\">" << escape(y_label) << "</text>\n";
  }

  double X(double v) const { return kLeft + (v - x_.lo) / (x_.hi - x_.lo) * (kWidth - kRight - kLeft); }
  double Y(double v) const {
    return kHeight - kBottom - (v - y_.lo) / (y_.hi - y_.lo) * (kHeight - kBottom - kTop);
  }
  std::ostringstream& out() { return os_; }
  std::string finish() {
    os_ << "</svg>\n";
    return os_.str();
  }

 private:
  Range x_, y_;
  std::ostringstream os_;
};

}  // namespace

std::string render_plot(const Plot& plot) {
  Range xr, yr;
  for (const auto& s : plot.series) {
    for (double v : s.x) xr.include(v);
    for (double v : s.y) yr.include(v);
  }
  for (double v : plot.reference_lines) yr.include(v);
  xr.finish();
  yr.finish();
  const double pad = (yr.hi - yr.lo) * 0.05;
  yr.lo -= pad;
  yr.hi += pad;

  Canvas c(plot.title, plot.x_label, plot.y_label, xr, yr);
  auto& os = c.out();
  for (double v : plot.reference_lines) {
    os << "<line x1=\"" << kLeft << "\" y1=\"" << num(c.Y(v)) << "\" x2=\"" << kWidth - kRight
       << "\" y2=\"" << num(c.Y(v)) << "\" stroke=\"gray\" stroke-dasharray=\"6,4\"/>\n";
  }
  for (std::size_t i = 0; i < plot.series.size(); ++i) {
    const Series& s = plot.series[i];
    const char* color = kPalette[i % std::size(kPalette)];
    if (s.markers_only) {
      os << "<g fill=\"" << color << "\">\n";
      for (std::size_t k = 0; k < std::min(s.x.size(), s.y.size()); ++k) {
        if (!std::isfinite(s.x[k]) || !std::isfinite(s.y[k])) continue;
        os << "<circle cx=\"" << num(c.X(s.x[k])) << "\" cy=\"" << num(c.Y(s.y[k]))
           << "\" r=\"2.5\"/>\n";
      }
      os << "</g>\n";
    } else {
      os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
      for (std::size_t k = 0; k < std::min(s.x.size(), s.y.size()); ++k) {
        if (!std::isfinite(s.x[k]) || !std::isfinite(s.y[k])) continue;
        os << num(c.X(s.x[k])) << "," << num(c.Y(s.y[k])) << " ";
      }
      os << "\"/>\n";
    }
    if (i < 16 && !s.label.empty()) {
      const double ly = kTop + 14 + 16 * static_cast<double>(i);
      const double lx = kWidth - kRight + 12;
      os << "<rect x=\"" << lx << "\" y=\"" << num(ly - 9) << "\" width=\"10\" height=\"10\" fill=\""
         << color << "\"/>\n"
         << "<text x=\"" << lx + 16 << "\" y=\"" << num(ly) << "\">" << escape(s.label)
         << "</text>\n";
    }
  }
  return c.finish();
}

std::string render_histogram(const std::string& title, const std::string& x_label, double lo,
                             double hi, const std::vector<std::uint64_t>& counts) {
  Range xr, yr;
  xr.include(lo);
  xr.include(hi);
  yr.include(0.0);
  for (auto v : counts) yr.include(static_cast<double>(v));
  xr.finish();
  yr.finish();
  Canvas c(title, x_label, "count", xr, yr);
  auto& os = c.out();
  const double width = (hi - lo) / static_cast<double>(std::max<std::size_t>(counts.size(), 1));
  os << "<g fill=\"" << kPalette[0] << "\">\n";
  for (std::size_t b = 0; b < counts.size(); ++b) {
    const double x0 = c.X(lo + width * static_cast<double>(b));
    const double x1 = c.X(lo + width * static_cast<double>(b + 1));
    const double y0 = c.Y(static_cast<double>(counts[b]));
    os << "<rect x=\"" << num(x0) << "\" y=\"" << num(y0) << "\" width=\"" << num(x1 - x0)
       << "\" height=\"" << num(c.Y(0.0) - y0) << "\"/>\n";
  }
  os << "</g>\n";
  return c.finish();
}

}  // namespace riesz::cli
