#include "output.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace riesz::cli {

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt(long double v) { return fmt(static_cast<double>(v)); }

Json number_json(double v) {
  if (std::isfinite(v)) return v;
  return fmt(v);
}

CsvWriter::CsvWriter(const std::filesystem::path& path, std::initializer_list<std::string> header)
    : out_(path, std::ios::binary), path_(path) {
  if (!out_) throw std::runtime_error("cannot write " + path.string());
  bool first = true;
  for (const auto& h : header) {
    out_ << (first ? "" : ",") << h;
    first = false;
  }
  out_ << '\n';
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
  out_ << '\n';
  ++rows_;
  if (!out_) throw std::runtime_error("write failed: " + path_.string());
}

void write_json(const std::filesystem::path& path, const Json& doc) {
  write_text(path, doc.dump(2) + "\n");
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

}  // namespace riesz::cli
