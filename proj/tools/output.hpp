#pragma once

// Artifact writers shared by the subcommands.

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <string>
#include <vector>

#include "riesz/bigint.hpp"
#include "riesz/config.hpp"

namespace riesz::cli {

// Shortest round-trip text for a double ("%.17g").
std::string fmt(double v);
std::string fmt(long double v);

Json number_json(double v);

class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, std::initializer_list<std::string> header);
  void row(const std::vector<std::string>& cells);
  std::size_t rows() const { return rows_; }

 private:
  std::ofstream out_;
  std::filesystem::path path_;
  std::size_t rows_ = 0;
};

void write_json(const std::filesystem::path& path, const Json& doc);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace riesz::cli
