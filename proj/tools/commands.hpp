#pragma once

// Subcommands of the riesz tool. Each writes its artifacts into `out` and
// returns true when every check it performs passes.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "riesz/config.hpp"
#include "riesz/spectra.hpp"

namespace riesz::cli {

struct Options {
  std::string pair_path;
  std::string tree_path;
  std::string filters_path;
  std::string set_path;
  std::string out = "out";
  unsigned threads = 0;
  std::optional<std::size_t> level;
  std::optional<std::size_t> lmax;
  std::optional<std::size_t> depth;
  std::optional<std::uint64_t> count;
  std::optional<double> tol;
  std::size_t grid = 32;
  std::size_t terms = 40;
  std::size_t bins = 64;
  std::size_t max_elements = 4096;
  std::uint64_t seed = 0;
  std::uint64_t budget = kDefaultEnumerationBudget;
};

struct Inputs {
  std::optional<ScalePair> pair;
  std::map<Word, BigInt> table;
  Json filters_doc;  // null when no filters were given
  std::optional<FilterFamily> filters;
  std::optional<std::vector<BigInt>> set;

  TreeMapping tree() const { return TreeMapping(*pair, table); }
};

// Reads --pair, --tree, --filters and --set. The pair may instead come from a
// "pair" member of the tree document.
Inputs load_inputs(const Options& opts);

using Command = bool (*)(const Inputs&, const Options&, const std::filesystem::path&);

// Subcommand names in report order, excluding "report".
const std::vector<std::pair<std::string, Command>>& commands();

bool run_report(const Inputs& in, const Options& opts, const std::filesystem::path& out);

}  // namespace riesz::cli
