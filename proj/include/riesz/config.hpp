#pragma once

// JSON configuration documents.
//
// Pair:    {"kind": "constant", "b": 4, "d": 2}
//          {"kind": "explicit", "b": [4, 8], "d": [2, 2]}
//          {"kind": "alpha", "alpha": 0.5, "profile": "pow2" | "pow2sq"}
// Tree:    [{"word": [1, 0], "value": 2}, ...] or {"table": [...]}
// Filters: {"kind": "riesz"} | {"kind": "modulated", "multiple": k}
//          | {"levels": [[[re, im], ...], ...]}
// Set:     [0, 8, ...] or {"set": [...]}
// Integers may be given as JSON numbers or decimal strings. A document with a
// "pair" member is read through that member (likewise "tree" and "filters").

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "riesz/core.hpp"
#include "riesz/fourier.hpp"
#include "riesz/spectra.hpp"

namespace riesz {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Json = nlohmann::ordered_json;

Json load_json(const std::filesystem::path& path);

ScalePair parse_pair(const Json& doc);
Json pair_to_json(const ScalePair& pair);

std::map<Word, BigInt> parse_tree_table(const Json& doc);
Json tree_table_to_json(const std::map<Word, BigInt>& table);

FilterFamily parse_filters(const Json& doc);

std::vector<BigInt> parse_frequency_set(const Json& doc);

}  // namespace riesz
