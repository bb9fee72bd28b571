#include "riesz/config.hpp"

#include <fstream>

namespace riesz {

namespace {

const Json& member(const Json& doc, const char* key) {
  if (doc.is_object() && doc.contains(key)) return doc.at(key);
  return doc;
}

BigInt parse_integer(const Json& v, const std::string& what) {
  if (v.is_number_integer()) {
    return v.is_number_unsigned() ? BigInt(v.get<std::uint64_t>()) : BigInt(v.get<std::int64_t>());
  }
  if (v.is_string()) {
    const auto& s = v.get_ref<const std::string&>();
    const std::size_t start = (!s.empty() && s[0] == '-') ? 1 : 0;
    if (s.size() == start || s.find_first_not_of("0123456789", start) != std::string::npos) {
      throw ConfigError(what + ": \"" + s + "\" is not a decimal integer");
    }
    return BigInt(s);
  }
  throw ConfigError(what + " must be an integer or a decimal string");
}

std::vector<BigInt> parse_integers(const Json& v, const std::string& what) {
  std::vector<BigInt> out;
  if (v.is_array()) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      out.push_back(parse_integer(v[i], what + "[" + std::to_string(i) + "]"));
    }
  } else {
    out.push_back(parse_integer(v, what));
  }
  return out;
}

Json integer_json(const BigInt& v) {
  if (auto i = to_int64(v)) return *i;
  return v.str();
}

const Json& require(const Json& doc, const char* key, const std::string& where) {
  if (!doc.is_object() || !doc.contains(key)) {
    throw ConfigError(where + ": missing \"" + key + "\"");
  }
  return doc.at(key);
}

}  // namespace

Json load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

ScalePair parse_pair(const Json& doc) {
  const Json& p = member(doc, "pair");
  if (!p.is_object()) throw ConfigError("pair config must be a JSON object");
  const std::string kind = p.value("kind", std::string("constant"));
  try {
    if (kind == "constant") {
      return constant_pair(parse_integer(require(p, "b", "pair"), "b"),
                           parse_integer(require(p, "d", "pair"), "d"));
    }
    if (kind == "explicit") {
      auto b = parse_integers(require(p, "b", "pair"), "b");
      auto d = parse_integers(require(p, "d", "pair"), "d");
      return explicit_pair(std::move(b), std::move(d));
    }
    if (kind == "alpha") {
      const Json& a = require(p, "alpha", "pair");
      if (!a.is_number()) throw ConfigError("alpha must be a number");
      const std::string profile = p.value("profile", std::string("pow2"));
      GrowthProfile g;
      if (profile == "pow2") {
        g = GrowthProfile::kPowersOfTwo;
      } else if (profile == "pow2sq") {
        g = GrowthProfile::kSquaredPowersOfTwo;
      } else {
        throw ConfigError("unknown growth profile \"" + profile + "\"");
      }
      return dimension_targeting_pair(a.get<double>(), g);
    }
  } catch (const ConstraintError& e) {
    throw ConfigError(std::string("invalid pair: ") + e.what());
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("invalid pair: ") + e.what());
  }
  throw ConfigError("unknown pair kind \"" + kind + "\"");
}

Json pair_to_json(const ScalePair& pair) {
  Json j;
  switch (pair.rule()) {
    case ScalePair::Rule::kConstant:
      j["kind"] = "constant";
      j["b"] = integer_json(pair.b(1));
      j["d"] = integer_json(pair.d(1));
      break;
    case ScalePair::Rule::kRepeatLast: {
      j["kind"] = "explicit";
      Json b = Json::array(), d = Json::array();
      for (std::size_t n = 1; n <= pair.prefix_length(); ++n) {
        b.push_back(integer_json(pair.b(n)));
        d.push_back(integer_json(pair.d(n)));
      }
      j["b"] = b;
      j["d"] = d;
      break;
    }
    case ScalePair::Rule::kAlpha:
      j["kind"] = "alpha";
      j["alpha"] = *pair.alpha();
      j["profile"] = pair.profile() == GrowthProfile::kPowersOfTwo ? "pow2" : "pow2sq";
      break;
  }
  return j;
}

std::map<Word, BigInt> parse_tree_table(const Json& doc) {
  const Json& t = doc.is_object() && doc.contains("table") ? doc.at("table") : member(doc, "tree");
  if (!t.is_array()) throw ConfigError("tree table must be an array of {word, value} entries");
  std::map<Word, BigInt> table;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const std::string where = "tree entry " + std::to_string(i);
    const Json& w = require(t[i], "word", where);
    if (!w.is_array()) throw ConfigError(where + ": word must be an array of digits");
    std::vector<Digit> digits;
    for (const auto& x : w) {
      if (!x.is_number_unsigned()) throw ConfigError(where + ": digits must be nonnegative integers");
      digits.push_back(x.get<Digit>());
    }
    Word word(std::move(digits));
    if (table.contains(word)) throw ConfigError(where + ": duplicate word " + word.str());
    table.emplace(std::move(word), parse_integer(require(t[i], "value", where), where + " value"));
  }
  return table;
}

Json tree_table_to_json(const std::map<Word, BigInt>& table) {
  Json out = Json::array();
  for (const auto& [w, v] : table) {
    Json digits = Json::array();
    for (std::size_t k = 0; k < w.size(); ++k) digits.push_back(w[k]);
    out.push_back({{"word", digits}, {"value", integer_json(v)}});
  }
  return out;
}

FilterFamily parse_filters(const Json& doc) {
  const Json& f = member(doc, "filters");
  if (!f.is_object()) throw ConfigError("filter config must be a JSON object");
  try {
    if (f.contains("levels")) {
      std::vector<std::vector<Complex>> levels;
      for (const auto& level : f.at("levels")) {
        std::vector<Complex> g;
        for (const auto& c : level) {
          if (c.is_number()) {
            g.emplace_back(c.get<double>(), 0.0);
          } else if (c.is_array() && c.size() == 2) {
            g.emplace_back(c[0].get<double>(), c[1].get<double>());
          } else {
            throw ConfigError("filter coefficients must be numbers or [re, im] pairs");
          }
        }
        if (g.empty()) throw ConfigError("filter level with no coefficients");
        levels.push_back(std::move(g));
      }
      return FilterFamily::explicit_levels(std::move(levels));
    }
    const std::string kind = f.value("kind", std::string("riesz"));
    if (kind == "riesz") return FilterFamily::riesz();
    if (kind == "modulated") return FilterFamily::modulated(f.at("multiple").get<std::uint64_t>());
    throw ConfigError("unknown filter kind \"" + kind + "\"");
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("invalid filters: ") + e.what());
  }
}

std::vector<BigInt> parse_frequency_set(const Json& doc) {
  const Json& s = member(doc, "set");
  if (!s.is_array()) throw ConfigError("frequency set must be an array of integers");
  return parse_integers(s, "set");
}

}  // namespace riesz
