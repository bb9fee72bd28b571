#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "output.hpp"
#include "riesz/dimension.hpp"
#include "riesz/fourier.hpp"
#include "riesz/random.hpp"
#include "riesz/sampling.hpp"
#include "riesz/verify.hpp"
#include "svg.hpp"

namespace riesz::cli {

namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kPartitionStream = 0x7061727469746e;
constexpr std::size_t kMaxListed = 20;

Json integer_json(const BigInt& v) { return v.str(); }

// Largest L <= cap whose level has at most max_words words (at least 1).
std::size_t auto_level(const ScalePair& pair, std::size_t cap, std::uint64_t max_words) {
  for (std::size_t L = cap; L >= 2; --L) {
    const auto wc = word_count(pair, L);
    if (wc && *wc <= max_words) return L;
  }
  return 1;
}

Json resolved_config(const Inputs& in, const Json& parameters) {
  Json c;
  c["pair"] = pair_to_json(*in.pair);
  c["tree"] = tree_table_to_json(in.table);
  c["filters"] = in.filters_doc;
  c["parameters"] = parameters;
  return c;
}

bool emit(const std::string& name, const Inputs& in, const Json& parameters, Json result,
          bool pass, const fs::path& out) {
  Json doc;
  doc["command"] = name;
  doc["config"] = resolved_config(in, parameters);
  doc["result"] = std::move(result);
  doc["pass"] = pass;
  write_json(out / (name + ".json"), doc);
  return pass;
}

Json tree_json(const TreeReport& r) {
  Json j;
  j["valid"] = r.ok;
  j["depth"] = r.depth;
  j["violation_count"] = r.violations.size();
  Json list = Json::array();
  for (std::size_t i = 0; i < std::min(r.violations.size(), kMaxListed); ++i) {
    const auto& v = r.violations[i];
    list.push_back({{"condition", v.condition}, {"word", v.word.str()}, {"detail", v.detail}});
  }
  j["violations"] = list;
  return j;
}

double signed_log10(const BigInt& v) {
  if (v == 0) return 0.0;
  const double m = std::log10(1.0 + std::abs(to_double(v)));
  return v < 0 ? -m : m;
}

// ------------------------------------------------------------------ pair

bool cmd_pair(const Inputs& in, const Options& opts, const fs::path& out) {
  const ScalePair& p = *in.pair;
  const std::size_t depth = opts.depth.value_or(8);
  const PairReport r = validate_pair(p, depth);

  CsvWriter csv(out / "pair.csv", {"n", "b", "d", "rho", "d_rho"});
  BigInt rho_n = 1;
  for (std::size_t n = 1; n <= depth; ++n) {
    csv.row({std::to_string(n), p.b(n).str(), p.d(n).str(), rho_n.str(), BigInt(p.d(n) * rho_n).str()});
    rho_n *= p.b(n);
  }

  Json result;
  result["description"] = p.describe();
  result["depth"] = depth;
  result["valid"] = r.ok;
  if (r.first_violation) {
    result["first_violation"] = {{"level", r.first_violation->level},
                                 {"constraint", r.first_violation->constraint},
                                 {"detail", r.first_violation->detail}};
  } else {
    result["first_violation"] = nullptr;
  }
  result["eventually_constant"] = p.eventually_constant();
  return emit("pair", in, {{"depth", depth}}, result, r.ok, out);
}

// -------------------------------------------------------------- spectrum

bool cmd_spectrum(const Inputs& in, const Options& opts, const fs::path& out) {
  const ScalePair& p = *in.pair;
  const std::size_t L = opts.level.value_or(auto_level(p, 4, opts.budget));
  const TreeMapping tm = in.tree();
  const TreeReport tr = validate_tree_mapping(tm, L);
  const SpectrumLevel level = enumerate_level(tm, L, opts.budget);

  CsvWriter csv(out / "spectrum.csv", {"index", "lambda"});
  Series s{"Lambda_" + std::to_string(L), {}, {}, true};
  for (std::size_t i = 0; i < level.elements.size(); ++i) {
    csv.row({std::to_string(i), level.elements[i].str()});
    s.x.push_back(static_cast<double>(i));
    s.y.push_back(signed_log10(level.elements[i]));
  }
  write_text(out / "spectrum.svg",
             render_plot({"Spectrum level L = " + std::to_string(L), "index (sorted)",
                          "sign(lambda) log10(1 + |lambda|)", {s}, {}}));

  Json result;
  result["level"] = L;
  result["word_count"] = level.word_count;
  result["element_count"] = level.elements.size();
  result["min"] = level.elements.empty() ? Json(nullptr) : integer_json(level.elements.front());
  result["max"] = level.elements.empty() ? Json(nullptr) : integer_json(level.elements.back());
  result["collision_count"] = level.collision_count;
  Json collisions = Json::array();
  for (std::size_t i = 0; i < std::min(level.collisions.size(), kMaxListed); ++i) {
    const auto& c = level.collisions[i];
    collisions.push_back({{"value", integer_json(c.value)},
                          {"first", c.first.str()},
                          {"second", c.second.str()}});
  }
  result["collisions"] = collisions;
  result["tree"] = tree_json(tr);
  const bool pass = tr.ok && level.collision_count == 0;
  return emit("spectrum", in, {{"level", L}, {"budget", opts.budget}}, result, pass, out);
}

// --------------------------------------------------------- orthogonality

bool cmd_orthogonality(const Inputs& in, const Options& opts, const fs::path& out) {
  const ScalePair& p = *in.pair;
  OrthogonalityOptions o;
  o.max_elements = opts.max_elements;
  Json params;
  Json result;
  OrthogonalityReport r;
  bool tree_ok = true;
  if (in.set) {
    params["set_size"] = in.set->size();
    r = orthogonality_check(*in.set, p, o);
  } else {
    const std::size_t L = opts.level.value_or(auto_level(p, 4, opts.max_elements));
    params["level"] = L;
    const TreeMapping tm = in.tree();
    const TreeReport tr = validate_tree_mapping(tm, L);
    tree_ok = tr.ok;
    result["tree"] = tree_json(tr);
    r = orthogonality_check(enumerate_level(tm, L, opts.budget), p, o);
  }
  params["max_elements"] = opts.max_elements;

  CsvWriter csv(out / "orthogonality.csv", {"lambda", "lambda_prime", "difference"});
  for (const auto& [a, b] : r.violations) csv.row({a.str(), b.str(), BigInt(b - a).str()});

  result["element_count"] = r.element_count;
  result["pairs_checked"] = r.pairs_checked;
  result["violation_count"] = r.violation_count;
  result["violations_listed"] = r.violations.size();
  if (!r.violations.empty()) {
    result["first_witness"] = {integer_json(r.violations[0].first),
                               integer_json(r.violations[0].second)};
  }
  return emit("orthogonality", in, params, result, r.pass && tree_ok, out);
}

// ------------------------------------------------------------- partition

bool cmd_partition(const Inputs& in, const Options& opts, const fs::path& out) {
  const ScalePair& p = *in.pair;
  const std::size_t L = opts.level.value_or(auto_level(p, 8, 1 << 16));
  const std::uint64_t count = opts.count.value_or(50);
  const double tol = opts.tol.value_or(1e-9);
  const TreeMapping tm = in.tree();
  const TreeReport tr = validate_tree_mapping(tm, L);
  Json params = {{"level", L}, {"count", count}, {"seed", opts.seed}, {"tol", tol}};
  Json result;
  result["tree"] = tree_json(tr);

  std::optional<CertifiedFilters> certified;
  if (in.filters) {
    const FilterCertificate cert = certify_filters(*in.filters, p, std::max<std::size_t>(L, 12));
    Json c = {{"ok", cert.ok}, {"depth", cert.depth}, {"D0", number_json(cert.D0)},
              {"D1", number_json(cert.D1)}, {"problems", cert.problems}};
    Json levels = Json::array();
    for (const auto& l : cert.levels) {
      levels.push_back({{"n", l.n},
                        {"d", l.d},
                        {"degree", l.degree},
                        {"g0_defect", number_json(l.g0_defect)},
                        {"qmf_max_defect", number_json(l.qmf.max_defect)},
                        {"qmf_grid_defect", number_json(l.qmf.grid_defect)},
                        {"window_lower_bound", number_json(l.window_lower_bound)},
                        {"ok", l.ok}});
    }
    c["levels"] = levels;
    result["filter_certificate"] = c;
    if (!cert.ok) {
      CsvWriter csv(out / "partition.csv", {"xi", "L", "sum", "defect"});
      return emit("partition", in, params, result, false, out);
    }
    certified.emplace(*in.filters, p, std::max<std::size_t>(L, 12));
  }

  CsvWriter csv(out / "partition.csv", {"xi", "L", "sum", "defect"});
  std::vector<double> worst_by_level(L, 0.0);
  for (std::uint64_t k = 0; k < count; ++k) {
    const double xi =
        static_cast<double>(counter_random(opts.seed, kPartitionStream, k) >> 11) * 0x1p-53;
    for (std::size_t l = 1; l <= L; ++l) {
      const PartitionResult r =
          partition_identity(tm, xi, l, certified ? &*certified : nullptr, opts.budget);
      csv.row({fmt(xi), std::to_string(l), fmt(r.sum), fmt(r.defect)});
      worst_by_level[l - 1] = std::max(worst_by_level[l - 1], r.defect);
    }
  }
  const double worst = *std::max_element(worst_by_level.begin(), worst_by_level.end());
  Json per_level = Json::array();
  for (double w : worst_by_level) per_level.push_back(number_json(w));
  result["worst_defect"] = number_json(worst);
  result["worst_defect_by_level"] = per_level;
  return emit("partition", in, params, result, tr.ok && worst <= tol, out);
}

// ---------------------------------------------------------- completeness

bool cmd_completeness(const Inputs& in, const Options& opts, const fs::path& out) {
  const ScalePair& p = *in.pair;
  const std::size_t lmax = opts.lmax.value_or(auto_level(p, 12, 1 << 16));
  const double tol = opts.tol.value_or(1e-14);
  const TreeMapping tm = in.tree();
  const TreeReport tr = validate_tree_mapping(tm, lmax);
  const auto grid = completeness_grid(opts.grid);
  const CompletenessReport r = completeness_Q(tm, grid, lmax, tol, opts.budget);

  CsvWriter csv(out / "completeness.csv",
                {"xi", "L", "Q", "certified_slack", "monotone_ok", "bound_ok"});
  std::vector<Series> curves;
  for (const auto& row : r.rows) {
    csv.row({fmt(row.xi), std::to_string(row.L), fmt(row.Q), fmt(row.slack),
             row.monotone_ok ? "1" : "0", row.bound_ok ? "1" : "0"});
    if (row.L == 1) curves.push_back({"xi=" + fmt(row.xi), {}, {}, false});
    curves.back().x.push_back(static_cast<double>(row.L));
    curves.back().y.push_back(std::log10(std::max(1.0 - row.Q, 1e-17)));
  }
  write_text(out / "completeness.svg",
             render_plot({"Convergence of Q_L(xi)", "L", "log10(1 - Q_L(xi))", curves, {}}));

  Json result;
  result["grid_points"] = grid.size();
  result["L_max"] = lmax;
  result["monotone"] = r.monotone;
  result["bounded"] = r.bounded;
  result["worst_gap"] = number_json(r.worst_gap);
  result["worst_gap_xi"] = number_json(r.worst_gap_xi);
  result["monotone_slack"] = kMonotoneSlack;
  result["tree"] = tree_json(tr);
  const bool pass = tr.ok && r.monotone && r.bounded;
  return emit("completeness", in, {{"grid", opts.grid}, {"lmax", lmax}, {"tol", tol}}, result,
              pass, out);
}

// ------------------------------------------------------------- dimension

std::size_t auto_box_depth(const ScalePair& p, std::uint64_t budget) {
  std::size_t best = 2;
  for (std::size_t L = 2; L <= 64; ++L) {
    const auto wc = word_count(p, L);
    if (!wc || *wc > budget) break;
    best = L;
    if (*wc >= 1000) break;
  }
  return best;
}

bool cmd_dimension(const Inputs& in, const Options& opts, const fs::path& out) {
  const ScalePair& p = *in.pair;
  const std::size_t N = opts.terms;
  const double tol = opts.tol.value_or(0.05);
  const GapRatios gr = gap_ratios(p, N);
  const HausdorffReport h = hausdorff_dim_formula(p, N);

  CsvWriter csv(out / "dimension.csv", {"n", "b", "d", "r", "log_inv_r", "s"});
  Series curve{"s_n", {}, {}, false};
  for (std::size_t n = 1; n <= N; ++n) {
    csv.row({std::to_string(n), p.b(n).str(), p.d(n).str(), fmt(gr.r[n - 1]),
             fmt(gr.log_inv_r[n - 1]), fmt(h.ratios[n - 1])});
    curve.x.push_back(static_cast<double>(n));
    curve.y.push_back(static_cast<double>(h.ratios[n - 1]));
  }
  write_text(out / "dimension.svg",
             render_plot({"Cumulative dimension ratios (dashed: trailing infimum)", "n", "s_n",
                          {curve}, {static_cast<double>(h.trailing_inf)}}));

  const std::size_t depth = opts.depth.value_or(auto_box_depth(p, opts.budget));
  const BoxCountingReport box = box_counting_dim(p, depth, opts.budget);
  CsvWriter bcsv(out / "box.csv", {"log_inv_size", "log_count"});
  for (std::size_t i = 0; i < box.log_count.size(); ++i) {
    bcsv.row({fmt(box.log_inv_size[i]), fmt(box.log_count[i])});
  }
  const IntervalCheck check = check_interval_family(p, depth, opts.budget);

  const std::size_t export_depth = std::min(depth, auto_level(p, depth, 4096));
  const IntervalFamily family = build_intervals(p, export_depth, opts.budget);
  CsvWriter icsv(out / "intervals.csv", {"word", "left", "right"});
  for (const auto& iv : family.intervals) {
    icsv.row({iv.word.str(), to_string(iv.left), to_string(iv.right)});
  }

  const bool compared = p.rule() == ScalePair::Rule::kConstant;
  const double diff = std::abs(box.slope - static_cast<double>(h.value));
  Json result;
  result["terms"] = N;
  result["s_N"] = number_json(static_cast<double>(h.value));
  result["trailing_inf"] = number_json(static_cast<double>(h.trailing_inf));
  result["rd_ok"] = gr.rd_ok;
  result["first_rd_failure"] = gr.first_rd_failure;
  result["ratios_exact"] = gr.exact;
  result["ratio_relative_error"] = number_json(gr.relative_error);
  result["box"] = {{"depth", depth},
                   {"intervals", box.intervals},
                   {"slope", number_json(box.slope)},
                   {"residual", number_json(box.residual)},
                   {"compared", compared},
                   {"difference", number_json(diff)},
                   {"tolerance", tol}};
  result["interval_check"] = {{"depth", depth}, {"ok", check.ok}, {"problem", check.problem}};
  result["intervals_exported_depth"] = export_depth;
  const bool pass = gr.rd_ok && check.ok && (!compared || diff <= tol);
  return emit("dimension", in, {{"terms", N}, {"depth", depth}, {"tol", tol}}, result, pass, out);
}

// -------------------------------------------------------------- beurling

bool cmd_beurling(const Inputs& in, const Options& opts, const fs::path& out) {
  const ScalePair& p = *in.pair;
  const std::size_t L = opts.level.value_or(auto_level(p, 8, 1 << 16));
  const double slack = opts.tol.value_or(kBeurlingSlack);
  const TreeMapping tm = in.tree();
  const TreeReport tr = validate_tree_mapping(tm, L);
  const BeurlingReport br = beurling_upper_dim(enumerate_level(tm, L, opts.budget));
  const BeurlingHausdorffReport bh = beurling_vs_hausdorff(tm, L, slack);

  CsvWriter csv(out / "beurling.csv", {"h", "sup_count"});
  Series pts{"sup count", {}, {}, true};
  for (std::size_t i = 0; i < br.h.size(); ++i) {
    csv.row({fmt(br.h[i]), std::to_string(br.sup_count[i])});
    pts.x.push_back(std::log10(br.h[i]));
    pts.y.push_back(std::log10(static_cast<double>(br.sup_count[i])));
  }
  std::vector<Series> series{pts};
  if (!pts.x.empty()) {
    const auto [slope, residual] = fit_line(pts.x, pts.y);
    (void)residual;
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < pts.x.size(); ++i) mx += pts.x[i], my += pts.y[i];
    mx /= static_cast<double>(pts.x.size());
    my /= static_cast<double>(pts.y.size());
    Series fit{"fit", {}, {}, false};
    for (double x : {pts.x.front(), pts.x.back()}) {
      fit.x.push_back(x);
      fit.y.push_back(my + slope * (x - mx));
    }
    series.push_back(fit);
  }
  write_text(out / "beurling.svg",
             render_plot({"Windowed counts, level L = " + std::to_string(L), "log10 h",
                          "log10 sup count", series, {}}));

  Json result;
  result["level"] = L;
  result["beurling_estimate"] = number_json(bh.beurling);
  result["hausdorff_formula"] = number_json(bh.hausdorff);
  result["slack"] = slack;
  result["tree"] = tree_json(tr);
  return emit("beurling", in, {{"level", L}, {"slack", slack}}, result, tr.ok && bh.pass, out);
}

// ---------------------------------------------------------------- sample

bool cmd_sample(const Inputs& in, const Options& opts, const fs::path& out) {
  const ScalePair& p = *in.pair;
  const std::uint64_t count = opts.count.value_or(100'000);
  const std::size_t depth = opts.depth.value_or(default_sample_depth(p));
  const SampleSet s = sample_measure(p, count, depth, opts.seed);

  {
    CsvWriter csv(out / "samples.csv", {"index", "x"});
    for (std::size_t k = 0; k < s.values.size(); ++k) csv.row({std::to_string(k), fmt(s.values[k])});
  }
  const double hi = s.support_right > 0.0 ? s.support_right : 1.0;
  const Histogram hist = histogram(s.values, opts.bins, 0.0, hi);
  {
    CsvWriter csv(out / "histogram.csv", {"bin", "lo", "hi", "count"});
    const double width = (hist.hi - hist.lo) / static_cast<double>(hist.counts.size());
    for (std::size_t b = 0; b < hist.counts.size(); ++b) {
      csv.row({std::to_string(b), fmt(hist.lo + width * static_cast<double>(b)),
               fmt(hist.lo + width * static_cast<double>(b + 1)), std::to_string(hist.counts[b])});
    }
  }
  write_text(out / "sample.svg",
             render_histogram("Histogram of " + std::to_string(count) + " samples", "x", hist.lo,
                              hist.hi, hist.counts));

  const double n = static_cast<double>(count);
  const double mean = empirical_moment(s.values, 1);
  const double expected = static_cast<double>(expected_mean(p, depth));
  const double variance = empirical_variance(s.values);
  const double mean_band = 5.0 * std::sqrt(variance) / std::sqrt(n);
  const bool mean_ok = std::abs(mean - expected) <= mean_band;

  Json cf = Json::array();
  bool cf_ok = true;
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    const double xi = 0.1 + 0.37 * k;
    const Complex e = empirical_char(s.values, xi);
    const Certified m = mu_hat(p, xi, 1e-12);
    const double err = std::abs(e - m.value);
    const double band =
        5.0 / std::sqrt(n) + 2.0 * std::numbers::pi * xi * s.truncation_radius + m.radius;
    cf_ok = cf_ok && err <= band;
    worst = std::max(worst, err);
    cf.push_back({{"xi", number_json(xi)},
                  {"empirical", {number_json(e.real()), number_json(e.imag())}},
                  {"mu_hat", {number_json(m.value.real()), number_json(m.value.imag())}},
                  {"error", number_json(err)},
                  {"band", number_json(band)}});
  }

  Json result;
  result["count"] = count;
  result["depth"] = depth;
  result["truncation_radius"] = number_json(s.truncation_radius);
  result["support_right"] = number_json(s.support_right);
  Json moments = Json::array();
  for (int k = 1; k <= 4; ++k) moments.push_back(number_json(empirical_moment(s.values, k)));
  result["moments"] = moments;
  result["variance"] = number_json(variance);
  result["mean"] = {{"empirical", number_json(mean)},
                    {"expected", number_json(expected)},
                    {"band", number_json(mean_band)},
                    {"ok", mean_ok}};
  result["characteristic_function"] = {{"worst_error", number_json(worst)}, {"ok", cf_ok},
                                       {"frequencies", cf}};
  return emit("sample", in, {{"count", count}, {"depth", depth}, {"seed", opts.seed}, {"bins", opts.bins}},
              result, mean_ok && cf_ok, out);
}

}  // namespace

Inputs load_inputs(const Options& opts) {
  Inputs in;
  Json tree_doc;
  if (!opts.tree_path.empty()) {
    tree_doc = load_json(opts.tree_path);
    in.table = parse_tree_table(tree_doc);
  }
  if (!opts.pair_path.empty()) {
    in.pair = parse_pair(load_json(opts.pair_path));
  } else if (tree_doc.is_object() && tree_doc.contains("pair")) {
    in.pair = parse_pair(tree_doc);
  } else {
    throw ConfigError("no pair given (use --pair or a tree document with a \"pair\" member)");
  }
  if (!opts.filters_path.empty()) {
    in.filters_doc = load_json(opts.filters_path);
    in.filters = parse_filters(in.filters_doc);
  }
  if (!opts.set_path.empty()) in.set = parse_frequency_set(load_json(opts.set_path));
  return in;
}

const std::vector<std::pair<std::string, Command>>& commands() {
  static const std::vector<std::pair<std::string, Command>> list = {
      {"pair", cmd_pair},
      {"spectrum", cmd_spectrum},
      {"orthogonality", cmd_orthogonality},
      {"partition", cmd_partition},
      {"completeness", cmd_completeness},
      {"dimension", cmd_dimension},
      {"beurling", cmd_beurling},
      {"sample", cmd_sample},
  };
  return list;
}

bool run_report(const Inputs& in, const Options& opts, const fs::path& out) {
  Json checks = Json::array();
  CsvWriter csv(out / "report.csv", {"check", "pass", "error"});
  bool all = true;
  for (const auto& [name, command] : commands()) {
    const fs::path dir = out / name;
    fs::create_directories(dir);
    bool pass = false;
    std::string error;
    try {
      pass = command(in, opts, dir);
    } catch (const std::exception& e) {
      error = e.what();
    }
    all = all && pass;
    Json c = {{"name", name}, {"pass", pass}};
    if (!error.empty()) c["error"] = error;
    checks.push_back(c);
    std::string quoted = error;
    std::replace(quoted.begin(), quoted.end(), '"', '\'');
    csv.row({name, pass ? "1" : "0", error.empty() ? "" : "\"" + quoted + "\""});
  }
  Json result;
  result["checks"] = checks;
  return emit("report", in, Json::object(), result, all, out);
}

}  // namespace riesz::cli
