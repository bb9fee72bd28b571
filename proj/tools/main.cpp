// riesz: command-line front end.
// Exit status: 0 when every check passes, 1 on a verification failure,
// 2 on a usage or configuration error.

#include <cstdio>
#include <filesystem>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "riesz/parallel.hpp"

namespace {

using riesz::cli::Options;

enum Flag : unsigned {
  kLevel = 1u << 0,
  kLmax = 1u << 1,
  kDepth = 1u << 2,
  kCount = 1u << 3,
  kTol = 1u << 4,
  kGrid = 1u << 5,
  kTerms = 1u << 6,
  kBins = 1u << 7,
  kSeed = 1u << 8,
  kFilters = 1u << 9,
  kSet = 1u << 10,
  kMaxElements = 1u << 11,
};

void add_options(CLI::App* sub, Options& o, unsigned flags, const std::string& tol_help) {
  sub->add_option("--pair", o.pair_path, "pair config (JSON)")->check(CLI::ExistingFile);
  sub->add_option("--tree", o.tree_path, "tree table (JSON); canonical mapping when omitted")
      ->check(CLI::ExistingFile);
  sub->add_option("--out", o.out, "output directory")->capture_default_str();
  sub->add_option("--threads", o.threads, "worker threads (0 = all cores)")->capture_default_str();
  sub->add_option("--budget", o.budget, "enumeration budget (words)")->capture_default_str();
  if (flags & kLevel) sub->add_option("--level", o.level, "level L");
  if (flags & kLmax) sub->add_option("--lmax", o.lmax, "largest level");
  if (flags & kDepth) sub->add_option("--depth", o.depth, "depth");
  if (flags & kCount) sub->add_option("--count", o.count, "number of samples");
  if (flags & kTol) sub->add_option("--tol", o.tol, tol_help);
  if (flags & kGrid) {
    sub->add_option("--grid", o.grid, "K: K+1 equispaced xi in [0, 1/2]")->capture_default_str();
  }
  if (flags & kTerms) sub->add_option("--terms", o.terms, "ratio terms N")->capture_default_str();
  if (flags & kBins) sub->add_option("--bins", o.bins, "histogram bins")->capture_default_str();
  if (flags & kSeed) sub->add_option("--seed", o.seed, "random seed")->capture_default_str();
  if (flags & kFilters) {
    sub->add_option("--filters", o.filters_path, "filter family (JSON)")->check(CLI::ExistingFile);
  }
  if (flags & kSet) {
    sub->add_option("--set", o.set_path, "explicit frequency set (JSON) instead of a level")
        ->check(CLI::ExistingFile);
  }
  if (flags & kMaxElements) {
    sub->add_option("--max-elements", o.max_elements, "largest set checked pairwise")
        ->capture_default_str();
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification toolkit for Riesz-product spectral measures"};
  app.require_subcommand(1);
  Options o;

  struct Subcommand {
    const char* name;
    const char* help;
    unsigned flags;
    const char* tol_help;
  };
  const Subcommand specs[] = {
      {"pair", "validate a scale pair", kDepth, ""},
      {"spectrum", "enumerate a spectrum level", kLevel, ""},
      {"orthogonality", "exact pairwise orthogonality of a level or set",
       kLevel | kSet | kMaxElements, ""},
      {"partition", "partition-of-unity defect at random xi",
       kLevel | kCount | kSeed | kTol | kFilters, "largest allowed defect (default 1e-9)"},
      {"completeness", "Q_L(xi) on a grid", kLmax | kTol | kGrid,
       "tolerance for each mu_hat value (default 1e-14)"},
      {"dimension", "dimension ratios, interval family and box counting",
       kTerms | kDepth | kTol, "box-counting tolerance for constant pairs (default 0.05)"},
      {"beurling", "windowed counts against the dimension formula", kLevel | kTol,
       "slack added to the formula value (default 0.1)"},
      {"sample", "Monte-Carlo samples of the measure", kCount | kDepth | kSeed | kBins, ""},
      {"report", "run every check into subdirectories",
       kLevel | kLmax | kCount | kGrid | kTerms | kBins | kSeed | kFilters | kSet |
           kMaxElements,
       ""},
  };
  for (const auto& s : specs) add_options(app.add_subcommand(s.name, s.help), o, s.flags, s.tol_help);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const CLI::App* chosen = app.get_subcommands().front();
  const std::string name = chosen->get_name();
  try {
    riesz::set_thread_limit(o.threads);
    const riesz::cli::Inputs in = riesz::cli::load_inputs(o);
    const std::filesystem::path out(o.out);
    std::filesystem::create_directories(out);
    bool pass = false;
    if (name == "report") {
      pass = riesz::cli::run_report(in, o, out);
    } else {
      for (const auto& [n, command] : riesz::cli::commands()) {
        if (n == name) pass = command(in, o, out);
      }
    }
    std::printf("%s: %s (artifacts in %s)\n", name.c_str(), pass ? "PASS" : "FAIL",
                out.string().c_str());
    return pass ? 0 : 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "%s: error: %s\n", name.c_str(), e.what());
    return 2;
  }
}
