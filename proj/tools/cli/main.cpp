#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "acceptance.hpp"
#include "comatroid/canonical.hpp"
#include "comatroid/census.hpp"
#include "comatroid/constructions.hpp"
#include "comatroid/decide.hpp"
#include "comatroid/error.hpp"
#include "comatroid/text_format.hpp"

namespace {

using namespace comatroid;

constexpr int kExitTrue = 0;
constexpr int kExitFalse = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;

std::string read_text(const std::string& path) {
  if (path == "-") {
    std::ostringstream buffer;
    buffer << std::cin.rdbuf();
    return buffer.str();
  }
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// "catalog:<name>" or a path ("-" for stdin) in the matroid text format.
LabeledMatroid load(const std::string& input) {
  constexpr std::string_view prefix = "catalog:";
  if (input.rfind(prefix, 0) == 0) return embed_labeled(named(input.substr(prefix.size())));
  return parse_matroid(read_text(input));
}

std::string label_list(const LabeledMatroid& lm, const PointSet& s) {
  std::string out;
  for (std::size_t c = 0; c < lm.points.size(); ++c) {
    if (s.test(lm.points[c])) out += (out.empty() ? "" : ",") + lm.labels[c];
  }
  return out;
}

std::vector<std::string> split_labels(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// Memo of recursive verdicts kept in $COMATROID_CACHE_DIR, if set.
class CachedMemo {
 public:
  CachedMemo() {
    if (const char* dir = std::getenv("COMATROID_CACHE_DIR"); dir != nullptr && *dir != '\0') {
      path_ = (std::filesystem::path(dir) / "decisions.txt").string();
      memo_.load(path_);
      loaded_ = memo_.size();
    }
  }
  ~CachedMemo() {
    if (path_.empty() || memo_.size() == loaded_) return;
    try {
      std::filesystem::create_directories(std::filesystem::path(path_).parent_path());
      memo_.save(path_);
    } catch (const std::exception& e) {
      std::cerr << "warning: " << e.what() << '\n';
    }
  }
  DecisionMemo* get() { return path_.empty() ? nullptr : &memo_; }

 private:
  std::string path_;
  DecisionMemo memo_;
  std::size_t loaded_ = 0;
};

int run_decide(const std::string& input, const std::string& method, bool certificate, const std::string& replay) {
  const LabeledMatroid lm = load(input);
  if (!replay.empty()) {
    const ReplayResult result = replay_certificate(lm.matroid, read_text(replay));
    if (!result.valid) {
      std::cout << "invalid certificate: " << result.error << '\n';
      return kExitUsage;
    }
    std::cout << "valid certificate: " << (result.verdict ? "comatroid" : "not a comatroid") << '\n';
    return result.verdict ? kExitTrue : kExitFalse;
  }
  std::vector<Method> methods;
  if (method == "recursive" || method == "all") methods.push_back(Method::Recursive);
  if (method == "flats" || method == "all") methods.push_back(Method::FlatCriterion);
  if (method == "forbidden" || method == "all") methods.push_back(Method::ForbiddenFlats);
  CachedMemo memo;
  DecideOptions options;
  options.certificate = certificate;
  options.memo = memo.get();
  std::optional<bool> verdict;
  for (Method m : methods) {
    const Verdict v = decide(lm.matroid, m, options);
    std::cout << method_name(m) << ": " << (v.is_comatroid ? "comatroid" : "not a comatroid") << '\n';
    if (certificate) std::cout << v.certificate;
    if (verdict && *verdict != v.is_comatroid) throw Error("deciders disagree");
    verdict = v.is_comatroid;
  }
  return *verdict ? kExitTrue : kExitFalse;
}

int run_hyperplanes(const std::string& input, bool count, bool all) {
  const LabeledMatroid lm = load(input);
  if (count) {
    std::cout << count_connected_hyperplanes(lm.matroid) << '\n';
    return kExitTrue;
  }
  for (const auto& h : hyperplanes(lm.matroid)) {
    const bool connected = is_connected(lm.matroid.space, h.members);
    if (!all && !connected) continue;
    std::cout << label_list(lm, h.members);
    if (all) std::cout << (connected ? " connected" : " disconnected");
    std::cout << '\n';
  }
  return kExitTrue;
}

int run_info(const std::string& input) {
  const LabeledMatroid lm = load(input);
  const EmbeddedMatroid& m = lm.matroid;
  std::cout << "field GF(" << m.space->q() << ")\n";
  std::cout << "elements " << m.size() << '\n';
  std::cout << "rank " << matroid_rank(m) << '\n';
  std::cout << "components " << components(m, m.green).size() << '\n';
  if (m.size() <= kBruteForceCap) std::cout << "vertical-connectivity " << vertical_connectivity(m, m.green) << '\n';
  if (m.size() > 0) std::cout << "min-cocircuit " << cocircuits_min_size(m) << '\n';
  std::cout << "hyperplanes " << hyperplanes(m).size() << '\n';
  std::cout << "connected-hyperplanes " << count_connected_hyperplanes(m) << '\n';
  if (matroid_rank(m) <= kCanonicalRankCap) std::cout << "canonical " << canonical_form(m) << '\n';
  if (matroid_rank(m) <= kDecideRankCap) std::cout << "comatroid " << (is_comatroid(m) ? "yes" : "no") << '\n';
  return kExitTrue;
}

int run_census_colorings(int rank, int q, const std::string& filter, bool dedup, std::optional<std::uint64_t> seed,
                         std::size_t samples, unsigned jobs, bool tsv) {
  ColoringOptions options;
  options.dedup = dedup;
  options.seed = seed;
  options.samples = samples;
  options.jobs = jobs;
  const CensusReport report =
      enumerate_colorings(PointSpace::get(field_from_order(q), rank), named_filter(filter), options, filter);
  std::cout << format_report(report, tsv);
  return kExitTrue;
}

int run_census_scan(const std::string& seed, int max_extra, unsigned jobs, bool tsv) {
  const bool is_file = std::filesystem::exists(seed);
  const EmbeddedMatroid m = is_file ? parse_matroid(read_text(seed)).matroid : embed(named(seed));
  const ExtensionScan scan = hyperplane_scan(m, max_extra, jobs);
  std::cout << format_scan(scan, seed, tsv);
  return scan.survivors.empty() ? kExitTrue : kExitFalse;
}

int run_verify(const std::vector<int>& ids, unsigned jobs, std::uint64_t seed) {
  acceptance::Options options;
  options.jobs = jobs;
  options.seed = seed;
  bool pass = true;
  for (const auto& c : acceptance::manifest()) {
    if (!ids.empty() && std::find(ids.begin(), ids.end(), c.id) == ids.end()) continue;
    const auto reports = acceptance::run(options, {c.id});
    std::cout << acceptance::format(reports.front()) << std::endl;
    pass = pass && reports.front().pass;
  }
  return pass ? kExitTrue : kExitFalse;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decide and explore binary and ternary comatroids."};
  app.require_subcommand(1);
  int exit_code = kExitTrue;
  const auto set = [&](int code) { exit_code = code; };

  std::string input;
  const auto add_input = [&](CLI::App* cmd) {
    cmd->add_option("input", input, "matroid file, '-' for stdin, or catalog:<name>")->required();
  };

  auto* decide_cmd = app.add_subcommand("decide", "decide whether a matroid is a comatroid");
  std::string method = "recursive";
  bool certificate = false;
  std::string replay;
  add_input(decide_cmd);
  decide_cmd->add_option("--method", method, "decider")
      ->check(CLI::IsMember({"recursive", "flats", "forbidden", "all"}))
      ->capture_default_str();
  decide_cmd->add_flag("--certificate", certificate, "print a replayable certificate");
  decide_cmd->add_option("--replay", replay, "check a certificate file instead of deciding");
  decide_cmd->callback([&] { set(run_decide(input, method, certificate, replay)); });

  auto* complement_cmd = app.add_subcommand("complement", "complement inside PG(t-1,q)");
  int t = -1;
  add_input(complement_cmd);
  complement_cmd->add_option("--t", t, "ambient rank, default r(M)");
  complement_cmd->callback([&] { std::cout << format_matroid(complement(load(input).matroid, t)); });

  auto* contract_cmd = app.add_subcommand("contract", "contract an element and simplify");
  std::string element;
  add_input(contract_cmd);
  contract_cmd->add_option("--element", element, "element label")->required();
  contract_cmd->callback([&] {
    const LabeledMatroid lm = load(input);
    const PointSet e = lm.select({element});
    std::cout << format_matroid(si_contract(lm.matroid, static_cast<PointIndex>(e.find_first())));
  });

  auto* restrict_cmd = app.add_subcommand("restrict", "restrict to a flat");
  std::string flat;
  add_input(restrict_cmd);
  restrict_cmd->add_option("--flat", flat, "comma-separated element labels")->required();
  restrict_cmd->callback([&] {
    const LabeledMatroid lm = load(input);
    std::cout << format_matroid(restrict_to_flat(lm.matroid, lm.select(split_labels(flat))));
  });

  auto* hyperplanes_cmd = app.add_subcommand("hyperplanes", "list connected hyperplanes");
  bool count = false;
  bool all_hyperplanes = false;
  add_input(hyperplanes_cmd);
  hyperplanes_cmd->add_flag("--count", count, "print only the number of connected hyperplanes");
  hyperplanes_cmd->add_flag("--all", all_hyperplanes, "list every hyperplane with its connectivity");
  hyperplanes_cmd->callback([&] { set(run_hyperplanes(input, count, all_hyperplanes)); });

  auto* info_cmd = app.add_subcommand("info", "summary of matroid invariants");
  add_input(info_cmd);
  info_cmd->callback([&] { set(run_info(input)); });

  auto* catalog_cmd = app.add_subcommand("catalog", "named matroids");
  catalog_cmd->require_subcommand(1);
  catalog_cmd->add_subcommand("list", "list fixed names")->callback([] {
    for (const auto& name : catalog_names()) std::cout << name << '\n';
  });
  auto* show_cmd = catalog_cmd->add_subcommand("show", "print a named matroid");
  std::string name;
  show_cmd->add_option("name", name)->required();
  show_cmd->callback([&] { std::cout << format_presentation(named(name)); });

  auto* census_cmd = app.add_subcommand("census", "exhaustive and targeted searches");
  census_cmd->require_subcommand(1);
  unsigned jobs = 0;
  bool tsv = false;
  int q = 2;
  int rank = 3;
  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--jobs", jobs, "worker threads, 0 for all cores");
    cmd->add_flag("--tsv", tsv, "tab-separated output");
  };
  auto* minimal_cmd = census_cmd->add_subcommand("minimal", "minimal non-comatroids of a given rank");
  minimal_cmd->add_option("--q", q)->required()->check(CLI::IsMember({2, 3}));
  minimal_cmd->add_option("--rank", rank)->required();
  add_common(minimal_cmd);
  minimal_cmd->callback([&] {
    std::cout << format_report(minimal_non_comatroids(rank, field_from_order(q), jobs), tsv);
  });

  auto* scan_cmd = census_cmd->add_subcommand("scan", "connected-hyperplane scan over extensions in PG(4,2)");
  std::string seed_name;
  int max_extra = 10;
  scan_cmd->add_option("--seed", seed_name, "matroid file or catalog name")->required();
  scan_cmd->add_option("--max-extra", max_extra)->capture_default_str();
  add_common(scan_cmd);
  scan_cmd->callback([&] { set(run_census_scan(seed_name, max_extra, jobs, tsv)); });

  auto* colorings_cmd = census_cmd->add_subcommand("colorings", "filter all colorings of a small geometry");
  std::string filter = "all";
  bool dedup = false;
  std::optional<std::uint64_t> sample_seed;
  std::size_t samples = 10000;
  colorings_cmd->add_option("--q", q)->required()->check(CLI::IsMember({2, 3}));
  colorings_cmd->add_option("--rank", rank)->required();
  colorings_cmd->add_option("--filter", filter)->check(CLI::IsMember(filter_names()))->capture_default_str();
  colorings_cmd->add_flag("--dedup", dedup, "one line per isomorphism class");
  colorings_cmd->add_option("--seed", sample_seed, "sample random colorings with this seed");
  colorings_cmd->add_option("--samples", samples)->capture_default_str();
  add_common(colorings_cmd);
  colorings_cmd->callback(
      [&] { set(run_census_colorings(rank, q, filter, dedup, sample_seed, samples, jobs, tsv)); });

  auto* rank5_cmd = census_cmd->add_subcommand("rank5", "minimal binary non-comatroids of rank 5 up to a size");
  std::size_t max_size = 9;
  rank5_cmd->add_option("--max-size", max_size)->capture_default_str();
  add_common(rank5_cmd);
  rank5_cmd->callback([&] { std::cout << format_report(rank5_binary_minimal(max_size, jobs), tsv); });

  auto* verify_cmd = app.add_subcommand("verify", "run the acceptance checks");
  std::vector<int> criteria;
  std::uint64_t seed = acceptance::Options{}.seed;
  verify_cmd->add_option("--criterion", criteria, "run only these criteria");
  verify_cmd->add_option("--jobs", jobs, "worker threads, 0 for all cores");
  verify_cmd->add_option("--seed", seed, "seed for the randomized checks")->capture_default_str();
  verify_cmd->callback([&] { set(run_verify(criteria, jobs, seed)); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  } catch (const ResourceLimitError& e) {
    std::cerr << "resource limit: " << e.what() << '\n';
    return kExitResource;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return exit_code;
}
