#include "acceptance.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <map>
#include <mutex>
#include <random>
#include <set>
#include <sstream>

#include "comatroid/canonical.hpp"
#include "comatroid/census.hpp"
#include "comatroid/constructions.hpp"
#include "comatroid/decide.hpp"
#include "comatroid/error.hpp"
#include "comatroid/parallel.hpp"

namespace comatroid::acceptance {
namespace {

std::vector<PointSet> all_colorings(const SpacePtr& space) {
  const std::size_t n = space->size();
  std::vector<PointSet> out;
  out.reserve(std::size_t{1} << n);
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) out.emplace_back(n, mask);
  return out;
}

std::string fmt(const char* pattern, auto... args) {
  char buffer[512];
  std::snprintf(buffer, sizeof buffer, pattern, args...);
  return buffer;
}

// Collects the first few counterexamples seen by worker threads.
class Failures {
 public:
  void add(std::string what) {
    std::lock_guard lock(mutex_);
    if (++count_ <= 3) examples_.push_back(std::move(what));
  }
  bool empty() const { return count_ == 0; }
  std::string describe() const {
    std::string out = std::to_string(count_) + " failures";
    for (const auto& e : examples_) out += "; " + e;
    return out;
  }

 private:
  std::mutex mutex_;
  std::size_t count_ = 0;
  std::vector<std::string> examples_;
};

std::string points(const PointSet& s) {
  std::string out;
  for_each_point(s, [&](PointIndex p) { out += (out.empty() ? "" : ",") + std::to_string(p); });
  return "{" + out + "}";
}

// ---- 1 ----------------------------------------------------------------------

Outcome decider_agreement(const Options& options) {
  std::string detail;
  Failures failures;
  for (const auto& [q, r] : {std::pair{Field::GF2, 4}, std::pair{Field::GF3, 3}}) {
    const SpacePtr space = PointSpace::get(q, r);
    const ForbiddenCatalog& catalog = ForbiddenCatalog::get(q);
    const auto sets = all_colorings(space);
    std::atomic<std::size_t> comatroids{0};
    parallel_for(sets.size(), options.jobs, [&](std::size_t i) {
      const EmbeddedMatroid m{space, sets[i]};
      const bool a = decide_recursive(m).is_comatroid;
      const bool b = decide_flat_criterion(m).is_comatroid;
      const bool c = decide_forbidden_flats(m, catalog).is_comatroid;
      if (a != b || a != c) failures.add(fmt("q=%d green=%s", order(q), points(sets[i]).c_str()));
      if (a) ++comatroids;
    });
    detail += fmt("%sPG(%d,%d): %zu colorings, %zu comatroids", detail.empty() ? "" : "; ", r - 1, order(q),
                  sets.size(), comatroids.load());
  }
  if (!failures.empty()) return {false, failures.describe()};
  return {true, detail};
}

// ---- 2 ----------------------------------------------------------------------

Outcome circuit_law(const Options&) {
  std::string detail;
  bool pass = true;
  for (const auto& [q, top] : {std::pair{Field::GF2, 8}, std::pair{Field::GF3, 7}}) {
    for (int k = 3; k <= top; ++k) {
      const EmbeddedMatroid m = embed(circuit(k, q));
      const bool expected = order(q) + k <= 6;
      std::vector<bool> verdicts{decide_recursive(m).is_comatroid, decide_flat_criterion(m).is_comatroid};
      if (k - 1 <= kCanonicalRankCap) verdicts.push_back(decide_forbidden_flats(m, ForbiddenCatalog::get(q)).is_comatroid);
      const bool ok = std::all_of(verdicts.begin(), verdicts.end(), [&](bool v) { return v == expected; });
      pass = pass && ok;
      detail += fmt("%sC%d@%d=%s%s", detail.empty() ? "" : " ", k, order(q), expected ? "yes" : "no", ok ? "" : "(!)");
    }
  }
  return {pass, detail};
}

// ---- 3, 4 -------------------------------------------------------------------

struct Pairing {
  bool closed = true;      // every complement is again a class
  std::size_t pairs = 0;
  std::vector<const CensusClass*> small;  // smaller side of each pair
};

Pairing pair_up(const CensusReport& report) {
  Pairing out;
  std::set<std::string> keys;
  for (const auto& c : report.classes) keys.insert(c.key);
  const std::size_t n = report.classes.empty() ? 0 : report.classes.front().representative.space->size();
  for (const auto& c : report.classes) {
    const std::string co = canonical_form(complement(c.representative));
    if (!keys.count(co) || co == c.key) out.closed = false;
    if (c.key < co) ++out.pairs;
    if (2 * c.size < n) out.small.push_back(&c);
  }
  return out;
}

Outcome binary_minimal_census(const Options& options) {
  const CensusReport report = minimal_non_comatroids(4, Field::GF2, options.jobs);
  const Pairing pairing = pair_up(report);
  std::map<std::string, std::vector<Edge>> graph_keys;
  for (unsigned mask = 0; mask < 1024; ++mask) {
    const auto edges = graph_from_mask(mask);
    const EmbeddedMatroid g = embed(graph_cycle_matroid(edges, Field::GF2));
    if (matroid_rank(g) <= kCanonicalRankCap && g.size() > 0) graph_keys.emplace(canonical_form(g), edges);
  }
  bool small_ok = pairing.small.size() == 6;
  for (const CensusClass* c : pairing.small) small_ok = small_ok && c->size <= 7 && graph_keys.count(c->key);
  const std::string c5 = canonical_form(embed(graph_cycle_matroid({{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}}, Field::GF2)));
  const std::string k23 =
      canonical_form(embed(graph_cycle_matroid({{0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}}, Field::GF2)));
  bool has_c5 = false;
  bool has_k23 = false;
  for (const CensusClass* c : pairing.small) {
    has_c5 = has_c5 || c->key == c5;
    has_k23 = has_k23 || c->key == k23;
  }
  const bool pass = report.classes.size() == 12 && pairing.closed && pairing.pairs == 6 && small_ok && has_c5 && has_k23;
  std::string sizes;
  for (const CensusClass* c : pairing.small) sizes += (sizes.empty() ? "" : ",") + std::to_string(c->size);
  return {pass, fmt("%zu classes, %zu complement pairs, small sides of sizes %s%s%s", report.classes.size(),
                    pairing.pairs, sizes.c_str(), has_c5 ? ", M(C5)" : "", has_k23 ? ", M(K2,3)" : "")};
}

Outcome ternary_minimal_census(const Options& options) {
  const CensusReport report = minimal_non_comatroids(3, Field::GF3, options.jobs);
  const Pairing pairing = pair_up(report);
  std::set<std::string> expected;
  expected.insert(canonical_form(embed(circuit(4, Field::GF3))));
  for (const char* name : {"P(U23,U23)@3", "U24+2U23", "U24+2U24", "P(U24,U23)", "M(K4)@3", "W3"}) {
    expected.insert(canonical_form(embed(named(name))));
  }
  std::set<std::string> found;
  for (const CensusClass* c : pairing.small) found.insert(c->key);
  const bool pass = report.classes.size() == 14 && pairing.closed && pairing.pairs == 7 && found == expected &&
                    expected.size() == 7;
  return {pass, fmt("%zu classes, %zu complement pairs, %zu of 7 constructions matched", report.classes.size(),
                    pairing.pairs, static_cast<std::size_t>(std::count_if(expected.begin(), expected.end(),
                                                                         [&](const auto& k) { return found.count(k); })))};
}

// ---- 5, 6 -------------------------------------------------------------------

Outcome f77_count(const Options&) {
  const std::size_t n = count_connected_hyperplanes(embed(named("f77")));
  return {n == 27, fmt("%zu connected hyperplanes", n)};
}

Outcome k33_and_pg(const Options&) {
  const std::size_t k33 = count_connected_hyperplanes(embed(named("M(K3,3)")));
  const std::size_t pg = hyperplanes(embed(named("PG(4,2)"))).size();
  return {k33 == 6 && pg == 31, fmt("M(K3,3): %zu connected hyperplanes; PG(4,2): %zu hyperplanes", k33, pg)};
}

// ---- 7 ----------------------------------------------------------------------

Outcome extension_scans(const Options& options) {
  bool pass = true;
  std::string detail;
  for (const char* seed : {"m2-first", "m2-second", "extra-first", "extra-second"}) {
    const ExtensionScan scan = hyperplane_scan(embed(named(seed)), 10, options.jobs);
    pass = pass && scan.survivors.empty();
    detail += fmt("%s%s: %zu scanned, %zu survivors, min i=%zu, min i+j=%zu", detail.empty() ? "" : "; ", seed,
                  scan.scanned, scan.survivors.size(), scan.min_i, scan.min_sum);
  }
  return {pass, detail};
}

// ---- 8 ----------------------------------------------------------------------

bool is_connected_hyperplane(const LabeledMatroid& lm, const PointSet& x) {
  const EmbeddedMatroid& m = lm.matroid;
  const int r = matroid_rank(m);
  if (matroid_rank(m, x) != r - 1) return false;
  for (PointIndex p : to_indices(m.green - x)) {
    PointSet y = x;
    y.set(p);
    if (matroid_rank(m, y) != r) return false;
  }
  return is_connected(m.space, x);
}

Outcome named_hyperplanes(const Options&) {
  struct Check {
    const char* matroid;
    std::vector<std::string> labels;
  };
  const std::vector<Check> checks{{"Delta5", {"e", "j", "k", "l", "m"}},
                                  {"T12/e", {"f", "g", "h", "i", "j"}},
                                  {"M5,12a", {"f", "g", "h", "i", "j", "l"}},
                                  {"M5,12b", {"f", "g", "h", "i", "j", "l"}},
                                  {"M5,13", {"a", "b", "d", "e", "f", "i", "j"}}};
  bool pass = true;
  std::string detail;
  for (const auto& check : checks) {
    const LabeledMatroid lm = embed_labeled(named(check.matroid));
    const PointSet x = lm.select(check.labels);
    bool ok = is_connected_hyperplane(lm, x);
    if (std::string(check.matroid) == "M5,13") {
      // The complement of M|H inside the span of H.
      const EmbeddedMatroid co = complement(restrict_to_flat(lm.matroid, x));
      ok = ok && matroid_rank(co) == 4 && is_connected(co);
    }
    pass = pass && ok;
    detail += fmt("%s%s %s", detail.empty() ? "" : "; ", check.matroid, ok ? "ok" : "FAILED");
  }
  return {pass, detail};
}

// ---- 9 ----------------------------------------------------------------------

// Vertical connectivity of every subset of a small space by trying all
// bipartitions against a table of subset ranks.
class BipartitionOracle {
 public:
  explicit BipartitionOracle(const SpacePtr& space) : n_(space->size()), ranks_(std::size_t{1} << n_) {
    for (std::size_t mask = 1; mask < ranks_.size(); ++mask) {
      ranks_[mask] = static_cast<std::uint8_t>(space->rank_of(PointSet(n_, mask)));
    }
  }

  int rank(std::uint32_t mask) const { return ranks_[mask]; }

  int vertical_connectivity(std::uint32_t s) const {
    if (s == 0) return 0;
    const int rs = ranks_[s];
    int best = rs;
    const std::uint32_t low = s & (~s + 1);
    const std::uint32_t rest = s ^ low;
    // Sub-masks of s containing its lowest element, proper on both sides.
    for (std::uint32_t sub = rest;; sub = (sub - 1) & rest) {
      const std::uint32_t a = sub | low;
      if (a != s) {
        const int ra = ranks_[a];
        const int rb = ranks_[s ^ a];
        const int k = ra + rb - rs + 1;
        if (k <= std::min(ra, rb)) best = std::min(best, k);
      }
      if (sub == 0) break;
    }
    return best;
  }

 private:
  std::size_t n_;
  std::vector<std::uint8_t> ranks_;
};

Outcome connectivity_sum(const Options& options) {
  std::string detail;
  Failures failures;
  std::size_t exceptions = 0;
  for (const auto& [q, r] : {std::pair{Field::GF2, 3}, std::pair{Field::GF2, 4}, std::pair{Field::GF3, 3}}) {
    const SpacePtr space = PointSpace::get(q, r);
    const BipartitionOracle oracle(space);
    const std::uint32_t full = static_cast<std::uint32_t>((std::size_t{1} << space->size()) - 1);
    std::atomic<std::size_t> found{0};
    parallel_for(std::size_t{full} + 1, options.jobs, [&](std::size_t i) {
      const auto g = static_cast<std::uint32_t>(i);
      const std::uint32_t red = full ^ g;
      if (oracle.vertical_connectivity(g) + oracle.vertical_connectivity(red) >= r) return;
      ++found;
      // The only permitted exception: three independent points against a line plus a point.
      const auto is_exception = [&](std::uint32_t three, std::uint32_t four) {
        return __builtin_popcount(three) == 3 && oracle.rank(three) == 3 && __builtin_popcount(four) == 4 &&
               oracle.rank(four) == 3 && !is_connected(space, PointSet(space->size(), four)) &&
               components(EmbeddedMatroid{space, PointSet(space->size(), four)}, PointSet(space->size(), four)).size() == 2;
      };
      const bool allowed = q == Field::GF2 && r == 3 && (is_exception(g, red) || is_exception(red, g));
      if (!allowed) failures.add(fmt("q=%d r=%d green=%s", order(q), r, points(PointSet(space->size(), g)).c_str()));
    });
    if (q == Field::GF2 && r == 3) exceptions = found.load();
    detail += fmt("%sPG(%d,%d): %zu colorings with j+k<r", detail.empty() ? "" : "; ", r - 1, order(q), found.load());
  }
  if (!failures.empty()) return {false, failures.describe()};
  return {exceptions > 0, detail};
}

// ---- 10 ---------------------------------------------------------------------

bool contains(const std::vector<MatroidFlat>& flats, PointIndex e) {
  return std::any_of(flats.begin(), flats.end(), [&](const MatroidFlat& f) { return f.members.test(e); });
}

Outcome hyperplane_properties(const Options& options) {
  Failures failures;
  std::atomic<std::size_t> trichotomy{0};
  std::atomic<std::size_t> cosimple{0};
  std::atomic<std::size_t> ternary{0};
  {
    const SpacePtr space = PointSpace::get(Field::GF2, 4);
    const auto sets = all_colorings(space);
    parallel_for(sets.size(), options.jobs, [&](std::size_t i) {
      const EmbeddedMatroid m{space, sets[i]};
      if (m.size() < 2 || !is_connected(m)) return;
      ++trichotomy;
      const int r = matroid_rank(m);
      const auto connected = connected_hyperplanes(m);
      const bool circuit = m.size() == static_cast<std::size_t>(r) + 1;
      const auto series = series_classes(m);
      for (PointIndex e : to_indices(m.green)) {
        const bool big_series = std::any_of(series.begin(), series.end(), [&](const PointSet& s) {
          return s.count() >= 3 && !s.test(e);
        });
        if (!circuit && !contains(connected, e) && !big_series) {
          failures.add(fmt("trichotomy green=%s e=%u", points(m.green).c_str(), e));
        }
      }
      if (cocircuits_min_size(m) >= 3) {
        ++cosimple;
        bool each_twice = true;
        for (PointIndex e : to_indices(m.green)) {
          each_twice = each_twice && std::count_if(connected.begin(), connected.end(), [&](const MatroidFlat& f) {
                                       return f.members.test(e);
                                     }) >= 2;
        }
        if (connected.size() < 4 || !each_twice) failures.add(fmt("cosimple green=%s", points(m.green).c_str()));
      }
    });
  }
  const auto ternary_check = [&](const EmbeddedMatroid& m) {
    if (m.size() < 2 || !is_connected(m) || cocircuits_min_size(m) < 4) return;
    ++ternary;
    if (count_connected_hyperplanes(m) < 2) failures.add(fmt("ternary green=%s", points(m.green).c_str()));
  };
  {
    const SpacePtr space = PointSpace::get(Field::GF3, 3);
    const auto sets = all_colorings(space);
    parallel_for(sets.size(), options.jobs, [&](std::size_t i) { ternary_check(EmbeddedMatroid{space, sets[i]}); });
  }
  constexpr std::size_t kSamples = 3000;
  {
    const SpacePtr space = PointSpace::get(Field::GF3, 4);
    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<double> density(0.2, 0.8);
    std::vector<PointSet> sets;
    for (std::size_t s = 0; s < kSamples; ++s) {
      std::bernoulli_distribution coin(density(rng));
      PointSet set(space->size());
      for (std::size_t p = 0; p < space->size(); ++p) set[p] = coin(rng);
      sets.push_back(std::move(set));
    }
    parallel_for(sets.size(), options.jobs, [&](std::size_t i) { ternary_check(EmbeddedMatroid{space, sets[i]}); });
  }
  std::string family;
  for (int n = 1; n <= 2; ++n) {
    const EmbeddedMatroid m = embed(four_hyperplane_family(n));
    const std::size_t count = count_connected_hyperplanes(m);
    const bool ok = count == 4 && m.size() == static_cast<std::size_t>(5 * n + 8) && matroid_rank(m) == 2 * n + 3 &&
                    is_connected(m) && cocircuits_min_size(m) >= 4;
    if (!ok) failures.add(fmt("family(%d): %zu connected hyperplanes, %zu elements", n, count, m.size()));
    family += fmt("%sfamily(%d): %zu connected hyperplanes, %zu elements, rank %d", family.empty() ? "" : ", ", n, count,
                  m.size(), matroid_rank(m));
  }
  if (!failures.empty()) return {false, failures.describe()};
  return {true, fmt("%zu connected binary, %zu cosimple binary, %zu ternary with cocircuits >= 4; %s", trichotomy.load(),
                    cosimple.load(), ternary.load(), family.c_str())};
}

// ---- 11 ---------------------------------------------------------------------

Outcome closure_properties(const Options& options) {
  Failures failures;
  std::size_t total_classes = 0;
  for (const auto& [q, r] : {std::pair{Field::GF2, 4}, std::pair{Field::GF3, 3}}) {
    const SpacePtr space = PointSpace::get(q, r);
    const auto sets = all_colorings(space);
    std::vector<std::string> keys(sets.size());
    parallel_for(sets.size(), options.jobs, [&](std::size_t i) {
      const EmbeddedMatroid m{space, sets[i]};
      if (is_comatroid(m)) keys[i] = canonical_form(m);
    });
    // One representative per isomorphism class.
    std::map<std::string, std::size_t> reps;
    for (std::size_t i = 0; i < sets.size(); ++i) {
      if (!keys[i].empty()) reps.emplace(keys[i], i);
    }
    std::vector<std::size_t> corpus;
    for (const auto& [key, i] : reps) corpus.push_back(i);
    total_classes += corpus.size();
    parallel_for(corpus.size(), options.jobs, [&](std::size_t c) {
      const EmbeddedMatroid m{space, sets[corpus[c]]};
      const std::string where = fmt("q=%d green=%s", order(q), points(m.green).c_str());
      for (const auto& flat : flats_of(m)) {
        if (!is_comatroid(restrict_to_flat(m, flat))) failures.add("flat of " + where);
      }
      for (PointIndex e : to_indices(m.green)) {
        if (!is_comatroid(si_contract(m, e))) failures.add("contraction of " + where);
      }
      const auto blocks = components(m, m.green);
      for (const auto& block : blocks) {
        if (!is_comatroid(restrict_to_flat(m, block))) failures.add("component of " + where);
      }
      if (m.size() > 0 && blocks.size() == 1) {
        const int rank = matroid_rank(m);
        if (vertical_connectivity(m, m.green) < rank - 1) failures.add("vertical connectivity of " + where);
      }
    });
  }
  if (!failures.empty()) return {false, failures.describe()};
  return {true, fmt("%zu comatroid classes checked", total_classes)};
}

// ---- 12 ---------------------------------------------------------------------

Vec apply(Field f, const std::vector<Vec>& columns, const Vec& v) {
  Vec out;
  for (std::size_t i = 0; i < columns.size(); ++i) out = add(f, out, scale(f, columns[i], coord(v, static_cast<int>(i))));
  return out;
}

Outcome complement_invariance(const Options& options) {
  constexpr std::size_t kTrials = 1000;
  std::mt19937_64 rng(options.seed);
  struct Trial {
    EmbeddedMatroid m;
    EmbeddedMatroid image;
    int t;
  };
  std::vector<Trial> trials;
  while (trials.size() < kTrials) {
    const Field q = rng() % 2 == 0 ? Field::GF2 : Field::GF3;
    const int r = 1 + static_cast<int>(rng() % 4);
    const SpacePtr space = PointSpace::get(q, r);
    PointSet green(space->size());
    for (std::size_t p = 0; p < space->size(); ++p) green[p] = rng() % 2 == 0;
    if (space->rank_of(green) != r) continue;
    std::vector<Vec> columns;
    LinearBasis basis(q);
    while (basis.size() < r) {
      Vec v;
      for (int i = 0; i < r; ++i) v = with_coord(v, i, static_cast<int>(rng() % static_cast<unsigned>(order(q))));
      if (basis.insert(v)) columns.push_back(v);
    }
    PointSet image(space->size());
    for_each_point(green, [&](PointIndex p) { image.set(space->index_of(apply(q, columns, space->vector(p)))); });
    const int t = r + static_cast<int>(rng() % static_cast<unsigned>(kCanonicalRankCap - r + 1));
    trials.push_back(Trial{EmbeddedMatroid{space, green}, EmbeddedMatroid{space, image}, t});
  }
  Failures failures;
  parallel_for(trials.size(), options.jobs, [&](std::size_t i) {
    const Trial& trial = trials[i];
    const EmbeddedMatroid a = complement(trial.m, trial.t);
    const EmbeddedMatroid b = complement(trial.image, trial.t);
    if (a.size() != b.size() || !isomorphic(a, b)) {
      failures.add(fmt("q=%d green=%s t=%d", trial.m.space->q(), points(trial.m.green).c_str(), trial.t));
    }
  });
  if (!failures.empty()) return {false, failures.describe()};
  return {true, fmt("%zu random triples", kTrials)};
}

}  // namespace

const std::vector<Criterion>& manifest() {
  static const std::vector<Criterion> criteria{
      {1, "decider agreement on PG(3,2) and PG(2,3)", decider_agreement},
      {2, "circuit law", circuit_law},
      {3, "rank-4 binary minimal census", binary_minimal_census},
      {4, "rank-3 ternary minimal census", ternary_minimal_census},
      {5, "f77 connected hyperplanes", f77_count},
      {6, "M(K3,3) and PG(4,2) hyperplanes", k33_and_pg},
      {7, "extension scans", extension_scans},
      {8, "named connected hyperplanes", named_hyperplanes},
      {9, "vertical connectivity sum", connectivity_sum},
      {10, "connected-hyperplane properties", hyperplane_properties},
      {11, "closure properties", closure_properties},
      {12, "complement well-definedness", complement_invariance},
  };
  return criteria;
}

std::vector<Report> run(const Options& options, const std::vector<int>& ids) {
  std::vector<Report> out;
  for (const auto& c : manifest()) {
    if (!ids.empty() && std::find(ids.begin(), ids.end(), c.id) == ids.end()) continue;
    Report report;
    report.id = c.id;
    report.name = c.name;
    const auto start = std::chrono::steady_clock::now();
    try {
      const Outcome outcome = c.run(options);
      report.pass = outcome.pass;
      report.detail = outcome.detail;
    } catch (const std::exception& e) {
      report.pass = false;
      report.detail = std::string("error: ") + e.what();
    }
    report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.push_back(std::move(report));
  }
  return out;
}

std::string format(const Report& r) {
  return fmt("%s %d %s (%.1fs): ", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(), r.seconds) + r.detail;
}

}  // namespace comatroid::acceptance
