#include "comatroid/census.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <random>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "comatroid/canonical.hpp"
#include "comatroid/constructions.hpp"
#include "comatroid/decide.hpp"
#include "comatroid/error.hpp"
#include "comatroid/parallel.hpp"

namespace comatroid {

unsigned resolve_jobs(unsigned jobs) {
  if (jobs != 0) return jobs;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// Collapses matching colorings into classes in first-seen order.
std::vector<CensusClass> classify(const SpacePtr& space, const std::vector<PointSet>& hits, bool dedup, unsigned jobs) {
  std::vector<std::string> keys(hits.size());
  if (dedup) {
    parallel_for(hits.size(), jobs, [&](std::size_t i) { keys[i] = canonical_form(EmbeddedMatroid{space, hits[i]}); });
  }
  std::vector<CensusClass> out;
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < hits.size(); ++i) {
    if (dedup) {
      const auto it = index.find(keys[i]);
      if (it != index.end()) {
        ++out[it->second].count;
        continue;
      }
      index.emplace(keys[i], out.size());
    }
    CensusClass c;
    c.key = keys[i];
    c.representative = EmbeddedMatroid{space, hits[i]};
    c.size = hits[i].count();
    c.rank = space->rank_of(hits[i]);
    c.count = 1;
    out.push_back(std::move(c));
  }
  if (dedup) {
    std::stable_sort(out.begin(), out.end(), [](const CensusClass& a, const CensusClass& b) {
      return std::tie(a.size, a.rank, a.key) < std::tie(b.size, b.rank, b.key);
    });
  }
  return out;
}

// Names for classes: known constructions by canonical key.
std::vector<std::pair<std::string, std::string>> known_matroids(Field q) {
  std::vector<std::pair<std::string, std::string>> out;
  const auto add = [&](const std::string& name, const MatrixPresentation& pres) {
    out.emplace_back(canonical_form(embed(pres)), name);
  };
  if (q == Field::GF2) {
    add("P(U34,U34)", named("P(U34,U34)"));
    for (int k = 3; k <= 7; ++k) add("C" + std::to_string(k), circuit(k, q));
    for (const auto& [name, edges] : minimal_binary_graphs()) add(name, graph_cycle_matroid(edges, q));
  } else {
    add("U3,4", circuit(4, q));
    for (const char* name : {"P(U23,U23)@3", "U24+2U23", "U24+2U24", "P(U24,U23)", "M(K4)@3", "W3"}) {
      add(name, named(name));
    }
    for (int k = 3; k <= 6; ++k) {
      for (int d = 0; d <= k && k - 1 + d <= 4; ++d) {
        std::vector<int> positions;
        for (int i = 0; i < d; ++i) positions.push_back(i);
        add("circuit-with-U24(k=" + std::to_string(k) + ",d=" + std::to_string(d) + ")", circuit_with_u24(k, positions));
      }
    }
  }
  return out;
}

// A 5-vertex graph whose cycle matroid is isomorphic to m, as "u-v,..." text.
std::optional<std::string> graphic_on_five_vertices(const EmbeddedMatroid& m, const std::string& key) {
  const std::size_t n = m.size();
  const int r = matroid_rank(m);
  for (unsigned mask = 0; mask < 1024; ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) != n) continue;
    const auto edges = graph_from_mask(mask);
    const EmbeddedMatroid g = embed(graph_cycle_matroid(edges, Field::GF2));
    if (matroid_rank(g) != r || canonical_form(g) != key) continue;
    std::string text;
    for (auto [u, v] : edges) text += (text.empty() ? "" : ",") + std::to_string(u) + "-" + std::to_string(v);
    return text;
  }
  return std::nullopt;
}

void label_classes(std::vector<CensusClass>& classes, Field q) {
  const auto known = known_matroids(q);
  const auto lookup = [&](const std::string& key) -> std::optional<std::string> {
    for (const auto& [k, name] : known) {
      if (k == key) return name;
    }
    return std::nullopt;
  };
  for (auto& c : classes) {
    if (auto name = lookup(c.key)) {
      c.label = *name;
    } else if (auto co = lookup(canonical_form(complement(c.representative)))) {
      c.label = *co + "^c";
    } else {
      c.label = "unnamed";
    }
    if (q == Field::GF2 && c.rank == 4 && c.size <= 7) {
      if (auto edges = graphic_on_five_vertices(c.representative, c.key)) c.label += " graph=" + *edges;
    }
  }
}

}  // namespace

std::function<bool(const EmbeddedMatroid&)> named_filter(const std::string& name) {
  if (name == "all") return [](const EmbeddedMatroid&) { return true; };
  if (name == "both-connected-spanning") {
    return [](const EmbeddedMatroid& m) {
      const int r = m.ambient_rank();
      const PointSet red = m.red();
      return matroid_rank(m) == r && m.space->rank_of(red) == r && is_connected(m) && is_connected(m.space, red);
    };
  }
  if (name == "vertical-deficit") {
    return [](const EmbeddedMatroid& m) {
      return vertical_connectivity(m, m.green) + vertical_connectivity(m, m.red()) < m.ambient_rank();
    };
  }
  if (name == "large-disconnected") {
    return [](const EmbeddedMatroid& m) {
      std::size_t threshold = 1;
      for (int i = 0; i < m.ambient_rank() - 1; ++i) threshold *= static_cast<std::size_t>(m.space->q());
      return m.size() >= threshold + 1 && (!is_connected(m) || matroid_rank(m) < m.ambient_rank());
    };
  }
  if (name == "non-comatroid") return [](const EmbeddedMatroid& m) { return !is_comatroid(m); };
  if (name == "minimal-non-comatroid") {
    return [](const EmbeddedMatroid& m) {
      return matroid_rank(m) == m.ambient_rank() && is_minimal_non_comatroid(m);
    };
  }
  throw DomainError("unknown filter '" + name + "'");
}

std::vector<std::string> filter_names() {
  return {"all", "both-connected-spanning", "vertical-deficit", "large-disconnected", "non-comatroid",
          "minimal-non-comatroid"};
}

CensusReport enumerate_colorings(const SpacePtr& space, const std::function<bool(const EmbeddedMatroid&)>& filter,
                                 const ColoringOptions& options, const std::string& filter_name) {
  const auto start = std::chrono::steady_clock::now();
  const std::size_t n = space->size();
  std::vector<PointSet> candidates;
  if (!options.seed) {
    if (n > 15) throw ResourceLimitError("exhaustive colorings are capped at 15 points");
    const std::size_t total = std::size_t{1} << n;
    candidates.reserve(total);
    for (std::size_t mask = 0; mask < total; ++mask) candidates.emplace_back(n, mask);
  } else {
    std::mt19937_64 rng(*options.seed);
    std::bernoulli_distribution coin(0.5);
    for (std::size_t s = 0; s < options.samples; ++s) {
      PointSet set(n);
      for (std::size_t p = 0; p < n; ++p) set[p] = coin(rng);
      candidates.push_back(std::move(set));
    }
  }
  std::vector<char> keep(candidates.size(), 0);
  parallel_for(candidates.size(), options.jobs,
               [&](std::size_t i) { keep[i] = filter(EmbeddedMatroid{space, candidates[i]}) ? 1 : 0; });
  std::vector<PointSet> hits;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (keep[i]) hits.push_back(candidates[i]);
  }
  CensusReport report;
  report.q = space->q();
  report.rank = space->rank();
  report.filter = filter_name;
  report.scanned = candidates.size();
  report.classes = classify(space, hits, options.dedup, options.jobs);
  report.seconds = seconds_since(start);
  return report;
}

CensusReport minimal_non_comatroids(int r, Field q, unsigned jobs) {
  const auto start = std::chrono::steady_clock::now();
  CensusReport report;
  const bool exhaustive = (q == Field::GF2 && (r == 3 || r == 4)) || (q == Field::GF3 && r == 3);
  if (exhaustive) {
    ColoringOptions options;
    options.jobs = jobs;
    report = enumerate_colorings(PointSpace::get(q, r), named_filter("minimal-non-comatroid"), options,
                                 "minimal-non-comatroid");
  } else if (q == Field::GF3 && r == 4) {
    const SpacePtr space = PointSpace::get(q, 4);
    std::vector<PointSet> hits;
    std::size_t scanned = 0;
    for (int k = 3; k <= 5; ++k) {
      for (int d = 0; d <= k && k - 1 + d <= 4; ++d) {
        if (k - 1 + d != 4) continue;
        std::vector<int> positions;
        for (int i = 0; i < d; ++i) positions.push_back(i);
        const EmbeddedMatroid member = embed(circuit_with_u24(k, positions));
        for (const EmbeddedMatroid& m : {member, complement(member)}) {
          ++scanned;
          if (m.space != space) throw Error("family member is not of rank 4");
          if (matroid_rank(m) == 4 && is_minimal_non_comatroid(m)) hits.push_back(m.green);
        }
      }
    }
    report.q = 3;
    report.rank = 4;
    report.filter = "minimal-non-comatroid (circuit-with-U24 family and complements)";
    report.scanned = scanned;
    report.classes = classify(space, hits, true, jobs);
  } else {
    throw DomainError("minimal census is available for (q,r) in {(2,3),(2,4),(3,3),(3,4)}");
  }
  label_classes(report.classes, q);
  report.seconds = seconds_since(start);
  return report;
}

// ---- hyperplane scan over PG(4,2) -------------------------------------------

namespace {

struct Rank5Kernel {
  std::array<std::uint32_t, 31> vec{};
  std::array<std::uint32_t, 31> hyperplanes{};

  Rank5Kernel() {
    const SpacePtr space = PointSpace::get(Field::GF2, 5);
    for (PointIndex p = 0; p < 31; ++p) vec[p] = space->vector(p).pos;
    const auto& flats = space->flats(4);
    for (std::size_t h = 0; h < flats.size(); ++h) {
      std::uint32_t mask = 0;
      for_each_point(flats[h].members, [&](PointIndex p) { mask |= 1U << p; });
      hyperplanes[h] = mask;
    }
  }

  // Rank of the points in x, and whether they form a connected matroid.
  std::pair<int, bool> rank_connected(std::uint32_t x) const {
    std::uint32_t value[5];
    std::uint32_t combo[5];
    std::uint32_t pivot[5];
    std::uint32_t element[5];
    int k = 0;
    std::uint32_t comps[32];
    int ncomps = 0;
    for (std::uint32_t rest = x; rest != 0; rest &= rest - 1) {
      const int e = __builtin_ctz(rest);
      std::uint32_t v = vec[static_cast<std::size_t>(e)];
      std::uint32_t c = 0;
      for (int t = 0; t < k; ++t) {
        if (v & pivot[t]) {
          v ^= value[t];
          c ^= combo[t];
        }
      }
      if (v != 0) {
        value[k] = v;
        pivot[k] = v & (~v + 1);
        combo[k] = c | (1U << k);
        element[k] = 1U << e;
        ++k;
        continue;
      }
      std::uint32_t merged = 1U << e;
      for (std::uint32_t bits = c; bits != 0; bits &= bits - 1) merged |= element[__builtin_ctz(bits)];
      int keep = 0;
      for (int t = 0; t < ncomps; ++t) {
        if (comps[t] & merged) {
          merged |= comps[t];
        } else {
          comps[keep++] = comps[t];
        }
      }
      comps[keep++] = merged;
      ncomps = keep;
    }
    const bool connected = __builtin_popcount(x) <= 1 || (ncomps == 1 && comps[0] == x);
    return {k, connected};
  }

  std::size_t connected_hyperplanes(std::uint32_t green) const {
    std::size_t count = 0;
    for (std::uint32_t h : hyperplanes) {
      const auto [r, connected] = rank_connected(green & h);
      if (r == 4 && connected) ++count;
    }
    return count;
  }
};

const Rank5Kernel& rank5_kernel() {
  static const Rank5Kernel kernel;
  return kernel;
}

std::uint32_t to_mask(const PointSet& s) {
  std::uint32_t mask = 0;
  for_each_point(s, [&](PointIndex p) { mask |= 1U << p; });
  return mask;
}

PointSet from_mask(std::uint32_t mask, std::size_t n) { return PointSet(n, mask); }

}  // namespace

std::size_t binary_rank5_connected_hyperplanes(std::uint32_t green) {
  const auto& kernel = rank5_kernel();
  if (kernel.rank_connected(green).first == 5) return kernel.connected_hyperplanes(green);
  const SpacePtr space = PointSpace::get(Field::GF2, 5);
  return count_connected_hyperplanes(EmbeddedMatroid{space, from_mask(green, 31)});
}

ExtensionScan hyperplane_scan(const EmbeddedMatroid& seed_in, int max_extra, unsigned jobs) {
  if (seed_in.field() != Field::GF2 || matroid_rank(seed_in) != 5) {
    throw DomainError("the scan seed must be a binary matroid of rank 5");
  }
  const EmbeddedMatroid seed = reembed(seed_in);
  const std::uint32_t full = (1U << 31) - 1;
  const std::uint32_t base = to_mask(seed.green);
  std::vector<int> free_points;
  for (int p = 0; p < 31; ++p) {
    if (!((base >> p) & 1U)) free_points.push_back(p);
  }
  if (max_extra < 0 || static_cast<std::size_t>(max_extra) > free_points.size()) {
    throw DomainError("max_extra must be between 0 and " + std::to_string(free_points.size()));
  }
  // Subsets of the free points by size, then by bitmask (Gosper's successor).
  std::vector<std::uint32_t> subsets;
  const int nfree = static_cast<int>(free_points.size());
  for (int s = 0; s <= max_extra; ++s) {
    if (s == 0) {
      subsets.push_back(0);
      continue;
    }
    std::uint64_t v = (std::uint64_t{1} << s) - 1;
    while (v < (std::uint64_t{1} << nfree)) {
      std::uint32_t mask = 0;
      for (std::uint64_t bits = v; bits != 0; bits &= bits - 1) mask |= 1U << free_points[static_cast<std::size_t>(__builtin_ctzll(bits))];
      subsets.push_back(mask);
      const std::uint64_t t = v | (v - 1);
      v = (t + 1) | (((~t & (t + 1)) - 1) >> (__builtin_ctzll(v) + 1));
    }
  }
  const auto& kernel = rank5_kernel();
  std::vector<std::uint8_t> is(subsets.size());
  std::vector<std::int16_t> js(subsets.size(), -1);
  parallel_for(subsets.size(), jobs, [&](std::size_t idx) {
    const std::uint32_t green = base | subsets[idx];
    const std::size_t i = kernel.connected_hyperplanes(green);
    is[idx] = static_cast<std::uint8_t>(i);
    if (i < 26) js[idx] = static_cast<std::int16_t>(binary_rank5_connected_hyperplanes(full & ~green));
  });
  ExtensionScan out;
  out.seed = seed;
  out.max_extra = max_extra;
  out.scanned = subsets.size();
  out.min_i = subsets.empty() ? 0 : 31;
  bool any_sum = false;
  for (std::size_t idx = 0; idx < subsets.size(); ++idx) {
    out.min_i = std::min<std::size_t>(out.min_i, is[idx]);
    if (js[idx] < 0) continue;
    ++out.j_computed;
    const std::size_t sum = is[idx] + static_cast<std::size_t>(js[idx]);
    out.min_sum = any_sum ? std::min(out.min_sum, sum) : sum;
    any_sum = true;
    if (sum < 32) {
      out.survivors.push_back(ScanRecord{from_mask(subsets[idx], 31), is[idx], static_cast<std::size_t>(js[idx])});
    }
  }
  if (max_extra >= 0 && subsets.size() == 1 && out.survivors.empty() && is[0] >= 26) {
    // With S empty only, report the seed itself so its count is visible.
    out.survivors.clear();
  }
  return out;
}

CensusReport rank5_binary_minimal(std::size_t max_size, unsigned jobs) {
  const auto start = std::chrono::steady_clock::now();
  const SpacePtr space = PointSpace::get(Field::GF2, 5);
  std::vector<PointSet> level{space->empty_set()};
  std::vector<PointSet> hits;
  std::size_t scanned = 1;
  for (std::size_t size = 1; size <= max_size; ++size) {
    std::vector<std::pair<std::size_t, PointIndex>> work;
    for (std::size_t c = 0; c < level.size(); ++c) {
      for (PointIndex p = 0; p < 31; ++p) {
        if (!level[c].test(p)) work.emplace_back(c, p);
      }
    }
    std::vector<std::string> keys(work.size());
    parallel_for(work.size(), jobs, [&](std::size_t i) {
      PointSet s = level[work[i].first];
      s.set(work[i].second);
      keys[i] = canonical_form(EmbeddedMatroid{space, s});
    });
    std::unordered_map<std::string, bool> seen;
    std::vector<PointSet> next;
    for (std::size_t i = 0; i < work.size(); ++i) {
      if (!seen.emplace(keys[i], true).second) continue;
      PointSet s = level[work[i].first];
      s.set(work[i].second);
      next.push_back(std::move(s));
    }
    scanned += next.size();
    std::vector<char> minimal(next.size(), 0);
    parallel_for(next.size(), jobs, [&](std::size_t i) {
      const EmbeddedMatroid m{space, next[i]};
      minimal[i] = matroid_rank(m) == 5 && is_minimal_non_comatroid(m) ? 1 : 0;
    });
    for (std::size_t i = 0; i < next.size(); ++i) {
      if (minimal[i]) hits.push_back(next[i]);
    }
    level = std::move(next);
  }
  CensusReport report;
  report.q = 2;
  report.rank = 5;
  report.filter = "minimal-non-comatroid, at most " + std::to_string(max_size) + " points";
  report.scanned = scanned;
  report.classes = classify(space, hits, true, jobs);
  label_classes(report.classes, Field::GF2);
  report.seconds = seconds_since(start);
  return report;
}

std::string format_report(const CensusReport& report, bool tsv) {
  std::ostringstream out;
  if (tsv) {
    out << "key\tsize\trank\tcount\tlabel\tgreen\n";
  } else {
    out << "census q=" << report.q << " rank=" << report.rank << " filter=" << report.filter
        << " scanned=" << report.scanned << " classes=" << report.classes.size() << '\n';
  }
  for (const auto& c : report.classes) {
    std::string green;
    for_each_point(c.representative.green, [&](PointIndex p) { green += (green.empty() ? "" : ",") + std::to_string(p); });
    if (tsv) {
      out << c.key << '\t' << c.size << '\t' << c.rank << '\t' << c.count << '\t' << c.label << '\t' << green << '\n';
    } else {
      out << "class size=" << c.size << " rank=" << c.rank << " count=" << c.count << " label=" << c.label
          << " green=" << green << " key=" << c.key << '\n';
    }
  }
  return out.str();
}

std::string format_scan(const ExtensionScan& scan, const std::string& seed_name, bool tsv) {
  std::ostringstream out;
  const auto points = [](const PointSet& s) {
    std::string text;
    for_each_point(s, [&](PointIndex p) { text += (text.empty() ? "" : ",") + std::to_string(p); });
    return text.empty() ? std::string("-") : text;
  };
  if (tsv) {
    out << "extra\ti\tj\n";
  } else {
    out << "scan seed=" << seed_name << " max_extra=" << scan.max_extra << " scanned=" << scan.scanned
        << " j_computed=" << scan.j_computed << " min_i=" << scan.min_i << " min_sum=" << scan.min_sum
        << " survivors=" << scan.survivors.size() << '\n';
  }
  for (const auto& s : scan.survivors) {
    const std::string j = s.j ? std::to_string(*s.j) : "-";
    if (tsv) {
      out << points(s.extra) << '\t' << s.i << '\t' << j << '\n';
    } else {
      out << "survivor extra=" << points(s.extra) << " i=" << s.i << " j=" << j << '\n';
    }
  }
  return out.str();
}

}  // namespace comatroid
