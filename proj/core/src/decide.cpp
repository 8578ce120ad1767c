#include "comatroid/decide.hpp"

#include <deque>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <boost/algorithm/string.hpp>

#include "comatroid/canonical.hpp"
#include "comatroid/constructions.hpp"
#include "comatroid/error.hpp"

namespace comatroid {

std::string_view method_name(Method m) {
  switch (m) {
    case Method::Recursive:
      return "recursive";
    case Method::FlatCriterion:
      return "flat-criterion";
    case Method::ForbiddenFlats:
      return "forbidden-flat";
  }
  return "unknown";
}

std::optional<bool> DecisionMemo::lookup(const std::string& key) const {
  std::lock_guard lock(mutex_);
  const auto it = table_.find(key);
  if (it == table_.end()) return std::nullopt;
  return it->second;
}

void DecisionMemo::store(const std::string& key, bool value) {
  std::lock_guard lock(mutex_);
  table_.emplace(key, value);
}

std::size_t DecisionMemo::size() const {
  std::lock_guard lock(mutex_);
  return table_.size();
}

void DecisionMemo::load(const std::string& path) {
  std::ifstream in(path);
  std::string key;
  int value = 0;
  std::lock_guard lock(mutex_);
  while (in >> key >> value) table_.emplace(key, value != 0);
}

void DecisionMemo::save(const std::string& path) const {
  std::ofstream out(path);
  std::lock_guard lock(mutex_);
  for (const auto& [key, value] : table_) out << key << ' ' << (value ? 1 : 0) << '\n';
  if (!out) throw Error("could not write memo file " + path);
}

namespace {

void check_rank(const EmbeddedMatroid& m, int cap) {
  const int r = matroid_rank(m);
  if (r > cap) {
    throw ResourceLimitError("matroid rank " + std::to_string(r) + " exceeds the decider cap of " + std::to_string(cap));
  }
}

std::string join_points(const PointSet& s) {
  std::string out;
  for_each_point(s, [&](PointIndex p) {
    if (!out.empty()) out += ',';
    out += std::to_string(p);
  });
  return out;
}

std::string header(std::string_view kind, const EmbeddedMatroid& m, bool verdict) {
  std::ostringstream out;
  out << kind << " q=" << m.space->q() << " rank=" << m.ambient_rank() << " verdict=" << (verdict ? "true" : "false");
  return out.str();
}

// ---- recursive decider ------------------------------------------------------

struct TraceNode {
  PointSet green;
  std::string rule;
  std::vector<int> children;
};

class Recursion {
 public:
  Recursion(const EmbeddedMatroid& m, const DecideOptions& options)
      : m_(m), record_(options.certificate), memo_(options.certificate ? nullptr : options.memo) {}

  bool run() { return visit(m_.green); }

  std::string certificate(bool verdict) const {
    std::ostringstream out;
    out << header("trace", m_, verdict) << '\n';
    for (std::size_t id = 0; id < nodes_.size(); ++id) {
      const auto& node = nodes_[id];
      out << "node " << id << " rule=" << node.rule << " green=" << join_points(node.green);
      if (!node.children.empty()) {
        out << " children=";
        for (std::size_t c = 0; c < node.children.size(); ++c) out << (c ? "," : "") << node.children[c];
      }
      out << '\n';
    }
    return out.str();
  }

 private:
  bool visit(const PointSet& x) {
    const int id = record_ ? static_cast<int>(nodes_.size()) : -1;
    if (record_) nodes_.push_back(TraceNode{x, "", {}});
    const auto set_rule = [&](const char* rule) {
      if (record_) nodes_[static_cast<std::size_t>(id)].rule = rule;
    };
    const auto add_child = [&](int child) {
      if (record_) nodes_[static_cast<std::size_t>(id)].children.push_back(child);
    };
    if (x.none()) {
      set_rule("empty");
      return true;
    }
    std::string key;
    if (memo_ != nullptr && m_.space->rank_of(x) <= kCanonicalRankCap) {
      key = canonical_form(EmbeddedMatroid{m_.space, x});
      if (const auto hit = memo_->lookup(key)) return *hit;
    }
    bool result = true;
    const auto blocks = components(m_, x);
    if (blocks.size() >= 2) {
      set_rule("split");
      for (const auto& block : blocks) {
        add_child(static_cast<int>(nodes_.size()));
        if (!visit(block)) {
          result = false;
          break;
        }
      }
    } else {
      const FlatHandle span = m_.space->closure(x);
      const PointSet rest = span.members - x;
      const int rest_rank = m_.space->rank_of(rest);
      if (rest_rank < span.rank || !is_connected(m_.space, rest)) {
        set_rule("complement");
        add_child(static_cast<int>(nodes_.size()));
        result = visit(rest);
      } else {
        set_rule("reject");
        result = false;
      }
    }
    if (!key.empty()) memo_->store(key, result);
    return result;
  }

  const EmbeddedMatroid& m_;
  bool record_;
  DecisionMemo* memo_;
  std::vector<TraceNode> nodes_;
};

// ---- flat criterion ---------------------------------------------------------

struct FlatScan {
  bool comatroid = true;
  std::size_t checked = 0;
  PointSet violating;  // ambient points of the violating projective flat
};

// Calls fn(flat) for every violating projective flat until fn returns false.
template <typename Fn>
std::size_t for_each_violation(const EmbeddedMatroid& m, Fn&& fn) {
  const Frame frame = Frame::spanning(m.space, m.green);
  const PointSpace& local = frame.local();
  const PointSet green = frame.to_local(m.green);
  std::size_t checked = 0;
  for (int k = 1; k <= frame.rank(); ++k) {
    for (const FlatHandle& flat : local.flats(k)) {
      ++checked;
      const PointSet x = flat.members & green;
      const int rx = local.rank_of(x);
      if (rx == 0) continue;
      const PointSet y = flat.members - green;
      if (local.rank_of(y) != rx) continue;
      if (is_connected(frame.local_ptr(), x) && is_connected(frame.local_ptr(), y)) {
        if (!fn(frame.to_ambient(flat.members))) return checked;
      }
    }
  }
  return checked;
}

FlatScan scan_flats(const EmbeddedMatroid& m) {
  FlatScan out;
  out.checked = for_each_violation(m, [&](PointSet flat) {
    out.comatroid = false;
    out.violating = std::move(flat);
    return false;
  });
  return out;
}

// ---- forbidden flats --------------------------------------------------------

struct ForbiddenHit {
  bool green_side = true;
  PointSet flat;  // ambient points
  std::string entry;
};

struct ForbiddenScan {
  std::optional<ForbiddenHit> hit;
  std::size_t checked = 0;
};

ForbiddenScan scan_forbidden(const EmbeddedMatroid& m, const ForbiddenCatalog& catalog) {
  const Frame frame = Frame::spanning(m.space, m.green);
  const PointSpace& local = frame.local();
  const PointSet green = frame.to_local(m.green);
  const PointSet red = ~green;
  ForbiddenScan out;
  for (const bool green_side : {true, false}) {
    const PointSet& side = green_side ? green : red;
    const int r = local.rank_of(side);
    for (int k = catalog.min_rank(); k <= r; ++k) {
      for (const FlatHandle& flat : local.flats(k)) {
        const PointSet x = flat.members & side;
        if (local.rank_of(x) != k) continue;
        ++out.checked;
        if (!is_connected(frame.local_ptr(), x)) continue;
        if (auto name = catalog.match(frame.local_ptr(), x)) {
          out.hit = ForbiddenHit{green_side, frame.to_ambient(x), std::move(*name)};
          return out;
        }
      }
    }
  }
  return out;
}

EmbeddedMatroid embedded(const MatrixPresentation& pres) { return embed(pres); }

ForbiddenCatalog::Entry make_entry(std::string name, const EmbeddedMatroid& m) {
  EmbeddedMatroid spanning = reembed(m);
  ForbiddenCatalog::Entry e;
  e.name = std::move(name);
  e.key = canonical_form(spanning);
  e.rank = matroid_rank(spanning);
  e.size = spanning.size();
  e.matroid = std::move(spanning);
  return e;
}

}  // namespace

ForbiddenCatalog::ForbiddenCatalog(Field q) : field_(q) {
  std::vector<std::pair<std::string, MatrixPresentation>> fixed;
  if (q == Field::GF2) {
    min_rank_ = 4;
    induced_min_rank_ = 4;
    fixed.emplace_back("P(U34,U34)", named("P(U34,U34)"));
    for (const auto& [name, edges] : minimal_binary_graphs()) fixed.emplace_back(name, graph_cycle_matroid(edges, q));
  } else {
    min_rank_ = 3;
    induced_min_rank_ = 3;
    for (const char* name : {"P(U23,U23)@3", "U24+2U24", "P(U24,U23)", "M(K4)@3", "W3"}) {
      fixed.emplace_back(name, named(name));
    }
    // Circuit of size k with U24 2-summed at d of its elements: rank k-1+d,
    // size k+2d. Listed up to the canonical-form rank cap.
    for (int k = 3; k <= kCanonicalRankCap + 1; ++k) {
      for (int d = 1; d <= k && k - 1 + d <= kCanonicalRankCap; ++d) {
        std::vector<int> positions;
        for (int i = 0; i < d; ++i) positions.push_back(i);
        const EmbeddedMatroid member = embed(circuit_with_u24(k, positions));
        const std::string name = "circuit-with-U24(k=" + std::to_string(k) + ",d=" + std::to_string(d) + ")";
        family_[{k - 1 + d, static_cast<std::size_t>(k + 2 * d)}] = {name, canonical_form(member)};
      }
    }
  }
  for (const auto& [name, pres] : fixed) {
    const EmbeddedMatroid m = embedded(pres);
    if (decide_flat_criterion(m).is_comatroid) throw CatalogError("catalog entry " + name + " is a comatroid");
    for (const auto& flat : flats_of(m)) {
      if (flat.members == m.green) continue;
      if (!decide_flat_criterion(restrict_to_flat(m, flat)).is_comatroid) {
        throw CatalogError("catalog entry " + name + " has a proper flat that is not a comatroid");
      }
    }
    fixed_.push_back(make_entry(name, m));
  }

  // Forbidden induced minors of rank at most 5.
  std::set<std::string> seen;
  const auto add_induced = [&](const std::string& name, const EmbeddedMatroid& m) {
    if (matroid_rank(m) > 5) return;
    Entry e = make_entry(name, m);
    if (seen.insert(e.key).second) induced_.push_back(std::move(e));
  };
  if (q == Field::GF2) {
    add_induced("C6^c", complement(embed(circuit(6, q))));
    add_induced("P(U34,U34)", embed(named("P(U34,U34)")));
    add_induced("P(U34,U34)^c", complement(embed(named("P(U34,U34)"))));
    for (const auto& [name, edges] : minimal_binary_graphs()) {
      const EmbeddedMatroid g = embed(graph_cycle_matroid(edges, q));
      add_induced(name, g);
      add_induced(name + "^c", complement(g, 4));
    }
  } else {
    std::vector<std::pair<std::string, EmbeddedMatroid>> rank3;
    rank3.emplace_back("U3,4@3", embed(circuit(4, q)));
    rank3.emplace_back("P(U23,U23)@3", embed(named("P(U23,U23)@3")));
    rank3.emplace_back("U24+2U23", embed(named("U24+2U23")));
    for (const char* name : {"U24+2U24", "P(U24,U23)", "M(K4)@3", "W3"}) rank3.emplace_back(name, embed(named(name)));
    for (const auto& [name, m] : rank3) add_induced(name, m);
    for (const auto& [name, m] : rank3) add_induced(name + "^c", complement(m, 3));
    for (int k = 3; k <= 6; ++k) {
      for (int d = 0; d <= k; ++d) {
        const int rank = k - 1 + d;
        if (rank < 3 || rank > 5) continue;
        std::vector<int> positions;
        for (int i = 0; i < d; ++i) positions.push_back(i);
        add_induced("circuit-with-U24(k=" + std::to_string(k) + ",d=" + std::to_string(d) + ")^c",
                    complement(embed(circuit_with_u24(k, positions))));
      }
    }
  }
}

const ForbiddenCatalog& ForbiddenCatalog::get(Field q) {
  static std::once_flag once2;
  static std::once_flag once3;
  static std::unique_ptr<ForbiddenCatalog> binary;
  static std::unique_ptr<ForbiddenCatalog> ternary;
  if (q == Field::GF2) {
    std::call_once(once2, [] { binary.reset(new ForbiddenCatalog(Field::GF2)); });
    return *binary;
  }
  std::call_once(once3, [] { ternary.reset(new ForbiddenCatalog(Field::GF3)); });
  return *ternary;
}

std::optional<std::string> ForbiddenCatalog::match(const SpacePtr& space, const PointSet& x) const {
  const std::size_t n = x.count();
  const int k = space->rank_of(x);
  const std::size_t circuit_min = field_ == Field::GF2 ? 6 : 4;
  if (n == static_cast<std::size_t>(k) + 1 && n >= circuit_min) return "circuit(" + std::to_string(n) + ")";
  std::string key;
  const auto key_of = [&]() -> const std::string& {
    if (key.empty()) key = canonical_form(EmbeddedMatroid{space, x});
    return key;
  };
  if (const auto it = family_.find({k, n}); it != family_.end() && key_of() == it->second.second) {
    return it->second.first;
  }
  for (const auto& e : fixed_) {
    if (e.rank == k && e.size == n && key_of() == e.key) return e.name;
  }
  return std::nullopt;
}

Verdict decide_recursive(const EmbeddedMatroid& m, const DecideOptions& options) {
  check_rank(m, kDecideRankCap);
  Recursion rec(m, options);
  Verdict v;
  v.method = Method::Recursive;
  v.is_comatroid = rec.run();
  if (options.certificate) v.certificate = rec.certificate(v.is_comatroid);
  return v;
}

Verdict decide_flat_criterion(const EmbeddedMatroid& m, const DecideOptions& options) {
  check_rank(m, kDecideRankCap);
  const FlatScan scan = scan_flats(m);
  Verdict v;
  v.method = Method::FlatCriterion;
  v.is_comatroid = scan.comatroid;
  if (options.certificate) {
    v.certificate = header("flats", m, v.is_comatroid) +
                    (v.is_comatroid ? " checked=" + std::to_string(scan.checked) : " flat=" + join_points(scan.violating)) +
                    "\n";
  }
  return v;
}

Verdict decide_forbidden_flats(const EmbeddedMatroid& m, const ForbiddenCatalog& catalog,
                               const DecideOptions& options) {
  check_rank(m, kCanonicalRankCap);
  if (catalog.field() != m.field()) throw DomainError("catalog field does not match the matroid");
  const ForbiddenScan scan = scan_forbidden(m, catalog);
  Verdict v;
  v.method = Method::ForbiddenFlats;
  v.is_comatroid = !scan.hit.has_value();
  if (options.certificate) {
    std::string line = header("forbidden", m, v.is_comatroid);
    if (scan.hit) {
      line += std::string(" side=") + (scan.hit->green_side ? "green" : "red") + " flat=" + join_points(scan.hit->flat) +
              " entry=" + scan.hit->entry;
    } else {
      line += " checked=" + std::to_string(scan.checked);
    }
    v.certificate = line + "\n";
  }
  return v;
}

Verdict decide(const EmbeddedMatroid& m, Method method, const DecideOptions& options) {
  switch (method) {
    case Method::Recursive:
      return decide_recursive(m, options);
    case Method::FlatCriterion:
      return decide_flat_criterion(m, options);
    case Method::ForbiddenFlats:
      return decide_forbidden_flats(m, ForbiddenCatalog::get(m.field()), options);
  }
  throw DomainError("unknown method");
}

bool is_comatroid(const EmbeddedMatroid& m) { return decide_recursive(m).is_comatroid; }

std::vector<PointSet> violating_flats(const EmbeddedMatroid& m) {
  check_rank(m, kDecideRankCap);
  std::vector<PointSet> out;
  for_each_violation(m, [&](PointSet flat) {
    out.push_back(std::move(flat));
    return true;
  });
  return out;
}

bool is_minimal_non_comatroid(const EmbeddedMatroid& m) {
  check_rank(m, kDecideRankCap);
  const int r = matroid_rank(m);
  bool minimal = false;
  bool proper = false;
  for_each_violation(m, [&](const PointSet& flat) {
    if (m.space->rank_of(flat) == r) {
      minimal = true;
      return true;
    }
    proper = true;
    return false;
  });
  return minimal && !proper;
}

bool has_forbidden_induced_minor(const EmbeddedMatroid& m, const ForbiddenCatalog& catalog) {
  check_rank(m, 5);
  if (catalog.field() != m.field()) throw DomainError("catalog field does not match the matroid");
  std::unordered_set<std::string> targets;
  for (const auto& e : catalog.induced_minor_list()) targets.insert(e.key);
  const int min_rank = catalog.induced_min_rank();
  std::unordered_set<std::string> seen;
  std::deque<EmbeddedMatroid> queue;
  const auto push = [&](const EmbeddedMatroid& n) {
    if (matroid_rank(n) < min_rank) return false;
    const EmbeddedMatroid spanning = reembed(n);
    const std::string key = canonical_form(spanning);
    if (!seen.insert(key).second) return false;
    if (targets.count(key) != 0) return true;
    queue.push_back(spanning);
    return false;
  };
  if (push(m)) return true;
  while (!queue.empty()) {
    const EmbeddedMatroid n = std::move(queue.front());
    queue.pop_front();
    const int r = matroid_rank(n);
    if (r <= min_rank) continue;
    for (int k = min_rank; k < r; ++k) {
      for (const auto& flat : flats_of_rank(n, k)) {
        if (push(restrict_to_flat(n, flat))) return true;
      }
    }
    bool found = false;
    for_each_point(n.green, [&](PointIndex e) { found = found || push(si_contract(n, e)); });
    if (found) return true;
  }
  return false;
}

// ---- certificate replay -----------------------------------------------------

namespace {

struct ParsedLine {
  std::string kind;
  std::unordered_map<std::string, std::string> fields;
  std::vector<std::string> positional;
};

ParsedLine parse_line(const std::string& line) {
  std::vector<std::string> tokens;
  boost::algorithm::split(tokens, line, boost::algorithm::is_space(), boost::algorithm::token_compress_on);
  ParsedLine out;
  out.kind = tokens.empty() ? "" : tokens[0];
  for (std::size_t i = 1; i < tokens.size(); ++i) {
    const auto eq = tokens[i].find('=');
    if (eq == std::string::npos) {
      out.positional.push_back(tokens[i]);
    } else {
      out.fields[tokens[i].substr(0, eq)] = tokens[i].substr(eq + 1);
    }
  }
  return out;
}

PointSet parse_points(const EmbeddedMatroid& m, const std::string& text) {
  PointSet out = m.space->empty_set();
  if (text.empty()) return out;
  std::vector<std::string> parts;
  boost::algorithm::split(parts, text, boost::algorithm::is_any_of(","));
  for (const auto& p : parts) {
    const unsigned long idx = std::stoul(p);
    if (idx >= m.space->size()) throw DomainError("point index out of range");
    out.set(idx);
  }
  return out;
}

std::vector<int> parse_ids(const std::string& text) {
  std::vector<int> out;
  if (text.empty()) return out;
  std::vector<std::string> parts;
  boost::algorithm::split(parts, text, boost::algorithm::is_any_of(","));
  for (const auto& p : parts) out.push_back(std::stoi(p));
  return out;
}

ReplayResult failure(std::string why) { return ReplayResult{false, false, std::move(why)}; }

ReplayResult replay_trace(const EmbeddedMatroid& m, const std::vector<ParsedLine>& lines, bool claimed) {
  struct Node {
    PointSet green;
    std::string rule;
    std::vector<int> children;
  };
  std::vector<Node> nodes;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& l = lines[i];
    if (l.kind != "node" || l.positional.size() != 1 || std::stoi(l.positional[0]) != static_cast<int>(nodes.size())) {
      return failure("malformed node line");
    }
    const auto rule = l.fields.find("rule");
    const auto green = l.fields.find("green");
    if (rule == l.fields.end() || green == l.fields.end()) return failure("node without rule or green");
    const auto children = l.fields.find("children");
    nodes.push_back(Node{parse_points(m, green->second), rule->second,
                         children == l.fields.end() ? std::vector<int>{} : parse_ids(children->second)});
  }
  if (nodes.empty() || nodes[0].green != m.green) return failure("root node is not the matroid");
  std::vector<int> value(nodes.size(), -1);
  // Children always have larger ids than their parent, so evaluate backwards.
  for (std::size_t id = nodes.size(); id-- > 0;) {
    const Node& node = nodes[id];
    for (int c : node.children) {
      if (c <= static_cast<int>(id) || c >= static_cast<int>(nodes.size())) return failure("bad child id");
    }
    if (node.rule == "empty") {
      if (node.green.any() || !node.children.empty()) return failure("empty rule on a nonempty set");
      value[id] = 1;
    } else if (node.rule == "split") {
      const auto blocks = components(m, node.green);
      if (blocks.size() < 2) return failure("split of a connected set");
      std::set<std::vector<PointIndex>> expected;
      for (const auto& b : blocks) expected.insert(to_indices(b));
      bool all = true;
      std::set<std::vector<PointIndex>> used;
      for (int c : node.children) {
        const auto key = to_indices(nodes[static_cast<std::size_t>(c)].green);
        if (expected.count(key) == 0 || !used.insert(key).second) return failure("split child is not a component");
        all = all && value[static_cast<std::size_t>(c)] == 1;
      }
      if (all && used.size() != expected.size()) return failure("split omits a component");
      value[id] = all ? 1 : 0;
    } else if (node.rule == "complement") {
      if (node.green.none() || !is_connected(m.space, node.green)) return failure("complement of a disconnected set");
      if (node.children.size() != 1) return failure("complement needs one child");
      const FlatHandle span = m.space->closure(node.green);
      const PointSet rest = span.members - node.green;
      const Node& child = nodes[static_cast<std::size_t>(node.children[0])];
      if (child.green != rest) return failure("complement child is not the complement");
      if (m.space->rank_of(rest) == span.rank && is_connected(m.space, rest)) {
        return failure("complement step on a connected equal-rank pair");
      }
      value[id] = value[static_cast<std::size_t>(node.children[0])];
    } else if (node.rule == "reject") {
      const FlatHandle span = m.space->closure(node.green);
      const PointSet rest = span.members - node.green;
      if (node.green.none() || !is_connected(m.space, node.green) || m.space->rank_of(rest) != span.rank ||
          !is_connected(m.space, rest)) {
        return failure("reject step does not hold");
      }
      value[id] = 0;
    } else {
      return failure("unknown rule " + node.rule);
    }
  }
  if ((value[0] == 1) != claimed) return failure("trace evaluates to the opposite verdict");
  return ReplayResult{true, claimed, ""};
}

}  // namespace

ReplayResult replay_certificate(const EmbeddedMatroid& m, std::string_view certificate) {
  std::vector<ParsedLine> lines;
  {
    std::vector<std::string> raw;
    const std::string text(certificate);
    boost::algorithm::split(raw, text, boost::algorithm::is_any_of("\n"));
    for (auto& l : raw) {
      boost::algorithm::trim(l);
      if (!l.empty()) lines.push_back(parse_line(l));
    }
  }
  if (lines.empty()) return failure("empty certificate");
  const ParsedLine& head = lines[0];
  const auto field = [&](const std::string& key) -> std::string {
    const auto it = head.fields.find(key);
    return it == head.fields.end() ? std::string{} : it->second;
  };
  if (field("q") != std::to_string(m.space->q()) || field("rank") != std::to_string(m.ambient_rank())) {
    return failure("certificate is for a different ambient space");
  }
  const std::string verdict_text = field("verdict");
  if (verdict_text != "true" && verdict_text != "false") return failure("missing verdict");
  const bool claimed = verdict_text == "true";
  try {
    if (head.kind == "trace") return replay_trace(m, lines, claimed);
    if (head.kind != "flats" && head.kind != "forbidden") return failure("unknown certificate kind " + head.kind);
    if (lines.size() != 1) return failure("unexpected extra lines");
    if (claimed) {
      // A "no violation" claim carries no witness; re-derive it another way.
      if (!decide_recursive(m).is_comatroid) return failure("matroid is not a comatroid");
      return ReplayResult{true, true, ""};
    }
    const FlatHandle span = m.space->closure(m.green);
    if (head.kind == "flats") {
      const PointSet flat = parse_points(m, field("flat"));
      if (m.space->closure(flat).members != flat || !flat.is_subset_of(span.members)) {
        return failure("violating set is not a projective flat of the span");
      }
      const PointSet x = flat & m.green;
      const PointSet y = flat - m.green;
      const int rx = m.space->rank_of(x);
      if (rx == 0 || rx != m.space->rank_of(y)) return failure("sides of the flat have different ranks");
      if (!is_connected(m.space, x) || !is_connected(m.space, y)) return failure("a side of the flat is disconnected");
      return ReplayResult{true, false, ""};
    }
    const bool green_side = field("side") == "green";
    if (!green_side && field("side") != "red") return failure("bad side");
    const PointSet side = green_side ? m.green : (span.members - m.green);
    const PointSet x = parse_points(m, field("flat"));
    if (!x.is_subset_of(side) || (m.space->closure(x).members & side) != x) {
      return failure("witness is not a flat of the claimed side");
    }
    if (!is_connected(m.space, x)) return failure("witness flat is disconnected");
    const auto name = ForbiddenCatalog::get(m.field()).match(m.space, x);
    if (!name || *name != field("entry")) return failure("witness flat does not match the named entry");
    return ReplayResult{true, false, ""};
  } catch (const std::exception& e) {
    return failure(e.what());
  }
}

}  // namespace comatroid
