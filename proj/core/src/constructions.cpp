#include "comatroid/constructions.hpp"

#include <algorithm>
#include <mutex>
#include <regex>
#include <set>
#include <sstream>

#include "comatroid/bundled_data.hpp"
#include "comatroid/error.hpp"
#include "comatroid/text_format.hpp"

namespace comatroid {

namespace {

Vec unit(int i) { return with_coord(Vec{}, i, 1); }

Vec shift(const Vec& v, int by) { return Vec{v.pos << by, v.neg << by}; }

std::vector<std::string> labels_of(const MatrixPresentation& pres) {
  if (!pres.labels.empty()) return pres.labels;
  std::vector<std::string> out;
  for (std::size_t c = 0; c < pres.columns.size(); ++c) out.push_back(std::to_string(c));
  return out;
}

// Columns of pres in coordinates of a basis of their span that contains column
// p, placed first or last. Returns the rank through `rank`.
std::vector<Vec> coordinates_around(const MatrixPresentation& pres, int p, bool basepoint_first, bool allow_coloop,
                                    int& rank) {
  if (p < 0 || static_cast<std::size_t>(p) >= pres.columns.size()) throw DomainError("basepoint index out of range");
  const LabeledMatroid lm = embed_labeled(pres);
  const PointSpace& space = *lm.matroid.space;
  const PointIndex base = lm.points[static_cast<std::size_t>(p)];
  PointSet others = lm.matroid.green;
  others.reset(base);
  if (!allow_coloop && space.rank_of(others) < space.rank()) throw DomainError("basepoint is a coloop");
  LinearBasis probe(space.field());
  probe.insert(space.vector(base));
  std::vector<PointIndex> basis;
  for (PointIndex q : lm.points) {
    if (q != base && probe.insert(space.vector(q))) basis.push_back(q);
  }
  if (basepoint_first) {
    basis.insert(basis.begin(), base);
  } else {
    basis.push_back(base);
  }
  const Frame frame(lm.matroid.space, basis);
  rank = frame.rank();
  std::vector<Vec> out;
  for (PointIndex q : lm.points) out.push_back(*frame.local_coordinates(space.vector(q)));
  return out;
}

MatrixPresentation glue(const MatrixPresentation& a, int p1, const MatrixPresentation& b, int p2, bool keep_base) {
  if (a.field != b.field) throw DomainError("cannot glue matroids over different fields");
  int ra = 0;
  int rb = 0;
  const auto ca = coordinates_around(a, p1, false, keep_base, ra);
  const auto cb = coordinates_around(b, p2, true, keep_base, rb);
  MatrixPresentation out;
  out.field = a.field;
  out.rows = ra + rb - 1;
  const auto la = labels_of(a);
  const auto lb = labels_of(b);
  std::set<std::string> used;
  const auto add_column = [&](const Vec& v, std::string label) {
    while (used.count(label) != 0) label += '\'';
    used.insert(label);
    out.columns.push_back(v);
    out.labels.push_back(std::move(label));
  };
  for (std::size_t c = 0; c < ca.size(); ++c) {
    if (!keep_base && static_cast<int>(c) == p1) continue;
    add_column(ca[c], la[c]);
  }
  for (std::size_t c = 0; c < cb.size(); ++c) {
    if (static_cast<int>(c) == p2) continue;
    add_column(shift(cb[c], ra - 1), lb[c]);
  }
  return out;
}

int find_label(const MatrixPresentation& pres, const std::string& label) {
  const auto it = std::find(pres.labels.begin(), pres.labels.end(), label);
  if (it == pres.labels.end()) throw DomainError("no column labelled " + label);
  return static_cast<int>(it - pres.labels.begin());
}

MatrixPresentation with_labels(MatrixPresentation pres, const std::string& prefix) {
  pres.labels.clear();
  for (std::size_t c = 0; c < pres.columns.size(); ++c) pres.labels.push_back(prefix + std::to_string(c));
  return pres;
}

// M(K4) (edges (0,1),(0,2),(0,3),(1,2),(1,3),(2,3)) over GF(3) plus the fourth
// point of the line of the triangle {02, 03, 23}, which avoids edge 01.
MatrixPresentation k4_with_line_point() {
  MatrixPresentation k4 = graph_cycle_matroid({{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}, Field::GF3);
  const Field f = Field::GF3;
  const Vec a = k4.columns[1];
  const Vec b = k4.columns[2];
  for (const Vec& candidate : {add(f, a, b), sub(f, a, b)}) {
    const bool present = std::any_of(k4.columns.begin(), k4.columns.end(),
                                     [&](const Vec& c) { return normalize(f, c) == normalize(f, candidate); });
    if (!present) {
      k4.columns.push_back(candidate);
      break;
    }
  }
  return k4;
}

MatrixPresentation whirl3() {
  MatrixPresentation out;
  out.field = Field::GF3;
  out.rows = 3;
  for (const char* digits : {"100", "010", "001", "110", "011", "101"}) {
    Vec v;
    for (int i = 0; i < 3; ++i) v = with_coord(v, i, digits[i] - '0');
    out.columns.push_back(v);
  }
  out.labels = {"x1", "x2", "x3", "y1", "y2", "y3"};
  return out;
}

MatrixPresentation from_data(std::string_view name) {
  const auto text = bundled_data(name);
  if (!text) throw CatalogError("missing bundled data '" + std::string(name) + "'");
  return parse_presentation(*text);
}

}  // namespace

MatrixPresentation circuit(int k, Field q) {
  if (k < 3) throw DomainError("a circuit needs at least 3 elements");
  if (k - 1 > kMaxCoordinates) throw DomainError("circuit too large");
  MatrixPresentation out;
  out.field = q;
  out.rows = k - 1;
  Vec ones;
  for (int i = 0; i < k - 1; ++i) {
    out.columns.push_back(unit(i));
    ones = with_coord(ones, i, 1);
  }
  out.columns.push_back(ones);
  return out;
}

MatrixPresentation uniform(int r, int n, Field q) {
  if (r < 0 || n < r) throw DomainError("invalid uniform matroid parameters");
  MatrixPresentation out;
  out.field = q;
  out.rows = r;
  if (n == r) {
    for (int i = 0; i < n; ++i) out.columns.push_back(unit(i));
    return out;
  }
  if (n == r + 1 && r >= 2) return circuit(n, q);
  if (r == 1) throw DomainError("U_{1,n} with n > 1 is not simple");
  if (r == 2 && n <= order(q) + 1) {
    const auto pg = projective_geometry(2, q);
    out.columns.assign(pg.columns.begin(), pg.columns.begin() + n);
    return out;
  }
  throw DomainError("U_{" + std::to_string(r) + "," + std::to_string(n) + "} is not simple and GF(" +
                    std::to_string(order(q)) + ")-representable");
}

MatrixPresentation projective_geometry(int rank, Field q) {
  const SpacePtr space = PointSpace::get(q, rank);
  MatrixPresentation out;
  out.field = q;
  out.rows = rank;
  out.columns = space->vectors();
  return out;
}

MatrixPresentation affine_geometry(int rank, Field q) {
  if (rank < 1) throw DomainError("affine geometry needs rank at least 1");
  MatrixPresentation out = projective_geometry(rank, q);
  std::erase_if(out.columns, [](const Vec& v) { return coord(v, 0) == 0; });
  return out;
}

MatrixPresentation graph_cycle_matroid(const std::vector<Edge>& edges, Field q) {
  int vertices = 0;
  std::set<Edge> seen;
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0) throw DomainError("negative vertex");
    if (u == v) throw DomainError("graph has a loop");
    if (!seen.insert({std::min(u, v), std::max(u, v)}).second) throw DomainError("graph has parallel edges");
    vertices = std::max({vertices, u + 1, v + 1});
  }
  if (vertices > kMaxCoordinates) throw DomainError("graph has too many vertices");
  MatrixPresentation out;
  out.field = q;
  out.rows = vertices;
  for (auto [u, v] : edges) {
    out.columns.push_back(with_coord(unit(u), v, q == Field::GF2 ? 1 : 2));
  }
  return out;
}

MatrixPresentation parallel_connection(const MatrixPresentation& a, int p1, const MatrixPresentation& b, int p2) {
  return glue(a, p1, b, p2, true);
}

MatrixPresentation two_sum(const MatrixPresentation& a, int p1, const MatrixPresentation& b, int p2) {
  return glue(a, p1, b, p2, false);
}

MatrixPresentation circuit_with_u24(int k, const std::vector<int>& positions) {
  MatrixPresentation out = with_labels(circuit(k, Field::GF3), "c");
  std::set<int> distinct;
  for (int d : positions) {
    if (d < 0 || d >= k) throw DomainError("circuit position out of range");
    if (!distinct.insert(d).second) throw DomainError("repeated circuit position");
  }
  for (int d : distinct) {
    const auto u24 = with_labels(uniform(2, 4, Field::GF3), "u" + std::to_string(d) + "_");
    out = two_sum(out, find_label(out, "c" + std::to_string(d)), u24, 0);
  }
  return out;
}

MatrixPresentation four_hyperplane_family(int n) {
  if (n < 1) throw DomainError("the family starts at n = 1");
  if (n > 4) throw ResourceLimitError("the family is capped at n = 4");
  // x_i is vertex i, y_i is vertex n+i.
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) edges.emplace_back(i, n + i);
  for (int i = 0; i + 1 < n; ++i) {
    edges.emplace_back(i, i + 1);
    edges.emplace_back(n + i, n + i + 1);
    edges.emplace_back(i, n + i + 1);
    edges.emplace_back(i + 1, n + i);
  }
  MatrixPresentation ladder = graph_cycle_matroid(edges, Field::GF3);
  ladder.labels.clear();
  for (auto [u, v] : edges) {
    const auto name = [n](int x) { return (x < n ? "x" : "y") + std::to_string(x % n + 1); };
    ladder.labels.push_back(name(u) + name(v));
  }
  const auto ends = with_labels(k4_with_line_point(), "a");
  MatrixPresentation out = parallel_connection(ladder, 0, ends, 0);
  const auto other = with_labels(k4_with_line_point(), "b");
  return parallel_connection(out, find_label(out, "x" + std::to_string(n) + "y" + std::to_string(n)), other, 0);
}

std::vector<Edge> graph_from_mask(unsigned mask, int vertices) {
  std::vector<Edge> out;
  int bit = 0;
  for (int u = 0; u < vertices; ++u) {
    for (int v = u + 1; v < vertices; ++v, ++bit) {
      if ((mask >> bit) & 1U) out.emplace_back(u, v);
    }
  }
  return out;
}

const std::vector<std::pair<std::string, std::vector<Edge>>>& minimal_binary_graphs() {
  static const auto graphs = [] {
    std::vector<std::pair<std::string, std::vector<Edge>>> out;
    const auto text = bundled_data("minimal_graphs");
    if (!text) throw CatalogError("missing bundled data 'minimal_graphs'");
    std::istringstream in{std::string(*text)};
    std::string line;
    while (std::getline(in, line)) {
      if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      std::istringstream fields(line);
      std::string name;
      if (!(fields >> name)) continue;
      std::vector<Edge> edges;
      std::string token;
      while (fields >> token) {
        const auto dash = token.find('-');
        edges.emplace_back(std::stoi(token.substr(0, dash)), std::stoi(token.substr(dash + 1)));
      }
      out.emplace_back(name, std::move(edges));
    }
    return out;
  }();
  return graphs;
}

namespace {

struct FixedEntry {
  const char* name;
  MatrixPresentation (*build)();
};

MatrixPresentation k4_binary() { return graph_cycle_matroid({{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}, Field::GF2); }
MatrixPresentation k4_ternary() { return graph_cycle_matroid({{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}, Field::GF3); }
MatrixPresentation k23() { return graph_cycle_matroid({{0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}}, Field::GF2); }

const std::vector<FixedEntry>& fixed_entries() {
  static const std::vector<FixedEntry> entries = {
      {"U0,0", [] { return MatrixPresentation{Field::GF2, 0, {}, {}}; }},
      {"F7", [] { return projective_geometry(3, Field::GF2); }},
      {"M(K4)", k4_binary},
      {"M(K4)@3", k4_ternary},
      {"W3", whirl3},
      {"M(K2,3)", k23},
      {"M(K3,3)", [] { return from_data("k33"); }},
      {"P(U34,U34)", [] { return parallel_connection(circuit(4, Field::GF2), 0, circuit(4, Field::GF2), 0); }},
      {"P(U23,U23)@3", [] { return parallel_connection(circuit(3, Field::GF3), 0, circuit(3, Field::GF3), 0); }},
      {"P(U24,U23)", [] { return parallel_connection(uniform(2, 4, Field::GF3), 0, circuit(3, Field::GF3), 0); }},
      {"U24+2U23", [] { return two_sum(uniform(2, 4, Field::GF3), 0, circuit(3, Field::GF3), 0); }},
      {"U24+2U24", [] { return two_sum(uniform(2, 4, Field::GF3), 0, uniform(2, 4, Field::GF3), 0); }},
      {"P(F7,U23)", [] { return parallel_connection(projective_geometry(3, Field::GF2), 0, circuit(3, Field::GF2), 0); }},
      {"AG(2,3)\\e", [] {
         auto ag = affine_geometry(3, Field::GF3);
         ag.columns.erase(ag.columns.begin());
         return ag;
       }},
      {"Delta5", [] { return from_data("delta5"); }},
      {"T12/e", [] { return from_data("t12e"); }},
      {"M5,12a", [] { return from_data("m512a"); }},
      {"M5,12b", [] { return from_data("m512b"); }},
      {"M5,13", [] { return from_data("m513"); }},
      {"m2-first", [] { return from_data("m2_first"); }},
      {"m2-second", [] { return from_data("m2_second"); }},
      {"extra-first", [] { return from_data("extra_first"); }},
      {"extra-second", [] { return from_data("extra_second"); }},
      {"f77", [] { return from_data("f77"); }},
  };
  return entries;
}

Field field_suffix(std::string& name, Field fallback) {
  if (name.size() > 2 && name[name.size() - 2] == '@') {
    const int q = name.back() - '0';
    name.resize(name.size() - 2);
    return field_from_order(q);
  }
  return fallback;
}

}  // namespace

MatrixPresentation named(std::string_view requested) {
  const std::string full(requested);
  for (const auto& entry : fixed_entries()) {
    if (full == entry.name) return entry.build();
  }
  for (const auto& [name, edges] : minimal_binary_graphs()) {
    if (full == name) return graph_cycle_matroid(edges, Field::GF2);
  }
  std::string name = full;
  static const std::regex geometry(R"((PG|AG)\((\d+),(\d+)\))");
  static const std::regex uniform_name(R"(U(\d+),(\d+))");
  static const std::regex circuit_name(R"(C(\d+))");
  static const std::regex family_name(R"(family\((\d+)\))");
  std::smatch m;
  try {
    if (std::regex_match(name, m, geometry)) {
      const int rank = std::stoi(m[2]) + 1;
      const Field q = field_from_order(std::stoi(m[3]));
      return m[1] == "PG" ? projective_geometry(rank, q) : affine_geometry(rank, q);
    }
    if (std::regex_match(name, m, family_name)) return four_hyperplane_family(std::stoi(m[1]));
    const Field q = field_suffix(name, Field::GF2);
    if (std::regex_match(name, m, circuit_name)) return circuit(std::stoi(m[1]), q);
    if (std::regex_match(name, m, uniform_name)) {
      const int r = std::stoi(m[1]);
      const int n = std::stoi(m[2]);
      // U_{2,4} exists only over GF(3), so the suffix may be omitted there.
      const bool needs_three = r == 2 && n == 4;
      return uniform(r, n, needs_three && full.find('@') == std::string::npos ? Field::GF3 : q);
    }
  } catch (const DomainError& e) {
    throw CatalogError("catalog entry '" + full + "': " + e.what());
  } catch (const UnsupportedFieldError& e) {
    throw CatalogError("catalog entry '" + full + "': " + e.what());
  }
  throw CatalogError("unknown catalog entry '" + full + "'");
}

std::vector<std::string> catalog_names() {
  std::vector<std::string> out;
  for (const auto& entry : fixed_entries()) out.emplace_back(entry.name);
  for (const auto& [name, edges] : minimal_binary_graphs()) out.push_back(name);
  return out;
}

}  // namespace comatroid
