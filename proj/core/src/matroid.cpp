#include "comatroid/matroid.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <unordered_map>

#include <boost/pending/disjoint_sets.hpp>

#include "comatroid/error.hpp"

namespace comatroid {

namespace {

// Keeps only the coordinates selected by mask, packed towards coordinate 0.
Vec compress(const Vec& v, std::uint32_t mask) {
  Vec out;
  int next = 0;
  for (int i = 0; i < kMaxCoordinates; ++i) {
    if (!((mask >> i) & 1U)) continue;
    out = with_coord(out, next++, coord(v, i));
  }
  return out;
}

// Blocks of a union-find over positions of `elems`, as point sets ordered by
// their first point.
std::vector<PointSet> collect_blocks(boost::disjoint_sets_with_storage<>& uf, const std::vector<PointIndex>& elems,
                                     std::size_t universe) {
  std::map<std::size_t, std::size_t> block_of_root;
  std::vector<PointSet> blocks;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    const std::size_t root = uf.find_set(i);
    auto [it, fresh] = block_of_root.emplace(root, blocks.size());
    if (fresh) blocks.emplace_back(universe);
    blocks[it->second].set(elems[i]);
  }
  return blocks;
}

std::vector<PointSet> components_in(const PointSpace& space, const PointSet& s) {
  const std::vector<PointIndex> elems = to_indices(s);
  boost::disjoint_sets_with_storage<> uf(elems.size());
  for (std::size_t i = 0; i < elems.size(); ++i) uf.make_set(i);
  LinearBasis basis(space.field());
  std::vector<std::size_t> basis_pos;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    const Vec& v = space.vector(elems[i]);
    const auto red = basis.reduce(v);
    if (!red.residual.is_zero()) {
      basis.insert(v);
      basis_pos.push_back(i);
      continue;
    }
    // Fundamental circuit of elems[i] with respect to the greedy basis.
    std::uint32_t support = red.combo.support();
    while (support != 0) {
      const int j = __builtin_ctz(support);
      support &= support - 1;
      uf.union_set(i, basis_pos[static_cast<std::size_t>(j)]);
    }
  }
  return collect_blocks(uf, elems, space.size());
}

PointSet intersect(const PointSet& a, const PointSet& b) { return a & b; }

}  // namespace

EmbeddedMatroid make_matroid(SpacePtr space, const std::vector<PointIndex>& green) {
  PointSet set = space->empty_set();
  for (PointIndex p : green) {
    if (p >= space->size()) throw DomainError("point index " + std::to_string(p) + " out of range");
    set.set(p);
  }
  return EmbeddedMatroid{std::move(space), std::move(set)};
}

PointSet LabeledMatroid::select(const std::vector<std::string>& wanted) const {
  PointSet out = matroid.space->empty_set();
  for (const auto& name : wanted) {
    const auto it = std::find(labels.begin(), labels.end(), name);
    if (it == labels.end()) throw DomainError("unknown label '" + name + "'");
    out.set(points[static_cast<std::size_t>(it - labels.begin())]);
  }
  return out;
}

LabeledMatroid embed_labeled(const MatrixPresentation& pres) {
  if (pres.rows < 0 || pres.rows > kMaxCoordinates) throw DomainError("unsupported number of rows");
  if (!pres.labels.empty() && pres.labels.size() != pres.columns.size()) {
    throw DomainError("label count does not match column count");
  }
  const Field f = pres.field;
  const auto rank_on = [&](std::uint32_t mask) {
    LinearBasis b(f);
    for (const Vec& c : pres.columns) b.insert(compress(c, mask));
    return b.size();
  };
  std::uint32_t rows = 0;
  int rank = 0;
  for (int i = 0; i < pres.rows; ++i) {
    const std::uint32_t trial = rows | (std::uint32_t{1} << i);
    const int r = rank_on(trial);
    if (r > rank) {
      rows = trial;
      rank = r;
    }
  }
  SpacePtr space = PointSpace::get(f, rank);
  LabeledMatroid out{EmbeddedMatroid{space, space->empty_set()}, {}, {}};
  for (std::size_t c = 0; c < pres.columns.size(); ++c) {
    const Vec v = compress(pres.columns[c], rows);
    const std::string name = pres.labels.empty() ? std::to_string(c) : pres.labels[c];
    if (v.is_zero()) throw SimplicityError("column " + name + " is zero");
    const PointIndex p = space->index_of(normalize(f, v));
    if (out.matroid.green.test(p)) throw SimplicityError("column " + name + " is parallel to an earlier column");
    out.matroid.green.set(p);
    out.points.push_back(p);
    out.labels.push_back(name);
  }
  return out;
}

EmbeddedMatroid embed(const MatrixPresentation& pres) { return embed_labeled(pres).matroid; }

MatrixPresentation to_presentation(const EmbeddedMatroid& m) {
  MatrixPresentation out;
  out.field = m.field();
  out.rows = m.ambient_rank();
  for_each_point(m.green, [&](PointIndex p) { out.columns.push_back(m.space->vector(p)); });
  return out;
}

int matroid_rank(const EmbeddedMatroid& m, const PointSet& s) { return m.space->rank_of(s); }
int matroid_rank(const EmbeddedMatroid& m) { return m.space->rank_of(m.green); }

EmbeddedMatroid reembed(const EmbeddedMatroid& m) {
  const Frame frame = Frame::spanning(m.space, m.green);
  if (frame.is_identity()) return m;
  return EmbeddedMatroid{frame.local_ptr(), frame.to_local(m.green)};
}

std::vector<MatroidFlat> flats_of_rank(const EmbeddedMatroid& m, int k) {
  const Frame frame = Frame::spanning(m.space, m.green);
  const int r = frame.rank();
  std::vector<MatroidFlat> out;
  if (k < 0 || k > r) return out;
  const PointSet local_green = frame.to_local(m.green);
  for (const FlatHandle& flat : frame.local().flats(k)) {
    PointSet members = intersect(flat.members, local_green);
    if (frame.local().rank_of(members) != k) continue;
    PointSet ambient_members = frame.to_ambient(members);
    FlatHandle span{frame.to_ambient(flat.members), k};
    out.push_back(MatroidFlat{std::move(ambient_members), std::move(span)});
  }
  return out;
}

std::vector<MatroidFlat> flats_of(const EmbeddedMatroid& m) {
  std::vector<MatroidFlat> out;
  const int r = matroid_rank(m);
  for (int k = 0; k <= r; ++k) {
    auto layer = flats_of_rank(m, k);
    std::move(layer.begin(), layer.end(), std::back_inserter(out));
  }
  return out;
}

std::vector<PointSet> components(const EmbeddedMatroid& m, const PointSet& s) { return components_in(*m.space, s); }

bool is_connected(const SpacePtr& space, const PointSet& s) {
  if (s.count() <= 1) return true;
  return components_in(*space, s).size() == 1;
}

bool is_connected(const EmbeddedMatroid& m) { return is_connected(m.space, m.green); }

int vertical_connectivity(const EmbeddedMatroid& m, const PointSet& s) {
  if (s.count() > kBruteForceCap) {
    throw ResourceLimitError("vertical connectivity is capped at " + std::to_string(kBruteForceCap) + " elements");
  }
  if (s.none()) return 0;
  const Frame frame = Frame::spanning(m.space, s);
  const PointSpace& local = frame.local();
  const PointSet ls = frame.to_local(s);
  const int r = frame.rank();
  // An optimal vertical separation can be taken with one side a flat of M|S.
  int best = r;
  for (int k = 1; k < r; ++k) {
    for (const FlatHandle& flat : local.flats(k)) {
      const PointSet a = flat.members & ls;
      if (local.rank_of(a) != k) continue;
      const int rb = local.rank_of(ls - a);
      const int lambda = k + rb - r;
      if (lambda < std::min(k, rb)) best = std::min(best, lambda + 1);
    }
  }
  return best;
}

std::vector<PointSet> circuits(const EmbeddedMatroid& m, const PointSet& s, std::size_t size_cap) {
  if (s.count() > kBruteForceCap) {
    throw ResourceLimitError("circuit enumeration is capped at " + std::to_string(kBruteForceCap) + " elements");
  }
  const std::vector<PointIndex> elems = to_indices(s);
  const PointSpace& space = *m.space;
  std::vector<PointSet> out;
  std::vector<std::size_t> chosen;
  // Each circuit C is found once, from the independent set C - max(C).
  const auto dfs = [&](auto&& self, const LinearBasis& basis, std::size_t start) -> void {
    const std::uint32_t full = basis.size() == 32 ? ~0U : ((1U << basis.size()) - 1);
    for (std::size_t i = start; i < elems.size(); ++i) {
      const Vec& v = space.vector(elems[i]);
      const auto red = basis.reduce(v);
      if (red.residual.is_zero()) {
        if (red.combo.support() == full && basis.size() > 0 && chosen.size() + 1 <= size_cap) {
          PointSet c = space.empty_set();
          for (std::size_t j : chosen) c.set(elems[j]);
          c.set(elems[i]);
          out.push_back(std::move(c));
        }
        continue;
      }
      if (chosen.size() + 2 > size_cap) continue;
      LinearBasis next = basis;
      next.insert(v);
      chosen.push_back(i);
      self(self, next, i + 1);
      chosen.pop_back();
    }
  };
  dfs(dfs, LinearBasis(space.field()), 0);
  std::sort(out.begin(), out.end(), [](const PointSet& a, const PointSet& b) {
    if (a.count() != b.count()) return a.count() < b.count();
    return to_indices(a) < to_indices(b);
  });
  return out;
}

std::vector<MatroidFlat> hyperplanes(const EmbeddedMatroid& m) {
  const int r = matroid_rank(m);
  if (r == 0) return {};
  return flats_of_rank(m, r - 1);
}

std::vector<MatroidFlat> connected_hyperplanes(const EmbeddedMatroid& m) {
  std::vector<MatroidFlat> out;
  for (auto& h : hyperplanes(m)) {
    if (is_connected(m.space, h.members)) out.push_back(std::move(h));
  }
  return out;
}

std::size_t count_connected_hyperplanes(const EmbeddedMatroid& m) { return connected_hyperplanes(m).size(); }

std::size_t cocircuits_min_size(const EmbeddedMatroid& m) {
  if (m.green.none()) throw DomainError("the empty matroid has no cocircuits");
  std::size_t best = std::numeric_limits<std::size_t>::max();
  const std::size_t n = m.size();
  for (const auto& h : hyperplanes(m)) best = std::min(best, n - h.members.count());
  return best;
}

std::vector<PointSet> series_classes(const EmbeddedMatroid& m) {
  const std::vector<PointIndex> elems = to_indices(m.green);
  std::unordered_map<PointIndex, std::size_t> pos;
  for (std::size_t i = 0; i < elems.size(); ++i) pos[elems[i]] = i;
  boost::disjoint_sets_with_storage<> uf(elems.size());
  for (std::size_t i = 0; i < elems.size(); ++i) uf.make_set(i);
  for (const auto& h : hyperplanes(m)) {
    const PointSet cocircuit = m.green - h.members;
    if (cocircuit.count() != 2) continue;
    const auto pair = to_indices(cocircuit);
    uf.union_set(pos[pair[0]], pos[pair[1]]);
  }
  return collect_blocks(uf, elems, m.space->size());
}

bool is_free_element(const EmbeddedMatroid& m, PointIndex e) {
  if (e >= m.space->size() || !m.green.test(e)) throw DomainError("element is not in the ground set");
  PointSet rest = m.green;
  rest.reset(e);
  const int r = matroid_rank(m);
  if (m.space->rank_of(rest) < r) return false;
  for (const auto& h : hyperplanes(m)) {
    if (!h.members.test(e)) continue;
    PointSet without = h.members;
    without.reset(e);
    if (m.space->rank_of(without) == r - 1) return false;
  }
  return true;
}

EmbeddedMatroid complement(const EmbeddedMatroid& m, int t) {
  const Frame frame = Frame::spanning(m.space, m.green);
  const int r = frame.rank();
  if (t < 0) t = r;
  if (t < r) throw DomainError("complement rank " + std::to_string(t) + " is below the matroid rank " + std::to_string(r));
  if (frame.is_identity() && t == r) return EmbeddedMatroid{m.space, ~m.green};
  SpacePtr target = PointSpace::get(m.field(), t);
  PointSet green = target->full_set();
  const PointSet local = frame.to_local(m.green);
  // Local coordinates occupy the first r coordinates of the target space.
  for_each_point(local, [&](PointIndex p) { green.reset(target->index_of(frame.local().vector(p))); });
  return EmbeddedMatroid{std::move(target), std::move(green)};
}

EmbeddedMatroid direct_sum(const EmbeddedMatroid& a, const EmbeddedMatroid& b) {
  if (a.field() != b.field()) throw DomainError("direct sum of matroids over different fields");
  const Frame fa = Frame::spanning(a.space, a.green);
  const Frame fb = Frame::spanning(b.space, b.green);
  const int ra = fa.rank();
  SpacePtr target = PointSpace::get(a.field(), ra + fb.rank());
  PointSet green = target->empty_set();
  for_each_point(fa.to_local(a.green), [&](PointIndex p) { green.set(target->index_of(fa.local().vector(p))); });
  for_each_point(fb.to_local(b.green), [&](PointIndex p) {
    const Vec& v = fb.local().vector(p);
    green.set(target->index_of(Vec{v.pos << ra, v.neg << ra}));
  });
  return EmbeddedMatroid{std::move(target), std::move(green)};
}

EmbeddedMatroid si_contract(const EmbeddedMatroid& m, PointIndex e) {
  if (e >= m.space->size() || !m.green.test(e)) throw DomainError("element is not in the ground set");
  const PointSpace& space = *m.space;
  const Field f = space.field();
  // Basis of the span: greedy points of M independent together with e, then e.
  LinearBasis probe(f);
  probe.insert(space.vector(e));
  std::vector<PointIndex> basis;
  for_each_point(m.green, [&](PointIndex p) {
    if (p != e && probe.insert(space.vector(p))) basis.push_back(p);
  });
  basis.push_back(e);
  const Frame frame(m.space, basis);
  const int r = frame.rank();
  SpacePtr target = PointSpace::get(f, r - 1);
  PointSet green = target->empty_set();
  for_each_point(m.green, [&](PointIndex p) {
    if (p == e) return;
    const Vec image = truncate(*frame.local_coordinates(space.vector(p)), r - 1);
    green.set(target->index_of(normalize(f, image)));
  });
  return EmbeddedMatroid{std::move(target), std::move(green)};
}

EmbeddedMatroid restrict_to_flat(const EmbeddedMatroid& m, const PointSet& members) {
  if (members.size() != m.space->size() || !members.is_subset_of(m.green)) {
    throw DomainError("flat is not a subset of the ground set");
  }
  const FlatHandle span = m.space->closure(members);
  if ((span.members & m.green) != members) throw DomainError("set is not a flat of the matroid");
  return reembed(EmbeddedMatroid{m.space, members});
}

EmbeddedMatroid restrict_to_flat(const EmbeddedMatroid& m, const MatroidFlat& f) {
  return restrict_to_flat(m, f.members);
}

}  // namespace comatroid
