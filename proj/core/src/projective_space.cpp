#include "comatroid/projective_space.hpp"

#include <algorithm>
#include <map>

#include "comatroid/error.hpp"

namespace comatroid {

std::vector<PointIndex> to_indices(const PointSet& s) {
  std::vector<PointIndex> out;
  out.reserve(s.count());
  for_each_point(s, [&](PointIndex i) { out.push_back(i); });
  return out;
}

namespace {

int ipow(int base, int exp) {
  int out = 1;
  for (int i = 0; i < exp; ++i) out *= base;
  return out;
}

// All combinations sum_j c_j * b_j whose first nonzero coefficient is 1, i.e.
// one representative per projective point of the span.
template <typename Fn>
void for_each_span_vector(Field f, const std::vector<Vec>& basis, Fn&& fn) {
  const int k = static_cast<int>(basis.size());
  // suffix[i] holds every combination (including zero) of basis[i..k).
  std::vector<Vec> suffix{Vec{}};
  for (int i = k - 1; i >= 0; --i) {
    for (const Vec& tail : suffix) fn(add(f, basis[static_cast<std::size_t>(i)], tail));
    if (i == 0) break;
    std::vector<Vec> next;
    next.reserve(suffix.size() * static_cast<std::size_t>(order(f)));
    for (int c = 0; c < order(f); ++c) {
      const Vec scaled = scale(f, basis[static_cast<std::size_t>(i)], c);
      for (const Vec& tail : suffix) next.push_back(add(f, scaled, tail));
    }
    suffix = std::move(next);
  }
}

}  // namespace

PointSpace::PointSpace(Field f, int rank) : field_(f), rank_(rank) {
  const int q = order(f);
  const int total = ipow(q, rank);
  // Codes enumerate tuples in lexicographic order (coordinate 0 most significant).
  for (int code = 1; code < total; ++code) {
    Vec v;
    int rest = code;
    for (int i = rank - 1; i >= 0; --i) {
      v = with_coord(v, i, rest % q);
      rest /= q;
    }
    if (coord(v, leading_coordinate(v)) == 1) points_.push_back(v);
  }
  const std::size_t table = f == Field::GF2 ? (std::size_t{1} << rank) : (std::size_t{1} << (2 * rank));
  index_by_key_.assign(table, -1);
  for (std::size_t i = 0; i < points_.size(); ++i) index_by_key_[key_of(points_[i])] = static_cast<std::int32_t>(i);

  const std::size_t n = points_.size();
  if (n <= kPartnerTableLimit && n > 0) {
    const std::size_t width = static_cast<std::size_t>(q - 1);
    line_partners_.assign(n * n * width, 0);
    for (PointIndex a = 0; a < n; ++a) {
      for (PointIndex b = 0; b < n; ++b) {
        if (a == b) continue;
        const std::size_t base = (static_cast<std::size_t>(a) * n + b) * width;
        line_partners_[base] = index_of(add(f, points_[a], points_[b]));
        if (f == Field::GF3) line_partners_[base + 1] = index_of(sub(f, points_[a], points_[b]));
      }
    }
  }
}

std::shared_ptr<const PointSpace> PointSpace::get(Field f, int rank) {
  if (rank < 0) throw DomainError("projective rank must be non-negative");
  if (rank > kMaxRank) {
    throw ResourceLimitError("projective rank " + std::to_string(rank) + " exceeds the cap of " +
                             std::to_string(kMaxRank));
  }
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::shared_ptr<const PointSpace>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[{order(f), rank}];
  if (!slot) slot = std::shared_ptr<const PointSpace>(new PointSpace(f, rank));
  return slot;
}

std::uint32_t PointSpace::key_of(const Vec& v) const {
  return field_ == Field::GF2 ? v.pos : (v.pos | (v.neg << rank_));
}

PointIndex PointSpace::index_of(const Vec& v) const {
  const Vec n = normalize(field_, truncate(v, rank_));
  if (n.is_zero() || !(truncate(v, rank_) == v)) throw DomainError("vector does not name a point of this space");
  const std::int32_t idx = index_by_key_[key_of(n)];
  return static_cast<PointIndex>(idx);
}

std::array<PointIndex, 2> PointSpace::line_partners(PointIndex a, PointIndex b) const {
  if (!line_partners_.empty()) {
    const std::size_t width = static_cast<std::size_t>(q() - 1);
    const std::size_t base = (static_cast<std::size_t>(a) * size() + b) * width;
    return {line_partners_[base], field_ == Field::GF3 ? line_partners_[base + 1] : PointIndex{0}};
  }
  const PointIndex first = index_of(add(field_, points_[a], points_[b]));
  const PointIndex second = field_ == Field::GF3 ? index_of(sub(field_, points_[a], points_[b])) : PointIndex{0};
  return {first, second};
}

LinearBasis PointSpace::basis_of(const PointSet& s) const {
  LinearBasis basis(field_);
  for_each_point(s, [&](PointIndex i) {
    if (basis.size() < rank_) basis.insert(points_[i]);
  });
  return basis;
}

int PointSpace::rank_of(const PointSet& s) const { return basis_of(s).size(); }

PointSet PointSpace::span_points(const LinearBasis& basis) const {
  PointSet out = empty_set();
  std::vector<Vec> gens;
  for (int j = 0; j < basis.size(); ++j) gens.push_back(basis.generator(j));
  for_each_span_vector(field_, gens, [&](const Vec& v) { out.set(index_of(v)); });
  return out;
}

FlatHandle PointSpace::closure(const PointSet& s) const {
  const LinearBasis basis = basis_of(s);
  return FlatHandle{span_points(basis), basis.size()};
}

const std::vector<FlatHandle>& PointSpace::flats(int k) const {
  if (k < 0 || k > rank_) throw DomainError("flat rank out of range");
  std::call_once(flats_once_[static_cast<std::size_t>(k)], [&] {
    auto& out = flats_[static_cast<std::size_t>(k)];
    const int q = order(field_);
    // Pivot columns p_0 < ... < p_{k-1}, chosen in lexicographic order.
    std::vector<int> pivots(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) pivots[static_cast<std::size_t>(i)] = i;
    while (true) {
      // Free entries: row i, column c > p_i with c not a pivot.
      std::vector<std::pair<int, int>> free_slots;
      for (int i = 0; i < k; ++i) {
        for (int c = pivots[static_cast<std::size_t>(i)] + 1; c < rank_; ++c) {
          if (std::find(pivots.begin(), pivots.end(), c) == pivots.end()) free_slots.emplace_back(i, c);
        }
      }
      std::vector<int> values(free_slots.size(), 0);
      while (true) {
        std::vector<Vec> rows(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i) rows[static_cast<std::size_t>(i)] = with_coord(Vec{}, pivots[static_cast<std::size_t>(i)], 1);
        for (std::size_t s = 0; s < free_slots.size(); ++s) {
          auto& row = rows[static_cast<std::size_t>(free_slots[s].first)];
          row = with_coord(row, free_slots[s].second, values[s]);
        }
        PointSet members = empty_set();
        for_each_span_vector(field_, rows, [&](const Vec& v) { members.set(index_of(v)); });
        out.push_back(FlatHandle{std::move(members), k});
        // Odometer over the free entries, last slot fastest.
        std::size_t pos = values.size();
        while (pos > 0) {
          --pos;
          if (++values[pos] < q) break;
          values[pos] = 0;
          if (pos == 0) {
            pos = values.size() + 1;
            break;
          }
        }
        if (values.empty() || pos == values.size() + 1) break;
      }
      // Next pivot combination.
      int i = k - 1;
      while (i >= 0 && pivots[static_cast<std::size_t>(i)] == rank_ - k + i) --i;
      if (i < 0) break;
      ++pivots[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < k; ++j) pivots[static_cast<std::size_t>(j)] = pivots[static_cast<std::size_t>(j - 1)] + 1;
    }
  });
  return flats_[static_cast<std::size_t>(k)];
}

SpacePtr enumerate_points(int r, Field q) { return PointSpace::get(q, r); }
int rank_of(const PointSpace& space, const PointSet& s) { return space.rank_of(s); }
FlatHandle closure(const PointSpace& space, const PointSet& s) { return space.closure(s); }
const std::vector<FlatHandle>& enumerate_flats(const PointSpace& space, int k) { return space.flats(k); }

std::uint64_t gaussian_binomial(int r, int k, int q) {
  if (k < 0 || k > r) return 0;
  std::uint64_t num = 1;
  std::uint64_t den = 1;
  for (int i = 0; i < k; ++i) {
    num *= static_cast<std::uint64_t>(ipow(q, r - i) - 1);
    den *= static_cast<std::uint64_t>(ipow(q, i + 1) - 1);
  }
  return num / den;
}

Frame::Frame(SpacePtr ambient, const std::vector<PointIndex>& basis)
    : ambient_(std::move(ambient)), basis_points_(basis), basis_(ambient_->field()) {
  for (PointIndex p : basis_points_) {
    if (!basis_.insert(ambient_->vector(p))) throw DomainError("frame basis points are dependent");
  }
  const int k = basis_.size();
  identity_ = k == ambient_->rank();
  for (int j = 0; j < k && identity_; ++j) {
    identity_ = basis_.generator(j) == with_coord(Vec{}, j, 1);
  }
  local_ = identity_ ? ambient_ : PointSpace::get(ambient_->field(), k);
  local_to_ambient_.resize(local_->size());
  for (PointIndex i = 0; i < local_->size(); ++i) {
    local_to_ambient_[i] = identity_ ? i : ambient_->index_of(ambient_vector(local_->vector(i)));
  }
}

Frame Frame::spanning(SpacePtr ambient, const PointSet& s) {
  const LinearBasis basis = ambient->basis_of(s);
  std::vector<PointIndex> points;
  if (basis.size() == ambient->rank()) {
    for (int j = 0; j < ambient->rank(); ++j) points.push_back(ambient->index_of(with_coord(Vec{}, j, 1)));
  } else {
    for (int j = 0; j < basis.size(); ++j) points.push_back(ambient->index_of(basis.generator(j)));
  }
  return Frame(std::move(ambient), points);
}

std::optional<Vec> Frame::local_coordinates(const Vec& ambient_vec) const {
  const auto r = basis_.reduce(ambient_vec);
  if (!r.residual.is_zero()) return std::nullopt;
  return r.combo;
}

Vec Frame::ambient_vector(const Vec& local_vec) const {
  const Field f = ambient_->field();
  Vec out;
  for (int j = 0; j < basis_.size(); ++j) out = add(f, out, scale(f, basis_.generator(j), coord(local_vec, j)));
  return out;
}

std::optional<PointIndex> Frame::to_local(PointIndex ambient_point) const {
  if (identity_) return ambient_point;
  const auto c = local_coordinates(ambient_->vector(ambient_point));
  if (!c) return std::nullopt;
  return local_->index_of(*c);
}

PointSet Frame::to_ambient(const PointSet& local_set) const {
  if (identity_) return local_set;
  PointSet out = ambient_->empty_set();
  for_each_point(local_set, [&](PointIndex i) { out.set(local_to_ambient_[i]); });
  return out;
}

PointSet Frame::to_local(const PointSet& ambient_set) const {
  if (identity_) return ambient_set;
  PointSet out = local_->empty_set();
  for_each_point(ambient_set, [&](PointIndex i) {
    const auto l = to_local(i);
    if (!l) throw DomainError("point lies outside the frame's span");
    out.set(*l);
  });
  return out;
}

}  // namespace comatroid
