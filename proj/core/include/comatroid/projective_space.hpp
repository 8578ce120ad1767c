#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "comatroid/field.hpp"

namespace comatroid {

/// Position of a point in the canonical (lexicographic) ordering of PG(r-1,q).
using PointIndex = std::uint32_t;

/// A subset of the points of a PointSpace, one bit per point index.
using PointSet = boost::dynamic_bitset<std::uint64_t>;

template <typename Fn>
void for_each_point(const PointSet& s, Fn&& fn) {
  for (auto i = s.find_first(); i != PointSet::npos; i = s.find_next(i)) fn(static_cast<PointIndex>(i));
}

std::vector<PointIndex> to_indices(const PointSet& s);

/// A projective flat: a point set closed under linear span.
struct FlatHandle {
  PointSet members;
  int rank = 0;
};

/// The projective geometry PG(r-1,q): every normalized nonzero vector of
/// GF(q)^r, ordered lexicographically with coordinate 0 most significant.
///
/// Instances are immutable apart from lazily filled flat caches (guarded by
/// once-flags), so one instance may be shared freely between threads. Use
/// PointSpace::get() to obtain the shared instance for (q, r).
class PointSpace {
 public:
  static constexpr int kMaxRank = 8;

  /// Throws ResourceLimitError for rank > kMaxRank and DomainError for rank < 0.
  static std::shared_ptr<const PointSpace> get(Field f, int rank);

  PointSpace(const PointSpace&) = delete;
  PointSpace& operator=(const PointSpace&) = delete;

  Field field() const { return field_; }
  int q() const { return order(field_); }
  int rank() const { return rank_; }
  std::size_t size() const { return points_.size(); }

  const Vec& vector(PointIndex i) const { return points_[i]; }
  const std::vector<Vec>& vectors() const { return points_; }

  /// Index of the point spanned by a nonzero vector of GF(q)^rank.
  PointIndex index_of(const Vec& v) const;

  /// The q-1 points other than a and b on the line through them
  /// (only the first q-1 entries are meaningful).
  std::array<PointIndex, 2> line_partners(PointIndex a, PointIndex b) const;

  PointSet empty_set() const { return PointSet(size()); }
  PointSet full_set() const { return PointSet(size()).set(); }

  /// Echelon basis of the span of the points of s (generators are a greedy
  /// subset of s in index order).
  LinearBasis basis_of(const PointSet& s) const;
  int rank_of(const PointSet& s) const;

  /// All points of the span of the generators of `basis`.
  PointSet span_points(const LinearBasis& basis) const;
  FlatHandle closure(const PointSet& s) const;

  /// Every rank-k flat exactly once, ordered by the reduced row echelon form of
  /// the subspace (pivot columns first, then free entries). Cached.
  const std::vector<FlatHandle>& flats(int k) const;

 private:
  PointSpace(Field f, int rank);

  std::uint32_t key_of(const Vec& normalized) const;

  Field field_;
  int rank_;
  std::vector<Vec> points_;
  std::vector<std::int32_t> index_by_key_;
  // line_partners_ is filled only for spaces with at most kPartnerTableLimit points.
  static constexpr std::size_t kPartnerTableLimit = 400;
  std::vector<PointIndex> line_partners_;

  mutable std::array<std::once_flag, kMaxRank + 1> flats_once_;
  mutable std::array<std::vector<FlatHandle>, kMaxRank + 1> flats_;
};

using SpacePtr = std::shared_ptr<const PointSpace>;

/// PG(r-1,q) with its points and closure table.
SpacePtr enumerate_points(int r, Field q);
int rank_of(const PointSpace& space, const PointSet& s);
FlatHandle closure(const PointSpace& space, const PointSet& s);
const std::vector<FlatHandle>& enumerate_flats(const PointSpace& space, int k);

/// Number of k-dimensional subspaces of GF(q)^r.
std::uint64_t gaussian_binomial(int r, int k, int q);

/// Coordinates for a projective flat of an ambient space relative to an ordered
/// basis of points, identifying the flat with PG(k-1,q).
class Frame {
 public:
  /// The points in `basis` must be independent.
  Frame(SpacePtr ambient, const std::vector<PointIndex>& basis);

  /// Frame of the span of s using a greedy basis drawn from s. When s spans
  /// the ambient space the frame is the identity.
  static Frame spanning(SpacePtr ambient, const PointSet& s);

  int rank() const { return basis_.size(); }
  bool is_identity() const { return identity_; }
  const PointSpace& ambient() const { return *ambient_; }
  const SpacePtr& ambient_ptr() const { return ambient_; }
  const PointSpace& local() const { return *local_; }
  const SpacePtr& local_ptr() const { return local_; }
  const std::vector<PointIndex>& basis_points() const { return basis_points_; }

  /// Local coordinates of an ambient vector; nullopt if it is outside the span.
  std::optional<Vec> local_coordinates(const Vec& ambient_vec) const;
  Vec ambient_vector(const Vec& local_vec) const;

  PointIndex to_ambient(PointIndex local_point) const { return local_to_ambient_[local_point]; }
  std::optional<PointIndex> to_local(PointIndex ambient_point) const;

  PointSet to_ambient(const PointSet& local_set) const;
  /// Throws DomainError if some point of ambient_set is outside the span.
  PointSet to_local(const PointSet& ambient_set) const;

 private:
  SpacePtr ambient_;
  SpacePtr local_;
  std::vector<PointIndex> basis_points_;
  LinearBasis basis_;
  bool identity_ = false;
  std::vector<PointIndex> local_to_ambient_;
};

}  // namespace comatroid
