#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "comatroid/projective_space.hpp"

namespace comatroid {

/// A simple GF(q)-representable matroid viewed as a set of green points of a
/// projective geometry. Points outside `green` are red.
struct EmbeddedMatroid {
  SpacePtr space;
  PointSet green;

  Field field() const { return space->field(); }
  int ambient_rank() const { return space->rank(); }
  std::size_t size() const { return green.count(); }
  PointSet red() const { return ~green; }

  friend bool operator==(const EmbeddedMatroid& a, const EmbeddedMatroid& b) {
    return a.space == b.space && a.green == b.green;
  }
};

EmbeddedMatroid make_matroid(SpacePtr space, const std::vector<PointIndex>& green);

/// A flat of an embedded matroid together with the projective flat it spans.
struct MatroidFlat {
  PointSet members;
  FlatHandle span;
};

/// Columns of a GF(q) matrix. Coordinate i of each column holds row i.
struct MatrixPresentation {
  Field field = Field::GF2;
  int rows = 0;
  std::vector<Vec> columns;
  std::vector<std::string> labels;  ///< empty, or one label per column
};

/// An embedding that remembers which point each presentation column became.
struct LabeledMatroid {
  EmbeddedMatroid matroid;
  std::vector<PointIndex> points;   ///< points[c] is the point of column c
  std::vector<std::string> labels;  ///< same length as points

  /// Points whose labels are listed; throws DomainError on an unknown label.
  PointSet select(const std::vector<std::string>& wanted) const;
};

/// Trims the rows to a greedy independent subset of full row rank and embeds
/// the columns into PG(rank-1, q). Throws SimplicityError on a zero column or
/// on two projectively equal columns.
LabeledMatroid embed_labeled(const MatrixPresentation& pres);
EmbeddedMatroid embed(const MatrixPresentation& pres);

/// Presentation of the green points, one column per point in index order.
MatrixPresentation to_presentation(const EmbeddedMatroid& m);

int matroid_rank(const EmbeddedMatroid& m, const PointSet& s);
int matroid_rank(const EmbeddedMatroid& m);

/// The same matroid re-coordinatized inside PG(r(M)-1, q). Identity when the
/// green set already spans its ambient space.
EmbeddedMatroid reembed(const EmbeddedMatroid& m);

/// Every flat of M (including the empty set and the whole ground set), ordered
/// by rank and then by the order of their projective spans.
std::vector<MatroidFlat> flats_of(const EmbeddedMatroid& m);

/// Flats of M of the given matroid rank.
std::vector<MatroidFlat> flats_of_rank(const EmbeddedMatroid& m, int k);

/// Connected components of M|S. Coloops are singleton blocks. Blocks are
/// ordered by their smallest point.
std::vector<PointSet> components(const EmbeddedMatroid& m, const PointSet& s);

/// Sets with at most one element count as connected.
bool is_connected(const SpacePtr& space, const PointSet& s);
bool is_connected(const EmbeddedMatroid& m);

inline constexpr std::size_t kBruteForceCap = 24;

/// Least k for which M|S has a vertical k-separation, r(S) if there is none
/// and 0 for the empty set. Throws ResourceLimitError when |S| > kBruteForceCap.
int vertical_connectivity(const EmbeddedMatroid& m, const PointSet& s);

/// All circuits of M|S with at most size_cap elements, sorted by size and then
/// lexicographically. Throws ResourceLimitError when |S| > kBruteForceCap.
std::vector<PointSet> circuits(const EmbeddedMatroid& m, const PointSet& s, std::size_t size_cap);

/// Flats of rank r(M)-1.
std::vector<MatroidFlat> hyperplanes(const EmbeddedMatroid& m);

/// Hyperplanes H for which M|H is connected.
std::vector<MatroidFlat> connected_hyperplanes(const EmbeddedMatroid& m);
std::size_t count_connected_hyperplanes(const EmbeddedMatroid& m);

/// Smallest cocircuit size. Throws DomainError for an empty ground set.
std::size_t cocircuits_min_size(const EmbeddedMatroid& m);

/// Blocks of the relation "e = f or {e, f} is a cocircuit".
std::vector<PointSet> series_classes(const EmbeddedMatroid& m);

/// True iff e is not a coloop and every circuit through e spans M.
bool is_free_element(const EmbeddedMatroid& m, PointIndex e);

/// The (GF(q), t)-complement: M re-coordinatized in PG(t-1, q) and the red
/// points taken as the new ground set. t = -1 means t = r(M).
EmbeddedMatroid complement(const EmbeddedMatroid& m, int t = -1);

/// Block-diagonal embedding of both matroids in PG(r(A)+r(B)-1, q).
EmbeddedMatroid direct_sum(const EmbeddedMatroid& a, const EmbeddedMatroid& b);

/// Simplification of M/e, embedded in PG(r(M)-2, q).
EmbeddedMatroid si_contract(const EmbeddedMatroid& m, PointIndex e);

/// The matroid M|F on the projective span of F. Throws DomainError if F is
/// not a flat of M.
EmbeddedMatroid restrict_to_flat(const EmbeddedMatroid& m, const MatroidFlat& f);
EmbeddedMatroid restrict_to_flat(const EmbeddedMatroid& m, const PointSet& members);

}  // namespace comatroid
