#include <doctest.h>

#include <random>

#include "comatroid/canonical.hpp"
#include "comatroid/constructions.hpp"
#include "comatroid/error.hpp"
#include "oracles.hpp"

using namespace comatroid;

namespace {

EmbeddedMatroid random_matroid(std::mt19937& rng, const SpacePtr& space, std::size_t size) {
  PointSet s(space->size());
  while (s.count() < size) s.set(rng() % space->size());
  return EmbeddedMatroid{space, s};
}

// Image of m under a random invertible linear map of its ambient space.
EmbeddedMatroid random_image(std::mt19937& rng, const EmbeddedMatroid& m) {
  const Field f = m.field();
  const int r = m.ambient_rank();
  std::vector<Vec> columns;
  LinearBasis basis(f);
  while (basis.size() < r) {
    Vec v;
    for (int i = 0; i < r; ++i) v = with_coord(v, i, static_cast<int>(rng() % static_cast<unsigned>(order(f))));
    if (basis.insert(v)) columns.push_back(v);
  }
  PointSet image(m.space->size());
  for (PointIndex p : to_indices(m.green)) {
    Vec w;
    for (int i = 0; i < r; ++i) w = add(f, w, scale(f, columns[static_cast<std::size_t>(i)], coord(m.space->vector(p), i)));
    image.set(m.space->index_of(w));
  }
  return EmbeddedMatroid{m.space, image};
}

}  // namespace

TEST_SUITE("canonical") {
  TEST_CASE("keys are invariant under linear maps") {
    std::mt19937 rng(23);
    for (auto [q, r] : {std::pair{Field::GF2, 4}, {Field::GF3, 3}, {Field::GF3, 4}, {Field::GF2, 5}}) {
      const SpacePtr space = PointSpace::get(q, r);
      for (int trial = 0; trial < 40; ++trial) {
        const EmbeddedMatroid m = random_matroid(rng, space, 1 + rng() % (space->size() - 1));
        CHECK(canonical_form(m) == canonical_form(random_image(rng, m)));
      }
    }
  }

  TEST_CASE("equal keys exactly for isomorphic matroids") {
    std::mt19937 rng(29);
    for (auto [q, r, n] : {std::tuple{Field::GF2, 4, 6}, {Field::GF3, 3, 6}, {Field::GF2, 4, 7}, {Field::GF3, 4, 6}}) {
      const SpacePtr space = PointSpace::get(q, r);
      for (int trial = 0; trial < 60; ++trial) {
        const EmbeddedMatroid a = random_matroid(rng, space, static_cast<std::size_t>(n));
        const EmbeddedMatroid b = random_matroid(rng, space, static_cast<std::size_t>(n));
        const bool same = oracle::isomorphic(oracle::from_embedded(a), oracle::from_embedded(b));
        CHECK(isomorphic(a, b) == same);
      }
    }
  }

  TEST_CASE("the ambient space does not enter the key") {
    const EmbeddedMatroid k4 = embed(named("M(K4)"));
    const EmbeddedMatroid lifted = complement(complement(k4, 5), 5);
    CHECK(lifted.ambient_rank() == 5);
    CHECK(canonical_form(lifted) == canonical_form(k4));
    CHECK(canonical_form(reembed(lifted)) == canonical_form(k4));
  }

  TEST_CASE("the two sides of a coloring get different keys") {
    const EmbeddedMatroid c5 = embed(circuit(5, Field::GF2));
    CHECK(canonical_form(c5) != canonical_form(complement(c5)));
    CHECK_FALSE(isomorphic(embed(named("F7")), embed(named("M(K4)"))));
    CHECK_FALSE(isomorphic(embed(circuit(3, Field::GF2)), embed(circuit(3, Field::GF3))));
  }

  TEST_CASE("rank cap") {
    CHECK_THROWS_AS(canonical_form(embed(circuit(kCanonicalRankCap + 2, Field::GF2))), ResourceLimitError);
    CHECK_NOTHROW(canonical_form(embed(circuit(kCanonicalRankCap + 1, Field::GF2))));
  }
}
