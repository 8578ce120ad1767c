#include <doctest.h>

#include <map>
#include <random>

#include "comatroid/constructions.hpp"
#include "comatroid/error.hpp"
#include "comatroid/matroid.hpp"
#include "oracles.hpp"

using namespace comatroid;

namespace {

std::vector<PointSet> all_subsets(const SpacePtr& space) {
  std::vector<PointSet> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << space->size()); ++mask) out.emplace_back(space->size(), mask);
  return out;
}

std::vector<EmbeddedMatroid> random_matroids(std::mt19937& rng, Field q, int r, std::size_t count,
                                             std::size_t max_size) {
  const SpacePtr space = PointSpace::get(q, r);
  std::vector<EmbeddedMatroid> out;
  while (out.size() < count) {
    PointSet s(space->size());
    const std::size_t want = 1 + rng() % max_size;
    while (s.count() < want) s.set(rng() % space->size());
    out.push_back(EmbeddedMatroid{space, s});
  }
  return out;
}

// si(M/e) over plain matrices: eliminate e, then keep one column per class.
oracle::Matroid contraction(const oracle::Matroid& m, std::size_t e) {
  const auto& pivot = m.cols[e];
  std::size_t row = 0;
  while (pivot[row] == 0) ++row;
  const int inv = oracle::inverse(pivot[row], m.q);
  oracle::Matroid out{m.q, {}};
  for (std::size_t c = 0; c < m.size(); ++c) {
    if (c == e) continue;
    const int f = m.cols[c][row] * inv % m.q;
    oracle::Column v;
    for (std::size_t i = 0; i < pivot.size(); ++i) {
      if (i != row) v.push_back(((m.cols[c][i] - f * pivot[i]) % m.q + m.q) % m.q);
    }
    if (std::all_of(v.begin(), v.end(), [](int x) { return x == 0; })) continue;
    bool parallel = false;
    for (const auto& w : out.cols) parallel = parallel || oracle::rank({v, w}, m.q) == 1;
    if (!parallel) out.cols.push_back(v);
  }
  return out;
}

}  // namespace

TEST_SUITE("matroid-core") {
  TEST_CASE("embedding rejects non-simple presentations") {
    MatrixPresentation p{Field::GF3, 2, {Vec{1, 0}, Vec{0, 1}, Vec{0, 2}}, {}};
    CHECK_THROWS_AS(embed(p), SimplicityError);
    p.columns = {Vec{1, 0}, Vec{0, 0}};
    CHECK_THROWS_AS(embed(p), SimplicityError);
    p.columns = {Vec{1, 0}, Vec{3, 0}};
    CHECK_NOTHROW(embed(p));
  }

  TEST_CASE("redundant rows are dropped") {
    // Rows 0 and 2 are equal, so the matroid lives in PG(1,2).
    MatrixPresentation p{Field::GF2, 3, {Vec{0b101, 0}, Vec{0b010, 0}, Vec{0b111, 0}}, {}};
    const EmbeddedMatroid m = embed(p);
    CHECK(m.ambient_rank() == 2);
    CHECK(m.size() == 3);
    CHECK(matroid_rank(m) == 2);
  }

  TEST_CASE("connectivity and components agree with the brute-force oracle") {
    for (auto [q, r] : {std::pair{Field::GF2, 3}, {Field::GF3, 3}}) {
      const SpacePtr space = PointSpace::get(q, r);
      for (const PointSet& s : all_subsets(space)) {
        const EmbeddedMatroid m{space, s};
        const oracle::Matroid o = oracle::from_embedded(m);
        CHECK(is_connected(m) == o.connected(o.full()));
        const auto blocks = components(m, s);
        PointSet seen(space->size());
        for (const auto& b : blocks) {
          CHECK(o.connected(oracle::to_mask(m, b)));
          CHECK((seen & b).none());
          seen |= b;
        }
        CHECK(seen == s);
        int total = 0;
        for (const auto& b : blocks) total += matroid_rank(m, b);
        CHECK(total == matroid_rank(m));
      }
    }
  }

  TEST_CASE("vertical connectivity agrees with bipartition search") {
    const SpacePtr space = PointSpace::get(Field::GF3, 3);
    for (const PointSet& s : all_subsets(space)) {
      const EmbeddedMatroid m{space, s};
      const oracle::Matroid o = oracle::from_embedded(m);
      CHECK(vertical_connectivity(m, s) == o.vertical_connectivity(o.full()));
    }
    std::mt19937 rng(11);
    for (const auto& m : random_matroids(rng, Field::GF2, 4, 150, 12)) {
      const oracle::Matroid o = oracle::from_embedded(m);
      CHECK(vertical_connectivity(m, m.green) == o.vertical_connectivity(o.full()));
    }
    CHECK(vertical_connectivity(EmbeddedMatroid{space, space->empty_set()}, space->empty_set()) == 0);
    const SpacePtr big = PointSpace::get(Field::GF3, 4);
    CHECK_THROWS_AS(vertical_connectivity(EmbeddedMatroid{big, big->full_set()}, big->full_set()), ResourceLimitError);
  }

  TEST_CASE("circuits agree with the oracle") {
    std::mt19937 rng(3);
    for (Field q : {Field::GF2, Field::GF3}) {
      for (const auto& m : random_matroids(rng, q, 4, 40, 10)) {
        const oracle::Matroid o = oracle::from_embedded(m);
        const auto all = o.circuits();
        const std::set<std::uint32_t> expected(all.begin(), all.end());
        const auto got = circuits(m, m.green, m.size());
        CHECK(got.size() == expected.size());
        for (const auto& c : got) CHECK(expected.count(oracle::to_mask(m, c)) == 1);
        for (const auto& c : circuits(m, m.green, 4)) CHECK(c.count() <= 4);
      }
    }
  }

  TEST_CASE("hyperplanes, cocircuits and series classes agree with the oracle") {
    std::mt19937 rng(5);
    for (Field q : {Field::GF2, Field::GF3}) {
      for (const auto& m : random_matroids(rng, q, 4, 60, 11)) {
        const oracle::Matroid o = oracle::from_embedded(m);
        const auto expected = o.hyperplanes();
        const auto got = hyperplanes(m);
        std::set<std::uint32_t> got_masks;
        for (const auto& h : got) got_masks.insert(oracle::to_mask(m, h.members));
        CHECK(got_masks == std::set<std::uint32_t>(expected.begin(), expected.end()));
        std::size_t connected = 0;
        for (std::uint32_t h : expected) connected += o.connected(h) ? 1 : 0;
        CHECK(count_connected_hyperplanes(m) == connected);
        CHECK(connected_hyperplanes(m).size() == connected);
        CHECK(cocircuits_min_size(m) == o.min_cocircuit());

        // e ~ f when {e, f} is a cocircuit.
        std::set<std::uint32_t> cocircuits;
        for (std::uint32_t h : expected) cocircuits.insert(o.full() ^ h);
        for (const auto& cls : series_classes(m)) {
          const std::uint32_t mask = oracle::to_mask(m, cls);
          for (std::uint32_t a = mask; a != 0; a &= a - 1) {
            for (std::uint32_t b = a & (a - 1); b != 0; b &= b - 1) {
              CHECK(cocircuits.count((a & (~a + 1)) | (b & (~b + 1))) == 1);
            }
          }
        }
        std::size_t covered = 0;
        for (const auto& cls : series_classes(m)) covered += cls.count();
        CHECK(covered == m.size());
      }
    }
  }

  TEST_CASE("free elements lie only in spanning circuits") {
    std::mt19937 rng(9);
    for (const auto& m : random_matroids(rng, Field::GF3, 3, 80, 9)) {
      const oracle::Matroid o = oracle::from_embedded(m);
      const auto cs = o.circuits();
      const int r = o.rank(o.full());
      std::uint32_t bit = 0;
      for (PointIndex e : to_indices(m.green)) {
        const std::uint32_t eb = 1U << bit++;
        const bool coloop = o.rank(o.full() ^ eb) < r;
        bool free = !coloop;
        for (std::uint32_t c : cs) {
          if ((c & eb) && o.rank(c) < r) free = false;
        }
        CHECK(is_free_element(m, e) == free);
      }
    }
  }

  TEST_CASE("complements") {
    const EmbeddedMatroid f7 = embed(named("F7"));
    CHECK(complement(f7).size() == 0);
    const EmbeddedMatroid k4 = embed(named("M(K4)"));
    const EmbeddedMatroid c = complement(k4);
    CHECK(c.size() == 1);
    CHECK(complement(k4, 4).size() == 15 - 6);
    CHECK(matroid_rank(complement(k4, 4)) == 4);
    CHECK_THROWS_AS(complement(k4, 2), DomainError);
    std::mt19937 rng(13);
    for (const auto& m : random_matroids(rng, Field::GF3, 3, 40, 7)) {
      const EmbeddedMatroid co = complement(m);
      if (co.size() == 0 || matroid_rank(co) != matroid_rank(m)) continue;
      CHECK(oracle::isomorphic(oracle::from_embedded(complement(co)), oracle::from_embedded(m)));
    }
  }

  TEST_CASE("direct sums and restrictions") {
    const EmbeddedMatroid a = embed(circuit(4, Field::GF3));
    const EmbeddedMatroid b = embed(uniform(2, 4, Field::GF3));
    const EmbeddedMatroid s = direct_sum(a, b);
    CHECK(matroid_rank(s) == 5);
    CHECK(s.size() == 8);
    CHECK(components(s, s.green).size() == 2);
    for (const auto& f : flats_of(a)) {
      const EmbeddedMatroid r = restrict_to_flat(a, f);
      CHECK(r.size() == f.members.count());
      CHECK(matroid_rank(r) == matroid_rank(a, f.members));
    }
    PointSet two(a.space->size());
    for (PointIndex p : to_indices(a.green)) {
      if (two.count() < 3) two.set(p);
    }
    CHECK_THROWS_AS(restrict_to_flat(a, two), DomainError);
  }

  TEST_CASE("flats of an embedded matroid agree with the oracle") {
    std::mt19937 rng(17);
    for (const auto& m : random_matroids(rng, Field::GF2, 4, 40, 9)) {
      const oracle::Matroid o = oracle::from_embedded(m);
      std::set<std::uint32_t> got;
      for (const auto& f : flats_of(m)) got.insert(oracle::to_mask(m, f.members));
      const auto expected = o.flats();
      CHECK(got == std::set<std::uint32_t>(expected.begin(), expected.end()));
    }
  }

  TEST_CASE("simplified contractions agree with elimination") {
    std::mt19937 rng(19);
    for (Field q : {Field::GF2, Field::GF3}) {
      for (const auto& m : random_matroids(rng, q, 4, 30, 8)) {
        if (matroid_rank(m) < 2) continue;
        const oracle::Matroid o = oracle::from_embedded(m);
        std::size_t i = 0;
        for (PointIndex e : to_indices(m.green)) {
          const EmbeddedMatroid c = si_contract(m, e);
          const oracle::Matroid expected = contraction(o, i++);
          CHECK(matroid_rank(c) == matroid_rank(m) - 1);
          CHECK(c.size() == expected.size());
          CHECK(oracle::isomorphic(oracle::from_embedded(c), expected));
        }
      }
    }
  }
}
