#include <doctest.h>

#include <random>
#include <set>

#include "comatroid/error.hpp"
#include "comatroid/projective_space.hpp"
#include "oracles.hpp"

using namespace comatroid;

namespace {

std::vector<int> digits(const PointSpace& s, PointIndex p) {
  std::vector<int> out;
  for (int i = 0; i < s.rank(); ++i) out.push_back(coord(s.vector(p), i));
  return out;
}

PointSet random_subset(std::mt19937& rng, std::size_t n) {
  PointSet s(n);
  for (std::size_t i = 0; i < n; ++i) s[i] = rng() % 3 == 0;
  return s;
}

}  // namespace

TEST_SUITE("projective-space") {
  TEST_CASE("field arithmetic matches integers mod q") {
    for (Field f : {Field::GF2, Field::GF3}) {
      const int q = order(f);
      const auto pts = oracle::projective_points(3, q);
      std::vector<std::vector<int>> all{{0, 0, 0}};
      for (const auto& p : pts) {
        for (int c = 1; c < q; ++c) {
          std::vector<int> v;
          for (int x : p) v.push_back(x * c % q);
          all.push_back(v);
        }
      }
      const auto to_vec = [](const std::vector<int>& v) {
        Vec out;
        for (int i = 0; i < 3; ++i) out = with_coord(out, i, v[static_cast<std::size_t>(i)]);
        return out;
      };
      for (const auto& a : all) {
        for (const auto& b : all) {
          const Vec sum = add(f, to_vec(a), to_vec(b));
          const Vec diff = sub(f, to_vec(a), to_vec(b));
          for (int i = 0; i < 3; ++i) {
            CHECK(coord(sum, i) == (a[i] + b[i]) % q);
            CHECK(coord(diff, i) == ((a[i] - b[i]) % q + q) % q);
          }
        }
      }
    }
  }

  TEST_CASE("unsupported fields and ranks are rejected") {
    CHECK_THROWS_AS(field_from_order(5), UnsupportedFieldError);
    CHECK_THROWS_AS(field_from_order(4), UnsupportedFieldError);
    CHECK_THROWS_AS(PointSpace::get(Field::GF2, PointSpace::kMaxRank + 1), ResourceLimitError);
    CHECK_THROWS_AS(PointSpace::get(Field::GF2, -1), DomainError);
  }

  TEST_CASE("points are the normalized vectors in lexicographic order") {
    for (auto [q, r] : {std::pair{2, 1}, {2, 2}, {2, 3}, {2, 4}, {2, 5}, {3, 1}, {3, 2}, {3, 3}, {3, 4}}) {
      const SpacePtr space = PointSpace::get(field_from_order(q), r);
      const auto expected = oracle::projective_points(r, q);
      REQUIRE(space->size() == expected.size());
      for (PointIndex p = 0; p < space->size(); ++p) {
        CHECK(digits(*space, p) == expected[p]);
        CHECK(space->index_of(space->vector(p)) == p);
        CHECK(space->index_of(negate(space->field(), space->vector(p))) == p);
      }
    }
    CHECK(PointSpace::get(Field::GF2, 3)->size() == 7);
    CHECK(PointSpace::get(Field::GF3, 3)->size() == 13);
    CHECK(PointSpace::get(Field::GF2, 5)->size() == 31);
    CHECK_THROWS_AS(PointSpace::get(Field::GF2, 3)->index_of(Vec{}), DomainError);
  }

  TEST_CASE("rank and closure agree with elimination") {
    std::mt19937 rng(7);
    for (auto [q, r] : {std::pair{2, 4}, {3, 3}, {3, 4}, {2, 5}}) {
      const SpacePtr space = PointSpace::get(field_from_order(q), r);
      oracle::Matroid all{q, oracle::projective_points(r, q)};
      for (int trial = 0; trial < 60; ++trial) {
        const PointSet s = random_subset(rng, space->size());
        std::uint64_t mask = 0;
        for_each_point(s, [&](PointIndex p) { mask |= std::uint64_t{1} << p; });
        std::vector<oracle::Column> cols;
        for_each_point(s, [&](PointIndex p) { cols.push_back(digits(*space, p)); });
        const int expected = oracle::rank(cols, q);
        CHECK(space->rank_of(s) == expected);
        const FlatHandle cl = space->closure(s);
        CHECK(cl.rank == expected);
        for (PointIndex p = 0; p < space->size(); ++p) {
          auto with = cols;
          with.push_back(digits(*space, p));
          CHECK(cl.members.test(p) == (oracle::rank(with, q) == expected));
        }
      }
    }
  }

  TEST_CASE("flats of each rank match closures of independent sets") {
    for (auto [q, r] : {std::pair{2, 3}, {2, 4}, {3, 3}}) {
      const SpacePtr space = PointSpace::get(field_from_order(q), r);
      const std::size_t n = space->size();
      std::vector<std::set<std::vector<PointIndex>>> by_rank(static_cast<std::size_t>(r) + 1);
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        if (__builtin_popcountll(mask) > r) continue;
        const FlatHandle f = space->closure(PointSet(n, mask));
        by_rank[static_cast<std::size_t>(f.rank)].insert(to_indices(f.members));
      }
      for (int k = 0; k <= r; ++k) {
        const auto& flats = space->flats(k);
        CHECK(flats.size() == gaussian_binomial(r, k, q));
        std::set<std::vector<PointIndex>> got;
        for (const auto& f : flats) {
          CHECK(f.rank == k);
          got.insert(to_indices(f.members));
        }
        CHECK(got.size() == flats.size());
        CHECK(got == by_rank[static_cast<std::size_t>(k)]);
      }
    }
  }

  TEST_CASE("gaussian binomials") {
    CHECK(gaussian_binomial(4, 2, 2) == 35);
    CHECK(gaussian_binomial(3, 1, 3) == 13);
    CHECK(gaussian_binomial(5, 4, 2) == 31);
    CHECK(gaussian_binomial(4, 0, 3) == 1);
    CHECK(gaussian_binomial(4, 5, 3) == 0);
  }

  TEST_CASE("frames identify a flat with a smaller geometry") {
    const SpacePtr space = PointSpace::get(Field::GF3, 4);
    const auto& planes = space->flats(3);
    for (std::size_t i = 0; i < planes.size(); i += 7) {
      const Frame frame = Frame::spanning(space, planes[i].members);
      CHECK(frame.rank() == 3);
      CHECK(frame.local().size() == 13);
      const PointSet local = frame.to_local(planes[i].members);
      CHECK(local.count() == 13);
      CHECK(frame.to_ambient(local) == planes[i].members);
      for (PointIndex p = 0; p < space->size(); ++p) {
        CHECK(frame.to_local(p).has_value() == planes[i].members.test(p));
      }
    }
    const Frame identity = Frame::spanning(space, space->full_set());
    CHECK(identity.is_identity());
    CHECK_THROWS_AS(Frame(space, {0, 0}), DomainError);
  }
}
