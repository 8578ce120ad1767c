#include <doctest.h>

#include "comatroid/canonical.hpp"
#include "comatroid/constructions.hpp"
#include "comatroid/error.hpp"
#include "oracles.hpp"

using namespace comatroid;

namespace {

std::size_t lines_with_three_points(const EmbeddedMatroid& m) {
  std::size_t count = 0;
  for (const auto& f : flats_of_rank(m, 2)) count += f.members.count() >= 3 ? 1 : 0;
  return count;
}

}  // namespace

TEST_SUITE("constructions") {
  TEST_CASE("named matroids have the expected size and rank") {
    struct Expect {
      const char* name;
      std::size_t size;
      int rank;
    };
    for (const Expect& e : {Expect{"F7", 7, 3}, {"M(K4)", 6, 3}, {"M(K4)@3", 6, 3}, {"W3", 6, 3},
                            {"M(K2,3)", 6, 4}, {"M(K3,3)", 9, 5}, {"P(U34,U34)", 7, 5}, {"P(U23,U23)@3", 5, 3},
                            {"P(U24,U23)", 6, 3}, {"U24+2U23", 5, 3}, {"U24+2U24", 6, 3}, {"Delta5", 13, 5},
                            {"T12/e", 11, 5}, {"M5,12a", 12, 5}, {"M5,12b", 12, 5}, {"M5,13", 13, 5},
                            {"PG(3,2)", 15, 4}, {"AG(2,3)", 9, 3}, {"U2,4", 4, 2}, {"C5", 5, 4}, {"U0,0", 0, 0}}) {
      CAPTURE(e.name);
      const EmbeddedMatroid m = embed(named(e.name));
      CHECK(m.size() == e.size);
      CHECK(matroid_rank(m) == e.rank);
    }
    CHECK(embed(named("U2,4")).field() == Field::GF3);
    CHECK(embed(named("C5@3")).field() == Field::GF3);
    CHECK(embed(named("PG(2,3)")).size() == 13);
    CHECK_THROWS_AS(named("nonsense"), CatalogError);
    CHECK_THROWS_AS(named("U2,5"), CatalogError);
    CHECK_THROWS_AS(named("U2,4@2"), CatalogError);
  }

  TEST_CASE("all listed names resolve") {
    for (const auto& name : catalog_names()) {
      CAPTURE(name);
      CHECK_NOTHROW(embed(named(name)));
    }
  }

  TEST_CASE("uniform matroids") {
    CHECK(embed(uniform(3, 3, Field::GF2)).size() == 3);
    CHECK(embed(uniform(2, 3, Field::GF2)).size() == 3);
    CHECK(embed(uniform(3, 4, Field::GF3)).size() == 4);
    CHECK_THROWS_AS(uniform(3, 2, Field::GF2), DomainError);
    CHECK_THROWS_AS(uniform(2, 4, Field::GF2), DomainError);
    CHECK_THROWS_AS(uniform(3, 5, Field::GF3), DomainError);
  }

  TEST_CASE("the whirl has three lines and is not M(K4)") {
    const EmbeddedMatroid w3 = embed(named("W3"));
    const EmbeddedMatroid k4 = embed(named("M(K4)@3"));
    CHECK(lines_with_three_points(w3) == 3);
    CHECK(lines_with_three_points(k4) == 4);
    CHECK_FALSE(isomorphic(w3, k4));
  }

  TEST_CASE("graphs") {
    const std::vector<Edge> k4{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
    const auto binary = oracle::from_embedded(embed(graph_cycle_matroid(k4, Field::GF2)));
    const auto ternary = oracle::from_embedded(embed(graph_cycle_matroid(k4, Field::GF3)));
    CHECK(binary.circuits().size() == 7);
    CHECK(ternary.circuits().size() == 7);
    CHECK(oracle::isomorphic(binary, ternary));
    CHECK_THROWS_AS(graph_cycle_matroid({{0, 0}}, Field::GF2), DomainError);
    CHECK_THROWS_AS(graph_cycle_matroid({{0, 1}, {1, 0}}, Field::GF2), DomainError);
    CHECK(graph_from_mask(0b1111111111).size() == 10);
    CHECK(graph_from_mask(0b1) == std::vector<Edge>{{0, 1}});
    CHECK(minimal_binary_graphs().size() == 6);
    for (const auto& [name, edges] : minimal_binary_graphs()) {
      CAPTURE(name);
      CHECK(matroid_rank(embed(graph_cycle_matroid(edges, Field::GF2))) == 4);
    }
  }

  TEST_CASE("parallel connections and 2-sums") {
    const MatrixPresentation u34 = circuit(4, Field::GF2);
    const EmbeddedMatroid p = embed(parallel_connection(u34, 0, u34, 0));
    CHECK(p.size() == 7);
    CHECK(matroid_rank(p) == 5);
    CHECK(isomorphic(p, embed(named("P(U34,U34)"))));
    const EmbeddedMatroid s = embed(two_sum(u34, 0, u34, 0));
    CHECK(s.size() == 6);
    CHECK(isomorphic(s, embed(circuit(6, Field::GF2))));
    const MatrixPresentation coloop{Field::GF2, 1, {Vec{1, 0}}, {}};
    CHECK_THROWS_AS(two_sum(coloop, 0, u34, 0), DomainError);
    CHECK(embed(parallel_connection(coloop, 0, u34, 0)).size() == 4);
    CHECK_THROWS_AS(parallel_connection(u34, 0, circuit(3, Field::GF3), 0), DomainError);
  }

  TEST_CASE("circuits with U24 attached") {
    for (int k = 3; k <= 5; ++k) {
      for (int d = 0; d <= k && k - 1 + d <= 6; ++d) {
        std::vector<int> positions;
        for (int i = 0; i < d; ++i) positions.push_back(i);
        const EmbeddedMatroid m = embed(circuit_with_u24(k, positions));
        CHECK(m.size() == static_cast<std::size_t>(k + 2 * d));
        CHECK(matroid_rank(m) == k - 1 + d);
        CHECK(is_connected(m));
      }
    }
    CHECK(isomorphic(embed(circuit_with_u24(3, {0})), embed(named("U24+2U23"))));
    CHECK(isomorphic(embed(circuit_with_u24(3, {1})), embed(circuit_with_u24(3, {2}))));
    CHECK_THROWS_AS(circuit_with_u24(3, {3}), DomainError);
    CHECK_THROWS_AS(circuit_with_u24(3, {1, 1}), DomainError);
  }

  TEST_CASE("four-hyperplane family") {
    for (int n = 1; n <= 2; ++n) {
      const EmbeddedMatroid m = embed(four_hyperplane_family(n));
      CHECK(m.size() == static_cast<std::size_t>(5 * n + 8));
      CHECK(matroid_rank(m) == 2 * n + 3);
    }
    CHECK(four_hyperplane_family(3).rows == 9);
    CHECK_THROWS_AS(embed(four_hyperplane_family(3)), ResourceLimitError);
    CHECK_THROWS_AS(four_hyperplane_family(0), DomainError);
  }

  TEST_CASE("named matrices carry their labels") {
    const LabeledMatroid d5 = embed_labeled(named("Delta5"));
    CHECK(d5.labels.front() == "a");
    CHECK(d5.labels.back() == "m");
    const LabeledMatroid f77 = embed_labeled(named("f77"));
    CHECK(f77.matroid.ambient_rank() == 5);
  }
}
