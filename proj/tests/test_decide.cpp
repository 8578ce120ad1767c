#include <doctest.h>

#include <filesystem>
#include <set>

#include "comatroid/canonical.hpp"
#include "comatroid/constructions.hpp"
#include "comatroid/decide.hpp"
#include "comatroid/error.hpp"
#include "oracles.hpp"

using namespace comatroid;

namespace {

std::vector<PointSet> all_subsets(const SpacePtr& space) {
  std::vector<PointSet> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << space->size()); ++mask) out.emplace_back(space->size(), mask);
  return out;
}

// Isomorphism classes of comatroids of rank at most `ceiling`, generated from
// U_{0,0} by direct sums and complements until nothing new appears.
std::set<std::string> generated_comatroids(Field q, int ceiling) {
  std::vector<EmbeddedMatroid> found{EmbeddedMatroid{PointSpace::get(q, 0), PointSet(0)}};
  std::set<std::string> keys{canonical_form(found.front())};
  const auto add = [&](const EmbeddedMatroid& m) {
    if (matroid_rank(m) > ceiling) return;
    if (keys.insert(canonical_form(m)).second) found.push_back(reembed(m));
  };
  // Each class is summed with every class found before it, so all pairs occur.
  for (std::size_t i = 0; i < found.size(); ++i) {
    const EmbeddedMatroid m = found[i];
    const int r = matroid_rank(m);
    for (int t = std::max(r, 1); t <= ceiling; ++t) add(complement(m, t));
    for (std::size_t j = 0; j <= i; ++j) {
      const EmbeddedMatroid other = found[j];
      if (r + matroid_rank(other) <= ceiling) add(direct_sum(m, other));
    }
  }
  return keys;
}

bool has_non_comatroid_proper_flat(const EmbeddedMatroid& m) {
  for (const auto& f : flats_of(m)) {
    if (f.members != m.green && !is_comatroid(restrict_to_flat(m, f))) return true;
  }
  return false;
}

}  // namespace

TEST_SUITE("comatroid-decision") {
  TEST_CASE("deciders agree with the generated class") {
    for (auto [q, r] : {std::pair{Field::GF2, 3}, {Field::GF3, 3}, {Field::GF2, 4}}) {
      CAPTURE(order(q));
      CAPTURE(r);
      const auto keys = generated_comatroids(q, r + 1);
      const SpacePtr space = PointSpace::get(q, r);
      const ForbiddenCatalog& catalog = ForbiddenCatalog::get(q);
      std::size_t mismatches = 0;
      for (const PointSet& s : all_subsets(space)) {
        const EmbeddedMatroid m{space, s};
        const bool expected = keys.count(canonical_form(m)) == 1;
        if (decide_recursive(m).is_comatroid != expected) ++mismatches;
        if (decide_flat_criterion(m).is_comatroid != expected) ++mismatches;
        if (decide_forbidden_flats(m, catalog).is_comatroid != expected) ++mismatches;
      }
      CHECK(mismatches == 0);
    }
  }

  TEST_CASE("projective and affine geometries") {
    for (const char* name : {"PG(2,2)", "PG(3,2)", "PG(2,3)", "PG(4,2)", "U0,0", "U3,3"}) {
      CAPTURE(name);
      CHECK(is_comatroid(embed(named(name))));
    }
    CHECK(is_comatroid(embed(named("AG(3,2)"))));
    CHECK(is_comatroid(embed(named("AG(2,3)"))));
  }

  TEST_CASE("fixed forbidden flats are minimal non-comatroids") {
    for (Field q : {Field::GF2, Field::GF3}) {
      const ForbiddenCatalog& catalog = ForbiddenCatalog::get(q);
      CHECK(catalog.min_rank() == (q == Field::GF2 ? 4 : 3));
      for (const auto& e : catalog.fixed_entries()) {
        CAPTURE(e.name);
        CHECK(is_minimal_non_comatroid(e.matroid));
        CHECK_FALSE(has_non_comatroid_proper_flat(e.matroid));
        for (Method method : {Method::Recursive, Method::FlatCriterion, Method::ForbiddenFlats}) {
          CHECK_FALSE(decide(e.matroid, method).is_comatroid);
        }
      }
    }
  }

  TEST_CASE("minimality agrees with a direct check of proper flats") {
    const SpacePtr space = PointSpace::get(Field::GF3, 3);
    for (const PointSet& s : all_subsets(space)) {
      const EmbeddedMatroid m{space, s};
      const bool expected = !is_comatroid(m) && !has_non_comatroid_proper_flat(m);
      CHECK(is_minimal_non_comatroid(m) == expected);
      CHECK(violating_flats(m).empty() == is_comatroid(m));
    }
  }

  TEST_CASE("forbidden induced minors characterize comatroids") {
    for (auto [q, r] : {std::pair{Field::GF2, 4}, {Field::GF3, 3}}) {
      const SpacePtr space = PointSpace::get(q, r);
      const ForbiddenCatalog& catalog = ForbiddenCatalog::get(q);
      std::size_t step = q == Field::GF2 ? 7 : 1;
      const auto subsets = all_subsets(space);
      for (std::size_t i = 0; i < subsets.size(); i += step) {
        const EmbeddedMatroid m{space, subsets[i]};
        CHECK(has_forbidden_induced_minor(m, catalog) == !is_comatroid(m));
      }
    }
    const EmbeddedMatroid big = embed(circuit(7, Field::GF2));
    CHECK_THROWS_AS(has_forbidden_induced_minor(big, ForbiddenCatalog::get(Field::GF2)), ResourceLimitError);
  }

  TEST_CASE("induced-minor readings of the binary forbidden list") {
    const auto minimal_under_induced_minors = [](const EmbeddedMatroid& m) {
      if (is_comatroid(m) || has_non_comatroid_proper_flat(m)) return false;
      for (PointIndex e : to_indices(m.green)) {
        if (!is_comatroid(si_contract(m, e))) return false;
      }
      return true;
    };
    // P(U34,U34) is a non-comatroid, but contracting a non-basepoint leaves
    // M(C5 plus a chord), so it is not minimal under induced minors.
    const EmbeddedMatroid p = embed(named("P(U34,U34)"));
    CHECK_FALSE(is_comatroid(p));
    CHECK_FALSE(has_non_comatroid_proper_flat(p));
    CHECK_FALSE(minimal_under_induced_minors(p));
    // Its complement in PG(4,2) is minimal.
    const EmbeddedMatroid co = complement(p);
    CHECK(co.size() == 24);
    CHECK(minimal_under_induced_minors(co));
    CHECK(has_forbidden_induced_minor(co, ForbiddenCatalog::get(Field::GF2)));
    // The binary parallel connection of two triangles is a comatroid.
    const MatrixPresentation u23 = uniform(2, 3, Field::GF2);
    CHECK(is_comatroid(embed(parallel_connection(u23, 0, u23, 0))));
  }

  TEST_CASE("certificates replay") {
    const SpacePtr space = PointSpace::get(Field::GF3, 3);
    DecideOptions options;
    options.certificate = true;
    const auto subsets = all_subsets(space);
    for (std::size_t i = 0; i < subsets.size(); i += 5) {
      const EmbeddedMatroid m{space, subsets[i]};
      for (Method method : {Method::Recursive, Method::FlatCriterion, Method::ForbiddenFlats}) {
        const Verdict v = decide(m, method, options);
        const ReplayResult replay = replay_certificate(m, v.certificate);
        CHECK(replay.valid);
        CHECK(replay.verdict == v.is_comatroid);
      }
    }
  }

  TEST_CASE("tampered certificates are rejected") {
    DecideOptions options;
    options.certificate = true;
    const EmbeddedMatroid bad = embed(named("W3"));
    const EmbeddedMatroid good = embed(named("PG(2,3)"));
    for (Method method : {Method::Recursive, Method::FlatCriterion, Method::ForbiddenFlats}) {
      std::string text = decide(bad, method, options).certificate;
      const auto pos = text.find("verdict=false");
      REQUIRE(pos != std::string::npos);
      text.replace(pos, 13, "verdict=true");
      CHECK_FALSE(replay_certificate(bad, text).valid);
      // A certificate for one matroid does not transfer to another.
      CHECK_FALSE(replay_certificate(good, decide(bad, method, options).certificate).valid);
    }
    CHECK_FALSE(replay_certificate(bad, "garbage").valid);
    CHECK_FALSE(replay_certificate(bad, "").valid);
  }

  TEST_CASE("memo") {
    DecisionMemo memo;
    DecideOptions options;
    options.memo = &memo;
    const SpacePtr space = PointSpace::get(Field::GF2, 4);
    for (std::size_t mask = 0; mask < 32768; mask += 97) {
      const EmbeddedMatroid m{space, PointSet(15, mask)};
      CHECK(decide_recursive(m, options).is_comatroid == decide_recursive(m).is_comatroid);
    }
    CHECK(memo.size() > 0);
    const auto path = std::filesystem::temp_directory_path() / "comatroid_memo_test.txt";
    memo.save(path.string());
    DecisionMemo loaded;
    loaded.load(path.string());
    CHECK(loaded.size() == memo.size());
    std::filesystem::remove(path);
  }

  TEST_CASE("rank caps") {
    CHECK_NOTHROW(decide_recursive(embed(circuit(8, Field::GF2))));
    CHECK_THROWS_AS(decide_recursive(embed(named("PG(7,2)"))), ResourceLimitError);
    CHECK_THROWS_AS(decide_forbidden_flats(embed(circuit(8, Field::GF2)), ForbiddenCatalog::get(Field::GF2)),
                    ResourceLimitError);
    CHECK_THROWS_AS(decide_forbidden_flats(embed(circuit(4, Field::GF2)), ForbiddenCatalog::get(Field::GF3)),
                    DomainError);
  }
}
