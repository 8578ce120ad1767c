#include <doctest.h>

#include "comatroid/constructions.hpp"
#include "comatroid/error.hpp"
#include "comatroid/text_format.hpp"

using namespace comatroid;

TEST_SUITE("text-format") {
  TEST_CASE("matrix form with labels and comments") {
    const LabeledMatroid lm = parse_matroid(
        "# a triangle and a point\n"
        "q=2 rows=3\n"
        "100 a\n"
        "010 b   # trailing comment\n"
        "\n"
        "110 c\n"
        "001 d\n");
    CHECK(lm.matroid.size() == 4);
    CHECK(matroid_rank(lm.matroid) == 3);
    CHECK(lm.labels == std::vector<std::string>{"a", "b", "c", "d"});
    CHECK(matroid_rank(lm.matroid, lm.select({"a", "b", "c"})) == 2);
    CHECK_THROWS_AS(lm.select({"z"}), DomainError);
  }

  TEST_CASE("unlabelled columns are numbered") {
    const LabeledMatroid lm = parse_matroid("q=3 rows=2\n10\n01\n11\n12\n");
    CHECK(lm.labels == std::vector<std::string>{"0", "1", "2", "3"});
  }

  TEST_CASE("point-set form") {
    const LabeledMatroid lm = parse_matroid("pg q=3 rank=3 green=0,4,7\n");
    CHECK(lm.matroid.ambient_rank() == 3);
    CHECK(to_indices(lm.matroid.green) == std::vector<PointIndex>{0, 4, 7});
  }

  TEST_CASE("errors carry line numbers") {
    const auto line_of = [](std::string_view text) {
      try {
        parse_matroid(text);
      } catch (const ParseError& e) {
        return e.line();
      }
      return std::size_t{0};
    };
    CHECK(line_of("q=2 rows=2\n10\n03\n") == 3);
    CHECK(line_of("q=2 rows=2\n10\n101\n") == 3);
    CHECK(line_of("q=4 rows=2\n10\n") == 1);
    CHECK(line_of("# c\nrows=2\n") == 2);
    CHECK(line_of("pg q=2 rank=3 green=1,99\n") == 1);
    CHECK(line_of("q=2 rows=2\n10 a b\n") == 2);
  }

  TEST_CASE("non-simple input is rejected") {
    CHECK_THROWS_AS(parse_matroid("q=3 rows=2\n10\n20\n"), SimplicityError);
  }

  TEST_CASE("catalog entries survive a round trip") {
    for (const auto& name : catalog_names()) {
      CAPTURE(name);
      const MatrixPresentation pres = named(name);
      const EmbeddedMatroid m = embed(pres);
      CHECK(parse_matroid(format_matroid(m)).matroid == m);
      const MatrixPresentation again = parse_presentation(format_presentation(pres));
      CHECK(again.labels == pres.labels);
      CHECK(embed(again) == m);
    }
  }

  TEST_CASE("non-spanning matroids use the point-set form") {
    const SpacePtr space = PointSpace::get(Field::GF2, 4);
    const EmbeddedMatroid m = make_matroid(space, {0, 1, 2});
    const std::string text = format_matroid(m);
    CHECK(text.rfind("pg ", 0) == 0);
    CHECK(parse_matroid(text).matroid == m);
  }
}
