#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "flp/instance.hpp"

using flp::Instance;
using flp::Rat;

TEST_CASE("parse and serialize round-trip losslessly") {
  Instance inst = flp::test::triple_1d();
  std::string text = flp::serialize_instance(inst);
  Instance again = flp::parse_instance_text(text);
  CHECK(flp::serialize_instance(again) == text);
  CHECK(flp::instance_digest(again) == flp::instance_digest(inst));

  Instance sq = flp::test::two_squares_2d();
  Instance sq2 = flp::parse_instance_text(flp::serialize_instance(sq));
  CHECK(flp::serialize_instance(sq2) == flp::serialize_instance(sq));
  CHECK(sq2.comp(1).area == Rat(1));
  CHECK(sq2.weight(1, 2) == Rat(2));
}

TEST_CASE("comments and blank lines are ignored") {
  Instance inst = flp::parse_instance_text(
      "# layout data\n"
      "FLP 1\n\n"
      "N 2\n"
      "L 20   # total length\n"
      "COMP 1 1\n"
      "COMP 2 2.5\n"
      "P 1 2 3/2\n");
  CHECK(inst.n == 2);
  CHECK(inst.comp(2).lb[0] == Rat(5, 2));
  CHECK(inst.weight(1, 2) == Rat(3, 2));
}

TEST_CASE("malformed input reports the offending line") {
  CHECK_THROWS_AS(flp::parse_instance_text("N 2\n"), flp::ParseError);
  CHECK_THROWS_AS(flp::parse_instance_text("FLP 3\n"), flp::ParseError);
  CHECK_THROWS_AS(
      flp::parse_instance_text("FLP 1\nN 2\nL 20\nCOMP 1 1\nCOMP 1 2\nP 1 2 1\n"),
      flp::ParseError);
  CHECK_THROWS_AS(
      flp::parse_instance_text("FLP 1\nN 2\nL 20\nCOMP 1 1\nCOMP 2 2\nP 2 1 1\n"),
      flp::ParseError);
  CHECK_THROWS_AS(
      flp::parse_instance_text("FLP 1\nN 2\nL 20\nCOMP 1 1\nCOMP 2 2\nP 1 2 1\nP 1 2 2\n"),
      flp::ParseError);
  CHECK_THROWS_AS(flp::parse_instance_text("FLP 1\nN 2\nL 20\nCOMP 1 1\n"), flp::ParseError);
}

TEST_CASE("validation rejects invariant violations") {
  // Floor shorter than twice the total extent.
  CHECK_THROWS_AS(
      flp::parse_instance_text("FLP 1\nN 2\nL 5\nCOMP 1 1\nCOMP 2 2\nP 1 2 1\n"),
      flp::ValidationError);
  // Nonpositive half-width.
  CHECK_THROWS_AS(
      flp::parse_instance_text("FLP 1\nN 2\nL 20\nCOMP 1 0\nCOMP 2 2\nP 1 2 1\n"),
      flp::ValidationError);
  // lb above ub.
  CHECK_THROWS_AS(flp::parse_instance_text(
                      "FLP 2\nN 2\nL 20 20\nCOMP 1 2 1 1 1 1\nCOMP 2 1 1 1 1 1\nP 1 2 1\n"),
                  flp::ValidationError);
  // Area beyond what the narrowest shape admits.
  CHECK_THROWS_AS(flp::parse_instance_text(
                      "FLP 2\nN 2\nL 20 20\nCOMP 1 1 1 1 1 9\nCOMP 2 1 1 1 1 1\nP 1 2 1\n"),
                  flp::ValidationError);
  // Negative weight.
  CHECK_THROWS_AS(
      flp::parse_instance_text("FLP 1\nN 2\nL 20\nCOMP 1 1\nCOMP 2 2\nP 1 2 -1\n"),
      flp::ValidationError);
}

TEST_CASE("generator is deterministic and honors the density contract") {
  Instance a = flp::generate_instance(1, 8, 0.5, 1);
  Instance b = flp::generate_instance(1, 8, 0.5, 1);
  CHECK(flp::serialize_instance(a) == flp::serialize_instance(b));

  int positive = 0;
  for (int i = 1; i <= a.n; ++i)
    for (int j = i + 1; j <= a.n; ++j)
      if (a.weight(i, j) > 0) ++positive;
  CHECK(positive == 14);  // ceil(0.5 * 28)

  Instance empty = flp::generate_instance(2, 4, 0.0, 7);
  for (int i = 1; i <= empty.n; ++i)
    for (int j = i + 1; j <= empty.n; ++j) CHECK(empty.weight(i, j) == 0);
  CHECK(flp::active_components(empty).empty());

  Instance other = flp::generate_instance(1, 8, 0.5, 2);
  CHECK(flp::serialize_instance(other) != flp::serialize_instance(a));
}

TEST_CASE("generated instances satisfy every invariant including the big floor") {
  for (int dim : {1, 2})
    for (std::uint64_t seed : {1ull, 5ull, 9ull}) {
      Instance inst = flp::generate_instance(dim, 6, 0.7, seed);
      CHECK_NOTHROW(flp::validate_instance(inst));
      for (int s = 0; s < inst.dim; ++s) {
        Rat total = 0;
        for (const auto& c : inst.comps) total += c.ub[s];
        CHECK(inst.floor_len[s] >= 2 * total);
      }
    }
}

TEST_CASE("generator clamps out-of-range requests") {
  Instance tiny = flp::generate_instance(1, 0, 0.5, 3);
  CHECK(tiny.n == 2);
  Instance dense = flp::generate_instance(1, 4, 2.0, 3);
  int positive = 0;
  for (int i = 1; i <= dense.n; ++i)
    for (int j = i + 1; j <= dense.n; ++j)
      if (dense.weight(i, j) > 0) ++positive;
  CHECK(positive == 6);
}

TEST_CASE("active components are the weighted ones") {
  Instance inst = flp::parse_instance_text(
      "FLP 1\nN 4\nL 40\nCOMP 1 1\nCOMP 2 1\nCOMP 3 1\nCOMP 4 1\nP 1 3 2\n");
  std::vector<int> active = flp::active_components(inst);
  CHECK(active == std::vector<int>{1, 3});
}
