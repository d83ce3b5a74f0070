#include <algorithm>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "fixtures.hpp"
#include "flp/bound.hpp"
#include "flp/errors.hpp"
#include "oracles.hpp"

using flp::BoundConfig;
using flp::BoundResult;
using flp::Instance;
using flp::Rat;
using flp::SubsetFamily;

TEST_CASE("closed form equals the level-two master on both dimensions") {
  Instance triple = flp::test::triple_1d();
  CHECK(flp::omega2_closed_form(triple) == Rat(12));

  Instance squares = flp::test::two_squares_2d();
  CHECK(flp::omega2_closed_form(squares) == Rat(2));

  for (int dim : {1, 2}) {
    for (unsigned seed : {2u, 8u, 31u}) {
      Instance inst = flp::generate_instance(dim, dim == 1 ? 6 : 4, 0.8, seed);
      std::vector<flp::SubsetBound> bounds;
      for (const auto& subset : flp::build_family(inst, 2).subsets)
        bounds.push_back(dim == 1 ? flp::gamma_1d(inst, subset) : flp::gamma_2d(inst, subset));
      BoundResult level2 = flp::master_bound(inst, std::move(bounds));
      if (dim == 1) {
        CHECK(level2.omega == flp::omega2_closed_form(inst));
      } else {
        CHECK(flp::to_double(level2.omega) ==
              doctest::Approx(flp::to_double(flp::omega2_closed_form(inst))).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("family construction covers all small subsets in order") {
  Instance inst = flp::generate_instance(1, 4, 1.0, 1);
  SubsetFamily pairs = flp::build_family(inst, 2);
  CHECK(pairs.subsets.size() == 6);
  CHECK(pairs.tag == "level-2");
  CHECK(std::is_sorted(pairs.subsets.begin(), pairs.subsets.end()));

  SubsetFamily triples = flp::build_family(inst, 3);
  CHECK(triples.subsets.size() == 10);  // 6 pairs + 4 triples
  for (const auto& s : triples.subsets) {
    CHECK(s.size() >= 2);
    CHECK(s.size() <= 3);
    CHECK(std::is_sorted(s.begin(), s.end()));
  }
}

TEST_CASE("pruning drops subsets with a weight-isolated member") {
  // only the pair {1,2} carries weight; anything containing 3 is dominated
  std::istringstream text("FLP 1\nN 3\nL 100\nCOMP 1 1\nCOMP 2 2\nCOMP 3 3\nP 1 2 1\n");
  Instance inst = flp::parse_instance(text);
  SubsetFamily fam = flp::build_family(inst, 3);
  SubsetFamily kept = flp::prune_family(inst, fam);
  REQUIRE(kept.subsets.size() == 1);
  CHECK(kept.subsets[0] == std::vector<int>{1, 2});
  CHECK(kept.tag == "pruned-from-3");
}

TEST_CASE("hierarchy levels are monotone and finish at the exact optimum") {
  Instance inst = flp::test::triple_1d();
  std::vector<BoundResult> levels = flp::hierarchy(inst, 3);
  REQUIRE(levels.size() == 2);
  CHECK(levels[0].level == 2);
  CHECK(levels[0].omega == Rat(12));
  CHECK(levels[1].level == 3);
  CHECK(levels[1].omega == Rat(14));

  flp::SubsetBound exact = flp::exact_optimum(inst);
  CHECK(exact.gamma == Rat(14));
  CHECK(exact.upper == Rat(14));
  CHECK(flp::check_feasibility(inst, exact.witness, Rat(0)).feasible);
}

TEST_CASE("hierarchy is monotone on random one-axis instances") {
  for (unsigned seed : {4u, 13u}) {
    Instance inst = flp::generate_instance(1, 5, 0.8, seed);
    std::vector<BoundResult> levels = flp::hierarchy(inst, 5);
    for (size_t i = 1; i < levels.size(); ++i) CHECK(levels[i].omega >= levels[i - 1].omega);
    flp::SubsetBound exact = flp::exact_optimum(inst);
    CHECK(levels.back().omega == exact.gamma);
  }
}

TEST_CASE("pruning changes counts but not the bound") {
  Instance inst = flp::generate_instance(1, 6, 0.3, 19);
  BoundConfig with;
  BoundConfig without;
  without.prune = false;
  std::vector<BoundResult> pruned = flp::hierarchy(inst, 3, with);
  std::vector<BoundResult> full = flp::hierarchy(inst, 3, without);
  REQUIRE(pruned.size() == full.size());
  for (size_t i = 0; i < pruned.size(); ++i) {
    CHECK(pruned[i].omega == full[i].omega);
    CHECK(pruned[i].family_size == full[i].family_size);
    CHECK(pruned[i].solved_size <= full[i].solved_size);
  }
}

TEST_CASE("worker count does not change any reported value") {
  Instance inst = flp::generate_instance(1, 6, 0.7, 27);
  BoundConfig one;
  one.workers = 1;
  BoundConfig many;
  many.workers = 8;
  std::vector<BoundResult> a = flp::hierarchy(inst, 4, one);
  std::vector<BoundResult> b = flp::hierarchy(inst, 4, many);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].omega == b[i].omega);
    REQUIRE(a[i].bounds.size() == b[i].bounds.size());
    for (size_t r = 0; r < a[i].bounds.size(); ++r) {
      CHECK(a[i].bounds[r].subset == b[i].bounds[r].subset);
      CHECK(a[i].bounds[r].gamma == b[i].bounds[r].gamma);
    }
  }
}

TEST_CASE("master LP has one covering row per subset bound") {
  Instance inst = flp::test::triple_1d();
  std::vector<flp::SubsetBound> bounds;
  for (const auto& subset : flp::build_family(inst, 3).subsets)
    bounds.push_back(flp::gamma_1d(inst, subset));
  flp::LinearProgram lp = flp::build_master_lp(inst, bounds);
  CHECK(lp.num_vars() == 3);  // one distance per weighted pair
  CHECK(lp.rows.size() == bounds.size());
  for (const auto& row : lp.rows) CHECK(row.sense == flp::Sense::kGe);

  BoundResult res = flp::master_bound(inst, bounds);
  CHECK(res.omega == Rat(14));
  REQUIRE(res.duals.size() == bounds.size());
  Rat dual_total = 0;
  for (size_t r = 0; r < bounds.size(); ++r) dual_total += res.duals[r] * bounds[r].gamma;
  CHECK(dual_total == res.omega);  // strong duality on the master
}

TEST_CASE("size caps on hierarchy depth and exact reference") {
  Instance inst = flp::generate_instance(1, 6, 1.0, 2);
  CHECK_THROWS_AS(flp::hierarchy(inst, 7), flp::SizeCapError);

  Instance wide = flp::generate_instance(1, 9, 1.0, 2);
  CHECK_THROWS_AS(flp::exact_optimum(wide), flp::SizeCapError);
  Instance plane = flp::generate_instance(2, 5, 1.0, 2);
  CHECK_THROWS_AS(flp::exact_optimum(plane), flp::SizeCapError);
}

TEST_CASE("two-axis hierarchy brackets the reference value") {
  Instance inst = flp::generate_instance(2, 4, 1.0, 6);
  std::vector<BoundResult> levels = flp::hierarchy(inst, 3);
  flp::SubsetBound exact = flp::exact_optimum(inst);
  for (size_t i = 1; i < levels.size(); ++i)
    CHECK(flp::to_double(levels[i].omega) >= flp::to_double(levels[i - 1].omega) - 1e-9);
  CHECK(flp::to_double(levels.back().omega) <= flp::to_double(exact.upper) + 1e-9);
}
