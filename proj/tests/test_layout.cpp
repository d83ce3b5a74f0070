#include <vector>

#include "doctest.h"
#include "fixtures.hpp"
#include "flp/layout.hpp"

using flp::Instance;
using flp::Layout;
using flp::Rat;

TEST_CASE("one-axis packing places components touching in order") {
  Instance inst = flp::test::triple_1d();
  Layout layout = flp::pack_1d(inst, std::vector<int>{2, 1, 3});
  REQUIRE(layout.size() == 3);
  // ids stay ascending; order shows up in the positions
  CHECK(layout.ids == std::vector<int>{1, 2, 3});
  CHECK(layout.center[0][0] == Rat(5));
  CHECK(layout.center[0][1] == Rat(2));
  CHECK(layout.center[0][2] == Rat(9));
  CHECK(flp::layout_objective(inst, layout) == Rat(14));
  CHECK(flp::check_feasibility(inst, layout, Rat(0)).feasible);
}

TEST_CASE("feasibility check flags overlap and misreported distances") {
  Instance inst = flp::test::triple_1d();
  Layout layout = flp::pack_1d(inst, std::vector<int>{1, 2, 3});
  CHECK(flp::check_feasibility(inst, layout, Rat(0)).feasible);

  Layout overlapping = layout;
  overlapping.center[0][1] = overlapping.center[0][0];  // 2 collides with 1
  auto verdict = flp::check_feasibility(inst, overlapping, Rat(0));
  CHECK_FALSE(verdict.feasible);
  CHECK_FALSE(verdict.violations.empty());
  CHECK(verdict.violations.front().amount > 0);

  Layout lying = layout;
  lying.dist[0][0] -= Rat(1, 2);  // understate one pair distance
  CHECK_FALSE(flp::check_feasibility(inst, lying, Rat(0)).feasible);
  // a loose tolerance forgives it
  CHECK(flp::check_feasibility(inst, lying, Rat(1)).feasible);
}

TEST_CASE("two-axis packing respects relations and the area floor") {
  Instance inst = flp::test::two_squares_2d();
  flp::RelationAssignment asg;
  asg.ids = {1, 2};
  asg.rel = {flp::Rel::kXBefore};
  REQUIRE(flp::acyclic_on_each_axis(asg));

  std::vector<Rat> half[2];
  half[0] = {Rat(1, 2), Rat(1, 2)};
  half[1] = {Rat(1, 2), Rat(1, 2)};
  Layout layout = flp::pack_2d(inst, asg, half);
  CHECK(flp::check_feasibility(inst, layout, Rat(0)).feasible);
  CHECK(layout.center[0][1] - layout.center[0][0] == Rat(1));
  CHECK(flp::layout_objective(inst, layout) == Rat(2));
}

TEST_CASE("relation helpers: reflection and acyclicity") {
  flp::RelationAssignment asg;
  asg.ids = {1, 2, 3};
  asg.rel = {flp::Rel::kXBefore, flp::Rel::kYBefore, flp::Rel::kXAfter};
  CHECK(asg.before(0, 1, 0));
  CHECK_FALSE(asg.before(1, 0, 0));
  CHECK(asg.before(0, 2, 1));
  CHECK(asg.before(2, 1, 0));  // kXAfter on pair (2,3): 3 precedes 2
  CHECK(flp::acyclic_on_each_axis(asg));

  flp::RelationAssignment mirrored = flp::reflect(asg, 0);
  CHECK(mirrored.before(1, 0, 0));
  CHECK(mirrored.before(0, 2, 1));  // other axis untouched
  CHECK(flp::acyclic_on_each_axis(mirrored));
}

TEST_CASE("layout text lists placements, precedences, objective") {
  Instance inst = flp::test::triple_1d();
  Layout layout = flp::pack_1d(inst, std::vector<int>{2, 1, 3});
  std::string text = flp::serialize_layout(inst, layout);
  CHECK(text.find("LAYOUT 1 3") == 0);
  CHECK(text.find("COMP 1 5 1") != std::string::npos);
  CHECK(text.find("PREC 2 1 x") != std::string::npos);
  CHECK(text.find("OBJ 14") != std::string::npos);
}
