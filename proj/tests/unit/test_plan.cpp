#include "doctest.h"
#include "fixtures.hpp"
#include "ktpg/plan.hpp"

using namespace ktpg;

TEST_CASE("parse_plan reads a single two-step record") {
    const GridMap map = fixtures::open_map(4, 4);
    const MapfPlan plan = parse_plan("0: (1,1)@0, (1,2)@1\n", map);
    REQUIRE(plan.agent_count() == 1);
    CHECK(plan.paths[0].cells == std::vector<Cell>{{1, 1}, {1, 2}});
}

TEST_CASE("parse_plan accepts two disjoint agents and waits") {
    const GridMap map = fixtures::open_map(4, 4);
    const MapfPlan plan = parse_plan("0: (0,0)@0, (0,1)@1\n1: (3,3)@0, (3,3)@1, (3,2)@2\n", map);
    CHECK(plan.agent_count() == 2);
    CHECK(plan.paths[1].deduplicated() == std::vector<Cell>{{3, 3}, {3, 2}});
    CHECK(validate_plan(plan).ok());
}

TEST_CASE("parse_plan rejects bad steps") {
    const GridMap map = fixtures::open_map(4, 4);
    CHECK_THROWS_WITH_AS(parse_plan("0: (0,0)@0, (1,1)@1\n", map),
                         doctest::Contains("non-adjacent step"), ParseError);
    CHECK_THROWS_WITH_AS(parse_plan("0: (0,0)@0, (0,1)@2\n", map),
                         doctest::Contains("timestep gap"), ParseError);
    CHECK_THROWS_WITH_AS(parse_plan("0: (0,0)@0, (0,9)@1\n", map),
                         doctest::Contains("out of map bounds"), ParseError);
}

TEST_CASE("plan round-trips through write_plan") {
    const GridMap map = fixtures::open_map(4, 4);
    const std::string text = "0: (0,0)@0, (0,1)@1, (0,1)@2\n1: (3,3)@0, (3,2)@1\n";
    const MapfPlan plan = parse_plan(text, map);
    CHECK(write_plan(plan) == text);
    const MapfPlan again = parse_plan(write_plan(plan), map);
    for (int a = 0; a < plan.agent_count(); ++a)
        CHECK(again.paths[a].cells == plan.paths[a].cells);
}

TEST_CASE("validate_plan reports vertex collisions") {
    const GridMap map = fixtures::open_map(4, 4);
    // both agents on (1,1) at t=3
    const MapfPlan plan = parse_plan(
        "0: (0,1)@0, (0,1)@1, (0,1)@2, (1,1)@3\n1: (2,1)@0, (2,1)@1, (2,1)@2, (1,1)@3\n", map);
    const ValidationReport report = validate_plan(plan);
    REQUIRE(report.vertex_collisions.size() == 1);
    CHECK(report.vertex_collisions[0].timestep == 3);
    CHECK(report.vertex_collisions[0].cell == Cell{1, 1});
    CHECK(report.edge_collisions.empty());
}

TEST_CASE("validate_plan reports edge collisions (swap between t=2 and t=3)") {
    const GridMap map = fixtures::open_map(4, 4);
    const MapfPlan plan = parse_plan(
        "0: (0,0)@0, (0,0)@1, (0,0)@2, (1,0)@3\n1: (1,0)@0, (1,0)@1, (1,0)@2, (0,0)@3\n", map);
    const ValidationReport report = validate_plan(plan);
    REQUIRE(report.edge_collisions.size() == 1);
    CHECK(report.edge_collisions[0].timestep == 3);
}

TEST_CASE("validate_plan treats finished agents as parked at their goals") {
    const GridMap map = fixtures::open_map(4, 4);
    // agent 0 finishes on (1,0) at t=1; agent 1 drives through it at t=3
    const MapfPlan plan =
        parse_plan("0: (0,0)@0, (1,0)@1\n1: (3,0)@0, (3,0)@1, (2,0)@2, (1,0)@3\n", map);
    CHECK(validate_plan(plan).vertex_collisions.size() == 1);
}

TEST_CASE("the crossing fixture is collision-free") {
    const fixtures::Instance inst = fixtures::crossing_instance();
    CHECK(validate_plan(inst.plan).ok());
}
