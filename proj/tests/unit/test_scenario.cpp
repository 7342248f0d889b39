#include "doctest.h"
#include "ktpg/scenario.hpp"

using namespace ktpg;

namespace {
const char* kScen =
    "version 1\n"
    "0\tempty-8-8.map\t8\t8\t3\t4\t7\t9\t9.0\n"
    "0\tempty-8-8.map\t8\t8\t0\t0\t5\t5\t10.0\n"
    "0\tempty-8-8.map\t8\t8\t1\t2\t3\t4\t4.0\n"
    "0\tempty-8-8.map\t8\t8\t2\t2\t6\t6\t8.0\n"
    "0\tempty-8-8.map\t8\t8\t7\t7\t0\t7\t7.0\n";
}

TEST_CASE("parse_scenario returns the first count tasks in order") {
    const auto tasks = parse_scenario(kScen, 5);
    CHECK(tasks.size() == 5);
    for (int i = 0; i < 5; ++i) CHECK(tasks[i].agent_id == i);
}

TEST_CASE("parse_scenario with count 0 returns nothing") {
    CHECK(parse_scenario(kScen, 0).empty());
}

TEST_CASE("scen row fields map to start and goal coordinates") {
    const auto tasks = parse_scenario(kScen, 1);
    CHECK(tasks[0].start == Cell{3, 4});
    CHECK(tasks[0].goal == Cell{7, 9});
}

TEST_CASE("parse_scenario rejects short files and bad coordinates") {
    CHECK_THROWS_AS(parse_scenario(kScen, 6), ParseError);
    const GridMap map(8, 8, std::vector<bool>(64, false));
    CHECK_THROWS_WITH_AS(parse_scenario(kScen, 1, &map), doctest::Contains("out of map bounds"),
                         ParseError);  // goal (7,9) exceeds 8x8
    CHECK(parse_scenario("0 m 8 8 1 1 2 2 2.0\n", 1, &map).size() == 1);
}
