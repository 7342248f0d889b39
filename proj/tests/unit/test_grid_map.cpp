#include <string>

#include "doctest.h"
#include "ktpg/grid_map.hpp"

using namespace ktpg;

TEST_CASE("parse_map reads a 2x2 open map") {
    const GridMap map = parse_map("type octile\nheight 2\nwidth 2\nmap\n..\n..\n");
    CHECK(map.width() == 2);
    CHECK(map.height() == 2);
    CHECK(map.blocked_count() == 0);
    CHECK(map.cell_size() == 1.0);
}

TEST_CASE("parse_map reads a single obstacle") {
    const GridMap map = parse_map("type octile\nheight 2\nwidth 2\nmap\n.@\n..\n");
    CHECK(map.blocked_count() == 1);
    CHECK(map.blocked(Cell{1, 0}));
    CHECK_FALSE(map.blocked(Cell{0, 0}));
}

TEST_CASE("parse_map accepts benchmark-style 32x32 header") {
    std::string text = "type octile\nheight 32\nwidth 32\nmap\n";
    for (int i = 0; i < 32; ++i) text += std::string(32, '.') + "\n";
    const GridMap map = parse_map(text);
    CHECK(map.width() == 32);
    CHECK(map.height() == 32);
}

TEST_CASE("parse_map accepts width before height and G/O/T cells") {
    const GridMap map = parse_map("type tile\nwidth 3\nheight 2\nmap\n.GT\nO@.\n");
    CHECK(map.width() == 3);
    CHECK(map.passable(Cell{1, 0}));
    CHECK(map.blocked(Cell{2, 0}));
    CHECK(map.blocked(Cell{0, 1}));
}

TEST_CASE("parse_map errors carry line numbers") {
    CHECK_THROWS_WITH_AS(parse_map("type octile\nheight 2\nwidth 2\nmap\n...\n..\n"),
                         doctest::Contains("line 5"), ParseError);
    CHECK_THROWS_WITH_AS(parse_map("type octile\nheight 2\nwidth 2\nmap\n.x\n..\n"),
                         doctest::Contains("unknown cell character"), ParseError);
    CHECK_THROWS_AS(parse_map("height 2\nwidth 2\nmap\n..\n..\n"), ParseError);
    CHECK_THROWS_AS(parse_map("type octile\nheight 2\nwidth 2\nmap\n..\n"), ParseError);
}

TEST_CASE("map round-trips through write_map") {
    const std::string text = "type octile\nheight 3\nwidth 4\nmap\n.@..\n....\n..@@\n";
    CHECK(write_map(parse_map(text)) == text);
}
