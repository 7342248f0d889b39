#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace ktpg {

// Grid coordinates: x is the column, y is the row, origin at the top-left
// (MovingAI scen convention).
struct Cell {
    int x = 0;
    int y = 0;

    bool operator==(const Cell&) const = default;
    auto operator<=>(const Cell&) const = default;
};

inline std::string to_string(const Cell& c) {
    return "(" + std::to_string(c.x) + "," + std::to_string(c.y) + ")";
}

// 4-neighbor move direction; also the orientation set of a differential-drive
// robot.
enum class Direction : std::uint8_t { North, East, South, West };

inline const char* to_string(Direction d) {
    switch (d) {
        case Direction::North: return "N";
        case Direction::East: return "E";
        case Direction::South: return "S";
        case Direction::West: return "W";
    }
    return "?";
}

// Direction of the unit step from `a` to `b`. Throws if the cells are not
// 4-adjacent.
inline Direction step_direction(const Cell& a, const Cell& b) {
    const int dx = b.x - a.x;
    const int dy = b.y - a.y;
    if (dx == 1 && dy == 0) return Direction::East;
    if (dx == -1 && dy == 0) return Direction::West;
    if (dx == 0 && dy == 1) return Direction::South;  // y grows downward
    if (dx == 0 && dy == -1) return Direction::North;
    throw std::invalid_argument("cells " + to_string(a) + " and " + to_string(b) +
                                " are not 4-adjacent");
}

// Absolute angle between two orientations, in quarter turns (0, 1, or 2).
inline int quarter_turns_between(Direction a, Direction b) {
    int diff = (static_cast<int>(b) - static_cast<int>(a) + 4) % 4;
    return diff > 2 ? 4 - diff : diff;
}

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace ktpg

template <>
struct std::hash<ktpg::Cell> {
    std::size_t operator()(const ktpg::Cell& c) const noexcept {
        return std::hash<std::uint64_t>{}((static_cast<std::uint64_t>(static_cast<std::uint32_t>(c.x)) << 32) |
                                          static_cast<std::uint32_t>(c.y));
    }
};
