#pragma once

#include <string>
#include <vector>

#include "ktpg/types.hpp"

namespace ktpg {

// 4-neighbor grid world. Cells are unit squares 1 m apart.
class GridMap {
  public:
    GridMap() = default;
    GridMap(int width, int height, std::vector<bool> blocked, std::string name = "");

    int width() const { return width_; }
    int height() const { return height_; }
    double cell_size() const { return 1.0; }
    const std::string& name() const { return name_; }

    bool in_bounds(const Cell& c) const {
        return c.x >= 0 && c.x < width_ && c.y >= 0 && c.y < height_;
    }
    bool blocked(const Cell& c) const { return blocked_[index(c)]; }
    bool passable(const Cell& c) const { return in_bounds(c) && !blocked(c); }

    int index(const Cell& c) const { return c.y * width_ + c.x; }
    Cell cell(int index) const { return Cell{index % width_, index / width_}; }
    int cell_count() const { return width_ * height_; }
    int blocked_count() const;

  private:
    int width_ = 0;
    int height_ = 0;
    std::vector<bool> blocked_;
    std::string name_;
};

// Parses the MovingAI benchmark `.map` format: a `type` line, `height`/`width`
// lines (either order), a `map` line, then one row of cell characters per map
// row. `.` and `G` are passable; `@`, `O`, and `T` are blocked.
GridMap parse_map(const std::string& text, const std::string& name = "");

// Emits the character grid back in MovingAI format (type octile header).
std::string write_map(const GridMap& map);

}  // namespace ktpg
