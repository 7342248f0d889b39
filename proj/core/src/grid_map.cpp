#include "ktpg/grid_map.hpp"

#include <algorithm>
#include <sstream>

namespace ktpg {

namespace {

[[noreturn]] void fail(int line_no, const std::string& what) {
    throw ParseError("map parse error at line " + std::to_string(line_no) + ": " + what);
}

std::string strip_cr(std::string s) {
    if (!s.empty() && s.back() == '\r') s.pop_back();
    return s;
}

}  // namespace

GridMap::GridMap(int width, int height, std::vector<bool> blocked, std::string name)
    : width_(width), height_(height), blocked_(std::move(blocked)), name_(std::move(name)) {
    if (width_ <= 0 || height_ <= 0)
        throw std::invalid_argument("grid dimensions must be positive");
    if (static_cast<int>(blocked_.size()) != width_ * height_)
        throw std::invalid_argument("blocked mask size does not match dimensions");
}

int GridMap::blocked_count() const {
    return static_cast<int>(std::count(blocked_.begin(), blocked_.end(), true));
}

GridMap parse_map(const std::string& text, const std::string& name) {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;

    auto next_line = [&]() -> bool {
        if (!std::getline(in, line)) return false;
        line = strip_cr(line);
        ++line_no;
        return true;
    };

    if (!next_line()) fail(1, "empty file, expected 'type' header");
    if (line.rfind("type", 0) != 0) fail(line_no, "expected 'type' header, got '" + line + "'");

    int width = -1, height = -1;
    for (int i = 0; i < 2; ++i) {
        if (!next_line()) fail(line_no + 1, "expected 'height'/'width' header");
        std::istringstream fields(line);
        std::string key;
        int value = -1;
        fields >> key >> value;
        if (key == "height") height = value;
        else if (key == "width") width = value;
        else fail(line_no, "expected 'height' or 'width', got '" + line + "'");
        if (value <= 0) fail(line_no, key + " must be positive");
    }
    if (width < 0 || height < 0) fail(line_no, "missing height or width header");

    if (!next_line() || line != "map") fail(line_no, "expected 'map' header");

    std::vector<bool> blocked;
    blocked.reserve(static_cast<std::size_t>(width) * height);
    for (int row = 0; row < height; ++row) {
        if (!next_line()) fail(line_no + 1, "expected map row " + std::to_string(row));
        if (static_cast<int>(line.size()) != width)
            fail(line_no, "row length " + std::to_string(line.size()) + " does not match width " +
                              std::to_string(width));
        for (char ch : line) {
            switch (ch) {
                case '.':
                case 'G': blocked.push_back(false); break;
                case '@':
                case 'O':
                case 'T': blocked.push_back(true); break;
                default: fail(line_no, std::string("unknown cell character '") + ch + "'");
            }
        }
    }
    return GridMap(width, height, std::move(blocked), name);
}

std::string write_map(const GridMap& map) {
    std::ostringstream out;
    out << "type octile\n"
        << "height " << map.height() << "\n"
        << "width " << map.width() << "\n"
        << "map\n";
    for (int y = 0; y < map.height(); ++y) {
        for (int x = 0; x < map.width(); ++x) out << (map.blocked(Cell{x, y}) ? '@' : '.');
        out << '\n';
    }
    return out.str();
}

}  // namespace ktpg
