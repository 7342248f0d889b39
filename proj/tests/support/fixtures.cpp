#include "fixtures.hpp"

namespace ktpg::fixtures {

GridMap open_map(int width, int height) {
    return GridMap(width, height, std::vector<bool>(static_cast<std::size_t>(width) * height, false));
}

Instance make_instance(int width, int height, std::vector<std::vector<Cell>> paths) {
    Instance inst;
    inst.map = std::make_shared<GridMap>(open_map(width, height));
    for (std::size_t a = 0; a < paths.size(); ++a)
        inst.plan.paths.push_back({static_cast<int>(a), std::move(paths[a])});
    inst.plan.map = inst.map.get();
    return inst;
}

Instance crossing_instance() {
    return make_instance(3, 3,
                         {{{0, 1}, {1, 1}, {2, 1}},
                          {{1, 0}, {1, 0}, {1, 1}, {1, 2}}});
}

Instance corridor_instance(int approach) {
    std::vector<Cell> crossing = {{2, 1}, {1, 1}, {0, 1}};
    std::vector<Cell> column;
    for (int y = approach; y >= 0; --y) column.push_back({1, y});
    return make_instance(3, approach + 1, {std::move(crossing), std::move(column)});
}

Instance two_shared_cells_instance() {
    return make_instance(4, 3,
                         {{{1, 1}, {1, 1}, {2, 1}, {2, 2}},
                          {{2, 0}, {2, 1}, {2, 2}, {3, 2}}});
}

}  // namespace ktpg::fixtures
