#pragma once

#include <memory>
#include <string>
#include <vector>

#include "ktpg/grid_map.hpp"
#include "ktpg/plan.hpp"

namespace ktpg::fixtures {

// Keeps the map alive alongside the plan that points at it.
struct Instance {
    std::shared_ptr<GridMap> map;
    MapfPlan plan;
};

GridMap open_map(int width, int height);

// Builds a plan from explicit paths on an open map of the given size.
Instance make_instance(int width, int height, std::vector<std::vector<Cell>> paths);

// Two agents crossing one shared cell; the second agent waits one step, so
// the plan is collision-free and the TPG has exactly one Type-2 edge.
Instance crossing_instance();

// Corridor overtaking layout: agent 0 cuts across the column that agent 1
// drives down, so agent 1 may enter the shared cell only after agent 0 left
// it. `approach` is agent 1's distance to the shared cell.
Instance corridor_instance(int approach = 4);

// Two agents where agent 0 follows agent 1 through two shared cells; both
// Type-2 edges point from agent 1 to agent 0.
Instance two_shared_cells_instance();

}  // namespace ktpg::fixtures
