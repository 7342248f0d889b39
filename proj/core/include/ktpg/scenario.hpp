#pragma once

#include <string>
#include <vector>

#include "ktpg/grid_map.hpp"
#include "ktpg/types.hpp"

namespace ktpg {

struct AgentTask {
    int agent_id = 0;
    Cell start;
    Cell goal;
};

// Parses the MovingAI `.scen` format ("version ..." header, then one
// tab/space-separated row per task: bucket, map, width, height, start_x,
// start_y, goal_x, goal_y, distance). Returns the first `count` tasks with
// ids 0..count-1. When `map` is given, coordinates are checked to be
// in-bounds and unblocked.
std::vector<AgentTask> parse_scenario(const std::string& text, int count,
                                      const GridMap* map = nullptr);

std::string write_scenario(const std::vector<AgentTask>& tasks, const GridMap& map,
                           const std::string& map_name);

}  // namespace ktpg
