#pragma once

#include <string>
#include <vector>

#include "ktpg/grid_map.hpp"
#include "ktpg/types.hpp"

namespace ktpg {

// One agent's discrete-time path: a cell per timestep 0..T, consecutive cells
// identical (wait) or 4-adjacent. Wait steps are preserved verbatim; they are
// collapsed later during TPG construction.
struct TimedPath {
    int agent_id = 0;
    std::vector<Cell> cells;  // cells[t] = location at timestep t

    const Cell& start() const { return cells.front(); }
    const Cell& goal() const { return cells.back(); }
    int last_timestep() const { return static_cast<int>(cells.size()) - 1; }

    // Location at timestep t; agents park at their goal after finishing.
    const Cell& at(int t) const {
        return cells[t >= static_cast<int>(cells.size()) ? cells.size() - 1 : t];
    }

    // The path's location sequence with consecutive duplicates removed.
    std::vector<Cell> deduplicated() const;
};

struct MapfPlan {
    std::vector<TimedPath> paths;
    const GridMap* map = nullptr;

    int agent_count() const { return static_cast<int>(paths.size()); }
    int makespan() const;
};

struct VertexCollision {
    int agent_a = 0, agent_b = 0;
    int timestep = 0;
    Cell cell;
};

struct EdgeCollision {
    int agent_a = 0, agent_b = 0;
    int timestep = 0;  // the step from timestep-1 to timestep
    Cell cell_a, cell_b;
};

struct ValidationReport {
    std::vector<VertexCollision> vertex_collisions;
    std::vector<EdgeCollision> edge_collisions;

    bool ok() const { return vertex_collisions.empty() && edge_collisions.empty(); }
    std::string summary() const;
};

// Plan file format, one record per line:
//   agent_id: (x,y)@t, (x,y)@t, ...
// Timesteps start at 0 and increase by 1; consecutive cells must be equal or
// 4-adjacent and lie on passable map cells.
MapfPlan parse_plan(const std::string& text, const GridMap& map);

std::string write_plan(const MapfPlan& plan);

// Reports every vertex collision (two agents on one cell at one timestep) and
// edge collision (simultaneous swap). Agents are treated as parked at their
// goals after their last timestep.
ValidationReport validate_plan(const MapfPlan& plan);

}  // namespace ktpg
