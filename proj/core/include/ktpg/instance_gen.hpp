#pragma once

#include <cstdint>
#include <string>

#include "ktpg/plan.hpp"
#include "ktpg/scenario.hpp"

namespace ktpg {

struct GeneratedInstance {
    bool ok = false;
    std::string note;
    std::vector<AgentTask> tasks;
    MapfPlan plan;
};

// Self-contained MAPF instance generator: samples distinct starts and goals,
// then plans agents one by one with space-time A* in a random priority order,
// treating earlier agents (including their parked goals) as moving obstacles.
// Retries with a new priority order on failure, up to `max_orders` orders.
GeneratedInstance generate_instance(const GridMap& map, int n_agents, std::uint64_t seed,
                                    int max_orders = 20);

}  // namespace ktpg
