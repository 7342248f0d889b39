#pragma once

#include <string>
#include <vector>

#include "ktpg/simulator.hpp"
#include "ktpg/tpg.hpp"

namespace ktpg {

struct OccupancyOverlap {
    Cell location;
    int agent_a = 0, agent_b = 0;
    double from = 0.0, to = 0.0;  // the overlapping span
};

struct OrderViolation {
    int edge_id = 0;
    double source_reach = 0.0;  // when the earlier agent left the shared location
    double target_reach = 0.0;  // when the later agent entered it
};

struct CollisionReport {
    std::vector<OccupancyOverlap> overlaps;
    std::vector<OrderViolation> order_violations;

    bool ok() const { return overlaps.empty() && order_violations.empty(); }
    std::string to_json() const;
};

// Checks a (possibly partial) trace: an agent occupies a location from its
// reach time until it reaches the next one; the last reached vertex is held
// to the episode end (forever for goals). Reports every pairwise occupancy
// overlap and every Type-2 edge whose target was entered at or before the
// source agent left the shared location.
CollisionReport check_trace(const ExecutionTrace& trace, const Tpg& tpg);

}  // namespace ktpg
