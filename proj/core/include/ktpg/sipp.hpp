#pragma once

#include <optional>
#include <vector>

#include "ktpg/interval.hpp"
#include "ktpg/plan.hpp"
#include "ktpg/primitives.hpp"
#include "ktpg/profile.hpp"
#include "ktpg/types.hpp"

namespace ktpg {

struct KinematicState {
    double time = 0.0;
    double speed = 0.0;
    Direction orientation = Direction::North;  // used by differential drive only
};

// Time-optimal speed profile along a fixed chain of locations, as a 1-D
// safe-interval search over (vertex, discrete speed, arrival-time interval)
// states with motion-primitive expansions. The profile reaches every vertex
// inside its reserved interval, leaves it by the interval's upper bound,
// waits (and turns) only at zero speed, and ends at rest on the last vertex.
// Returns nullopt when no primitive sequence satisfies the intervals.
std::optional<SpeedProfile> plan_speed_profile(const std::vector<Cell>& chain,
                                               const std::vector<ReservedInterval>& intervals,
                                               const KinematicState& start,
                                               const PrimitiveSet& primitives, int agent_id = 0,
                                               int seq_offset = 0);

// Minimum feasible traversal time of a chain with unconstrained intervals.
double min_traverse_time(const std::vector<Cell>& chain, const KinematicState& start,
                         const PrimitiveSet& primitives);

// Sum over agents of the solo kinodynamic optimum of each agent's
// deduplicated location sequence (T_ideal). Agents start at rest, oriented
// toward their first move.
double ideal_time_sum(const MapfPlan& plan, const RobotModel& model);

// Orientation with which the chain's vertex `seq` is entered, assuming motion
// along the chain; `fallback` applies at seq 0.
Direction arrival_direction(const std::vector<Cell>& chain, int seq, Direction fallback);

}  // namespace ktpg
