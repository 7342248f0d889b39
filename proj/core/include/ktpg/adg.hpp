#pragma once

#include "ktpg/robot_model.hpp"
#include "ktpg/simulator.hpp"

namespace ktpg {

// Conservative baseline executor. A vertex becomes enqueued only when its
// Type-1 predecessor is enqueued or finished and every Type-2 predecessor is
// finished (reached); each agent is repeatedly planned, at replan_period
// granularity, from its current motion state through its enqueued vertices,
// coming to rest at the last one. Robust to arbitrary delays by construction.
ExecutionTrace run_adg_baseline(Simulator& sim, const RobotModel& model,
                                double replan_period = 0.01, double wall_clock_limit = 300.0);

}  // namespace ktpg
