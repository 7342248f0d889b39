#pragma once

#include "ktpg/simulator.hpp"
#include "ktpg/tpg.hpp"

namespace ktpg {

struct Metrics {
    bool success = false;
    double t_ideal = 0.0;
    double t_sum = 0.0;         // sum of goal reach times
    double suboptimality = 0.0;  // (t_sum - t_ideal) / t_ideal
    double makespan = 0.0;
    int window_count = 0;
    double planner_time_total = 0.0;
    double planner_time_max = 0.0;
};

Metrics compute_metrics(const ExecutionTrace& trace, const Tpg& tpg, double t_ideal);

}  // namespace ktpg
