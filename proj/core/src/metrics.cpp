#include "ktpg/metrics.hpp"

#include <algorithm>

namespace ktpg {

Metrics compute_metrics(const ExecutionTrace& trace, const Tpg& tpg, double t_ideal) {
    Metrics m;
    m.t_ideal = t_ideal;
    m.success = trace.all_at_goal(tpg);
    for (int a = 0; a < tpg.agent_count(); ++a) {
        if (trace.reached[a] != tpg.last_seq(a)) continue;
        const double goal_time = trace.reach_times[a][tpg.last_seq(a)];
        m.t_sum += goal_time;
        m.makespan = std::max(m.makespan, goal_time);
    }
    if (m.success && t_ideal > 0.0) m.suboptimality = (m.t_sum - t_ideal) / t_ideal;
    m.window_count = trace.window_count;
    for (double t : trace.window_runtimes) {
        m.planner_time_total += t;
        m.planner_time_max = std::max(m.planner_time_max, t);
    }
    return m;
}

}  // namespace ktpg
