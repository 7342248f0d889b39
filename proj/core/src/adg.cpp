#include "ktpg/adg.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "ktpg/sipp.hpp"
#include "ktpg/winktpg.hpp"

namespace ktpg {

ExecutionTrace run_adg_baseline(Simulator& sim, const RobotModel& model, double replan_period,
                                double wall_clock_limit) {
    if (!(replan_period > 0.0)) throw std::invalid_argument("replan period must be positive");
    const Tpg& tpg = sim.tpg();
    const PrimitiveSet primitives(model);
    const int n = tpg.agent_count();

    std::vector<CommittedPlan> committed(n);
    std::vector<Direction> initial_orientation(n, Direction::North);
    for (int a = 0; a < n; ++a)
        if (tpg.chain_length(a) > 1)
            initial_orientation[a] = step_direction(tpg.chain(a)[0], tpg.chain(a)[1]);

    // unfinished Type-2 predecessor counts per flat vertex id
    std::vector<int> unfinished_in(tpg.vertex_count(), 0);
    for (const Type2Edge& e : tpg.type2_edges()) ++unfinished_in[tpg.vertex_id(e.to)];

    std::vector<int> enq_end(n, 0);     // last enqueued (or finished) seq per agent
    std::vector<int> observed(n, 0);    // last arrival already processed here
    std::vector<double> replan_at(n, kInfinity);

    const auto quantize = [&](double t) {
        return std::ceil(t / replan_period - 1e-12) * replan_period;
    };
    const auto extend_enqueued = [&](int agent, double t) {
        int& end = enq_end[agent];
        const int last = tpg.last_seq(agent);
        bool grew = false;
        while (end < last && unfinished_in[tpg.vertex_id({agent, end + 1})] == 0) {
            ++end;
            grew = true;
        }
        if (grew && end > committed[agent].coverage)
            replan_at[agent] = std::min(replan_at[agent], quantize(t));
    };
    const auto process_arrivals = [&](double t) {
        for (int a = 0; a < n; ++a) {
            while (observed[a] < sim.reached_seq(a)) {
                ++observed[a];
                for (int e : tpg.outgoing_type2({a, observed[a]})) {
                    const TpgVertexRef target = tpg.edge(e).to;
                    --unfinished_in[tpg.vertex_id(target)];
                    extend_enqueued(target.agent, t);
                }
            }
        }
    };

    const auto wall_start = std::chrono::steady_clock::now();
    std::vector<double> replan_runtimes;

    for (int a = 0; a < n; ++a) extend_enqueued(a, 0.0);

    while (true) {
        double next_replan = kInfinity;
        for (int a = 0; a < n; ++a) next_replan = std::min(next_replan, replan_at[a]);
        const std::optional<double> next_event = sim.next_event_time();

        if (next_replan == kInfinity && !next_event) {
            if (sim.all_done()) break;
            throw std::logic_error("ADG deadlock: no pending motion and nothing enqueued");
        }

        if (next_event && *next_event <= next_replan) {
            sim.advance_until(*next_event);
            process_arrivals(*next_event);
            continue;
        }

        sim.advance_until(next_replan);
        process_arrivals(next_replan);
        const auto t0 = std::chrono::steady_clock::now();
        for (int a = 0; a < n; ++a) {
            if (replan_at[a] > next_replan) continue;
            replan_at[a] = kInfinity;
            if (enq_end[a] <= committed[a].coverage) continue;

            // Continue from the end of the in-flight primitive (the next
            // committed at-rest-or-boundary vertex), never mid-motion.
            const int from =
                committed[a].boundary_at_or_after(std::min(sim.reached_seq(a) + 1,
                                                           committed[a].coverage));
            double start_time = sim.reach_time(a, sim.reached_seq(a)) +
                                committed[a].nominal_delta(sim.reached_seq(a), from);
            if (sim.idle(a) && sim.reached_seq(a) == from)
                start_time = std::max(start_time, next_replan);

            std::vector<Cell> chain;
            for (int k = from; k <= enq_end[a]; ++k) chain.push_back(tpg.location({a, k}));
            const std::vector<ReservedInterval> free_bounds(chain.size());
            KinematicState st;
            st.time = start_time;
            st.speed = committed[a].speed[from];
            st.orientation = arrival_direction(tpg.chain(a), from, initial_orientation[a]);
            const auto profile =
                plan_speed_profile(chain, free_bounds, st, primitives, a, from);
            if (!profile)
                throw std::logic_error("ADG stop-at-enqueued plan infeasible for agent " +
                                       std::to_string(a));
            committed[a].splice(*profile);
            sim.dispatch(a, from, committed[a].steps_after(from), next_replan);
        }
        replan_runtimes.push_back(
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
        if (std::chrono::duration<double>(std::chrono::steady_clock::now() - wall_start).count() >
            wall_clock_limit)
            throw TimeLimitExceeded("ADG wall-clock limit exceeded");
    }

    ExecutionTrace trace = sim.take_trace();
    trace.window_count = static_cast<int>(replan_runtimes.size());
    trace.window_runtimes = std::move(replan_runtimes);
    return trace;
}

}  // namespace ktpg
