#include "ktpg/winktpg.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "ktpg/normal.hpp"
#include "ktpg/primitives.hpp"

namespace ktpg {

void CommittedPlan::splice(const SpeedProfile& profile) {
    const int from = profile.start_seq;
    if (from > coverage) throw std::logic_error("splice beyond committed coverage");
    if (std::abs(nominal_reach[from] - profile.start_time()) > 1e-6)
        throw std::logic_error("splice start time mismatch");
    nominal_reach.resize(from + 1);
    speed.resize(from + 1);
    boundary.resize(from + 1);
    steps.resize(from + 1);
    for (int k = from + 1; k <= profile.end_seq(); ++k) {
        nominal_reach.push_back(profile.reach_time(k));
        speed.push_back(profile.speed_at(k));
        boundary.push_back(profile.boundary_at(k));
    }
    for (const StepTiming& st : profile.steps())
        steps.push_back(DispatchStep{st.to_seq, st.dwell, st.move});
    coverage = profile.end_seq();
}

SpeedProfile CommittedPlan::suffix_profile(int agent, int from_seq) const {
    SpeedProfile out;
    out.agent_id = agent;
    out.start_seq = from_seq;
    for (int k = from_seq; k <= coverage; ++k) {
        out.vertex_times.push_back(nominal_reach[k]);
        out.vertex_speeds.push_back(speed[k]);
        out.vertex_is_boundary.push_back(boundary[k]);
    }
    for (int k = from_seq + 1; k <= coverage; ++k) {
        ProfileSegment seg;
        seg.kind = PrimitiveKind::Move;
        seg.start_time = nominal_reach[k] - steps[k].move;
        seg.duration = steps[k].move;
        seg.from_seq = k - 1;
        seg.cells = 1;
        seg.entry_speed = speed[k - 1];
        seg.exit_speed = speed[k];
        seg.cell_offsets = {steps[k].move};
        out.segments.push_back(seg);
    }
    return out;
}

std::vector<DispatchStep> CommittedPlan::steps_after(int from_seq) const {
    return {steps.begin() + from_seq + 1, steps.end()};
}

int CommittedPlan::boundary_at_or_after(int seq) const {
    while (!boundary[seq]) ++seq;
    return seq;
}

ReplanResult replan_window(const Tpg& tpg, const PrimitiveSet& primitives,
                           const PlanningWindow& window, const Feedback& feedback,
                           const std::vector<CommittedPlan>& committed,
                           const std::vector<bool>& idle_at_frontier,
                           const std::optional<UncertaintyModel>& uncertainty, double now,
                           const std::vector<Direction>& initial_orientation) {
    const int n = tpg.agent_count();
    std::vector<AgentContext> contexts(n);
    for (int a = 0; a < n; ++a) {
        AgentContext& ctx = contexts[a];
        ctx.start_seq = window.frontier[a];
        ctx.end_seq = std::max(window.end_seq[a], ctx.start_seq);
        ctx.start.time =
            feedback[a].reach_time + committed[a].nominal_delta(feedback[a].last_reached, ctx.start_seq);
        if (idle_at_frontier[a]) ctx.start.time = std::max(ctx.start.time, now);
        ctx.start.speed = committed[a].speed[ctx.start_seq];
        ctx.start.orientation = arrival_direction(tpg.chain(a), ctx.start_seq, initial_orientation[a]);
        if (uncertainty)
            ctx.start_variance = uncertainty->variance_for(
                a, (ctx.start_seq - feedback[a].last_reached) * kCellSize);
    }

    const double z = uncertainty ? normal_quantile(uncertainty->p_threshold) : 0.0;
    std::vector<PresetBound> preset;
    for (int e : window.boundary_edges) {
        const Type2Edge& edge = tpg.edge(e);
        const int j = edge.from.agent;
        if (edge.from.seq <= feedback[j].last_reached) continue;  // executed: dispatch postdates it
        const double mu_src =
            feedback[j].reach_time + committed[j].nominal_delta(feedback[j].last_reached, edge.from.seq);
        double margin = 0.0;
        if (uncertainty) {
            const double var_src =
                uncertainty->variance_for(j, (edge.from.seq - feedback[j].last_reached) * kCellSize);
            const double var_tgt =
                contexts[edge.to.agent].start_variance +
                uncertainty->variance_for(edge.to.agent,
                                          (edge.to.seq - contexts[edge.to.agent].start_seq) * kCellSize);
            margin = z * std::sqrt(var_src + var_tgt);
        }
        preset.push_back({edge.to, mu_src + margin + kIntervalGap});
    }

    std::vector<std::optional<SpeedProfile>> fallbacks(n);
    for (int a = 0; a < n; ++a)
        if (committed[a].coverage > window.frontier[a])
            fallbacks[a] = committed[a].suffix_profile(a, window.frontier[a]);

    KtpgState state(tpg, primitives, std::move(contexts), uncertainty, window.edges,
                    std::move(preset), std::move(fallbacks));
    state.run();

    // Dispatching a profile that leaves its reserved intervals would send the
    // agent through an unreserved vertex; only explicit fallbacks may.
    for (int a = 0; a < n; ++a) {
        if (state.used_fallback(a)) continue;
        const auto& profile = state.profiles()[a];
        for (int k = window.frontier[a]; k <= std::min(profile->end_seq(), window.end_seq[a]); ++k) {
            if (!state.interval({a, k}).contains(profile->reach_time(k)))
                throw std::logic_error("profile leaves reserved interval at agent " +
                                       std::to_string(a) + " seq " + std::to_string(k));
        }
    }

    ReplanResult result;
    result.profiles = state.profiles();
    result.stats = state.stats();
    return result;
}

ExecutionTrace run_execution_loop(Simulator& sim, const RobotModel& model,
                                  const ExecutionOptions& options) {
    options.window.validate();
    if (options.uncertainty) options.uncertainty->validate();
    const Tpg& tpg = sim.tpg();
    const PrimitiveSet primitives(model);
    const int n = tpg.agent_count();

    std::vector<CommittedPlan> committed(n);
    std::vector<Direction> initial_orientation(n, Direction::North);
    for (int a = 0; a < n; ++a)
        if (tpg.chain_length(a) > 1)
            initial_orientation[a] = step_direction(tpg.chain(a)[0], tpg.chain(a)[1]);

    const auto wall_start = std::chrono::steady_clock::now();
    std::vector<double> window_runtimes;
    int window_count = 0;
    int fallback_plans = 0;
    int stalled_windows = 0;

    while (!sim.all_done()) {
        Feedback feedback(n);
        for (int a = 0; a < n; ++a)
            feedback[a] = {sim.reached_seq(a), sim.reach_time(a, sim.reached_seq(a))};

        std::vector<int> frontier = mark_enqueued(feedback, options.window.enqueue_count, tpg);
        std::vector<bool> idle(n, false);
        for (int a = 0; a < n; ++a) {
            frontier[a] = std::min(frontier[a], committed[a].coverage);
            frontier[a] = committed[a].boundary_at_or_after(frontier[a]);
            idle[a] = sim.idle(a) && sim.reached_seq(a) == frontier[a];
        }

        const PlanningWindow window = extract_window(tpg, frontier, options.window.plan_depth);

        const auto t0 = std::chrono::steady_clock::now();
        const ReplanResult replan = replan_window(tpg, primitives, window, feedback, committed,
                                                  idle, options.uncertainty, sim.now(),
                                                  initial_orientation);
        window_runtimes.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
        fallback_plans += replan.stats.fallback_plans;
        ++window_count;

        for (int a = 0; a < n; ++a) {
            const auto& profile = replan.profiles[a];
            if (!profile || profile->end_seq() <= frontier[a]) continue;
            committed[a].splice(*profile);
            sim.dispatch(a, frontier[a], committed[a].steps_after(frontier[a]), sim.now());
        }

        if (std::chrono::duration<double>(std::chrono::steady_clock::now() - wall_start).count() >
            options.wall_clock_limit)
            throw TimeLimitExceeded("planning wall-clock limit exceeded");

        std::vector<int> before(n);
        for (int a = 0; a < n; ++a) before[a] = sim.reached_seq(a);
        if (options.window.replan_period == kInfinity) {
            sim.advance_all();
        } else {
            sim.advance_until(window_count * options.window.replan_period);
        }

        bool any_progress = false;
        bool any_pending = false;
        for (int a = 0; a < n; ++a) {
            if (sim.reached_seq(a) > before[a]) any_progress = true;
            if (!sim.idle(a)) any_pending = true;
        }
        if (!any_progress && !any_pending && !sim.all_done()) {
            if (++stalled_windows >= 3)
                throw std::logic_error("execution deadlock: no progress over 3 windows");
        } else {
            stalled_windows = 0;
        }
    }

    ExecutionTrace trace = sim.take_trace();
    trace.window_count = window_count;
    trace.window_runtimes = std::move(window_runtimes);
    trace.fallback_plans = fallback_plans;
    return trace;
}

}  // namespace ktpg
