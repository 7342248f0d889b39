#pragma once

#include <optional>
#include <vector>

#include "ktpg/ktpg.hpp"
#include "ktpg/noise.hpp"
#include "ktpg/simulator.hpp"
#include "ktpg/window.hpp"

namespace ktpg {

struct TimeLimitExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Rolling record of the motion each agent has been told to execute, indexed
// by chain seq. `steps[k]` realizes the advance into vertex k.
struct CommittedPlan {
    int coverage = 0;
    std::vector<double> nominal_reach = {0.0};
    std::vector<double> speed = {0.0};
    std::vector<bool> boundary = {true};
    std::vector<DispatchStep> steps = {DispatchStep{}};

    // Replaces everything after profile.start_seq with the new profile.
    void splice(const SpeedProfile& profile);
    // The committed tail from `from_seq` as a profile (with per-move segments
    // synthesized from the stored step timings).
    SpeedProfile suffix_profile(int agent, int from_seq) const;
    std::vector<DispatchStep> steps_after(int from_seq) const;
    double nominal_delta(int from_seq, int to_seq) const {
        return nominal_reach[to_seq] - nominal_reach[from_seq];
    }
    int boundary_at_or_after(int seq) const;
};

struct ReplanResult {
    std::vector<std::optional<SpeedProfile>> profiles;
    KtpgRunStats stats;
};

// One kTPGu round over a planning window. Reach-time beliefs are re-anchored
// at each agent's last report; boundary edges whose source is committed but
// unexecuted become margin-padded preset lower bounds, and edges whose source
// was already executed are dropped (the dispatch time already postdates them).
ReplanResult replan_window(const Tpg& tpg, const PrimitiveSet& primitives,
                           const PlanningWindow& window, const Feedback& feedback,
                           const std::vector<CommittedPlan>& committed,
                           const std::vector<bool>& idle_at_frontier,
                           const std::optional<UncertaintyModel>& uncertainty, double now,
                           const std::vector<Direction>& initial_orientation);

struct ExecutionOptions {
    WindowConfig window;
    std::optional<UncertaintyModel> uncertainty;
    double wall_clock_limit = 300.0;  // planner budget, seconds
};

// The WinkTPG loop: collect feedback, mark enqueued vertices, extract a
// closed window, replan it, dispatch, advance the simulator by the replan
// period; repeats until every agent reports its goal.
ExecutionTrace run_execution_loop(Simulator& sim, const RobotModel& model,
                                  const ExecutionOptions& options);

}  // namespace ktpg
