#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ktpg/interval.hpp"
#include "ktpg/profile.hpp"
#include "ktpg/sipp.hpp"
#include "ktpg/tpg.hpp"
#include "ktpg/uncertainty.hpp"

namespace ktpg {

enum class EdgeStatus { Conflicting, Satisfied };

// Per-agent planning context of one kTPG run: the plannable chain range and
// the kinematic state at its first vertex. Full runs use the whole chain from
// rest at t = 0; windowed runs use the window range from the committed
// frontier state.
struct AgentContext {
    int start_seq = 0;
    int end_seq = 0;
    KinematicState start;
    double start_variance = 0.0;  // reach-time variance at start_seq, s^2
};

// Lower bound imposed on a vertex by a precedence resolved outside the run
// (the source side is already committed or executed).
struct PresetBound {
    TpgVertexRef vertex;
    double lower = 0.0;
};

struct KtpgRunStats {
    int iterations = 0;       // edge-satisfying speed-profile updates
    int planner_calls = 0;    // includes the final full-coverage passes
    int fallback_plans = 0;   // previous-profile fallbacks (noise-induced)
    int vertex_count = 0;
    int edge_count = 0;
};

// Mutable state of the iterative kTPG / kTPGu algorithm: the reserved
// interval table, Type-2 edge statuses, and committed per-agent profiles.
class KtpgState {
  public:
    // `active_edges` lists the Type-2 edge ids participating in this run;
    // their endpoints must lie within the agents' ranges. `fallbacks` holds
    // each agent's previously committed profile (windowed runs), used as the
    // feasibility witness when noise-shifted bounds defeat optimal planning.
    KtpgState(const Tpg& tpg, const PrimitiveSet& primitives, std::vector<AgentContext> agents,
              std::optional<UncertaintyModel> uncertainty, std::vector<int> active_edges,
              std::vector<PresetBound> preset_lower = {},
              std::vector<std::optional<SpeedProfile>> fallbacks = {});

    const ReservedInterval& interval(TpgVertexRef v) const;
    EdgeStatus edge_status(int edge_id) const;
    int conflicting_count() const { return conflicting_remaining_; }
    bool done() const { return conflicting_remaining_ == 0; }

    // Maximal prefix [start_seq, U] of the agent's range with no incoming
    // conflicting edge; U = start_seq - 1 encodes an empty prefix.
    std::pair<int, int> unlocked_prefix(int agent) const;

    // Agent whose unlocked prefix originates the most conflicting edges; ties
    // break toward the lowest id. Requires a conflicting edge to exist.
    int select_agent() const;

    // One iteration: plan the selected agent's unlocked prefix and use the
    // resulting leave times as split points for every conflicting edge out of
    // it. Returns the number of edges satisfied.
    int step();

    // Runs iterations until every active edge is satisfied, then plans final
    // full-range profiles for all agents. Throws on planner infeasibility
    // without a fallback and on an iteration-bound violation.
    void run();

    void satisfy_edges(int agent, const SpeedProfile& profile);
    double margin_for_edge(int edge_id) const;
    double sigma2(TpgVertexRef v) const;

    const std::vector<std::optional<SpeedProfile>>& profiles() const { return committed_; }
    bool used_fallback(int agent) const { return fallback_used_[agent]; }
    const KtpgRunStats& stats() const { return stats_; }
    const Tpg& tpg() const { return tpg_; }
    const AgentContext& context(int agent) const { return agents_[agent]; }

    std::string state_json() const;

  private:
    std::optional<SpeedProfile> plan_range(int agent, int up_to_seq) const;
    std::optional<SpeedProfile> fallback_plan(int agent, int up_to_seq);
    void commit_final_profiles();

    const Tpg& tpg_;
    const PrimitiveSet& primitives_;
    std::vector<AgentContext> agents_;
    std::optional<UncertaintyModel> uncertainty_;
    double z_threshold_ = 0.0;
    std::vector<int> active_edges_;
    std::vector<EdgeStatus> status_;          // per Type-2 edge id (inactive = Satisfied)
    std::vector<bool> edge_active_;
    int conflicting_remaining_ = 0;
    std::vector<ReservedInterval> intervals_;  // per flat vertex id
    std::vector<int> conflicting_in_;          // per flat vertex id
    std::vector<int> prefix_end_;              // cached, monotone
    std::vector<std::optional<SpeedProfile>> committed_;
    std::vector<std::optional<SpeedProfile>> fallbacks_;
    std::vector<bool> fallback_used_;
    KtpgRunStats stats_;
};

// Full-TPG convenience run: all agents from rest at t = 0, oriented toward
// their first move.
std::vector<SpeedProfile> run_ktpg(const Tpg& tpg, const RobotModel& model,
                                   const std::optional<UncertaintyModel>& uncertainty = {},
                                   KtpgRunStats* stats_out = nullptr);

}  // namespace ktpg
