#pragma once

#include <vector>

#include "ktpg/tpg.hpp"

namespace ktpg {

struct WindowConfig {
    double replan_period = 10.0;  // t_e, seconds; kInfinity = plan once
    int plan_depth = 20;          // t_p, vertices per agent; INT_MAX = whole chain
    int enqueue_count = 1;        // N_E

    void validate() const;
};

struct AgentFeedback {
    int last_reached = 0;
    double reach_time = 0.0;
};
using Feedback = std::vector<AgentFeedback>;

// Enqueued frontier per agent: the last reported vertex plus at most
// `enqueue_count` further vertices, clamped at the goal. Agents keep their
// previous profile through the frontier.
std::vector<int> mark_enqueued(const Feedback& feedback, int enqueue_count, const Tpg& tpg);

// Sub-TPG selected for one replanning round. Agent a's plannable range is
// (frontier[a], end_seq[a]]; frontier[a] itself is the committed start vertex.
struct PlanningWindow {
    std::vector<int> frontier;
    std::vector<int> end_seq;
    std::vector<int> edges;           // Type-2 edges with both endpoints in ranges
    std::vector<int> boundary_edges;  // target in a range, source at or behind its frontier

    bool in_range(TpgVertexRef v) const {
        return v.seq > frontier[v.agent] && v.seq <= end_seq[v.agent];
    }
};

// Takes the next `plan_depth` vertices past each frontier, then closes the
// window: while an in-window vertex has an incoming Type-2 edge whose source
// lies beyond the source agent's range, that range is extended to cover it.
// Edges from at-or-behind a frontier are reported as boundary edges.
PlanningWindow extract_window(const Tpg& tpg, const std::vector<int>& frontiers, int plan_depth);

}  // namespace ktpg
