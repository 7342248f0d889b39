#include "ktpg/window.hpp"

#include <algorithm>
#include <stdexcept>

#include "ktpg/interval.hpp"

namespace ktpg {

void WindowConfig::validate() const {
    if (!(replan_period > 0.0)) throw std::invalid_argument("replan period must be positive");
    if (plan_depth < 1) throw std::invalid_argument("plan depth must be at least 1 vertex");
    if (enqueue_count < 1) throw std::invalid_argument("enqueue count must be at least 1");
}

std::vector<int> mark_enqueued(const Feedback& feedback, int enqueue_count, const Tpg& tpg) {
    std::vector<int> frontier(feedback.size());
    for (std::size_t a = 0; a < feedback.size(); ++a) {
        const int remaining = tpg.last_seq(static_cast<int>(a)) - feedback[a].last_reached;
        frontier[a] = feedback[a].last_reached + std::min(enqueue_count, remaining);
    }
    return frontier;
}

PlanningWindow extract_window(const Tpg& tpg, const std::vector<int>& frontiers, int plan_depth) {
    PlanningWindow window;
    window.frontier = frontiers;
    window.end_seq.resize(tpg.agent_count());
    for (int a = 0; a < tpg.agent_count(); ++a) {
        const int last = tpg.last_seq(a);
        window.end_seq[a] =
            plan_depth >= last - frontiers[a] ? last : frontiers[a] + plan_depth;
    }

    // Closure to a fixpoint; ranges only grow and are bounded by the chains.
    bool changed = true;
    while (changed) {
        changed = false;
        for (int e = 0; e < tpg.type2_count(); ++e) {
            const Type2Edge& edge = tpg.edge(e);
            if (!window.in_range(edge.to)) continue;
            if (edge.from.seq > window.end_seq[edge.from.agent]) {
                window.end_seq[edge.from.agent] = edge.from.seq;
                changed = true;
            }
        }
    }

    for (int e = 0; e < tpg.type2_count(); ++e) {
        const Type2Edge& edge = tpg.edge(e);
        if (!window.in_range(edge.to)) continue;
        if (window.in_range(edge.from)) window.edges.push_back(e);
        else window.boundary_edges.push_back(e);  // source at or behind its frontier
    }
    return window;
}

}  // namespace ktpg
