#include "ktpg/trace_check.hpp"

#include <algorithm>
#include <unordered_map>

#include "json.hpp"
#include "ktpg/interval.hpp"

namespace ktpg {

namespace {
constexpr double kOverlapTolerance = 1e-9;
}

std::string CollisionReport::to_json() const {
    nlohmann::json j;
    j["collisions"] = nlohmann::json::array();
    for (const OccupancyOverlap& o : overlaps)
        j["collisions"].push_back({{"location", {o.location.x, o.location.y}},
                                   {"agents", {o.agent_a, o.agent_b}},
                                   {"interval", {o.from, o.to}}});
    j["order_violations"] = nlohmann::json::array();
    for (const OrderViolation& v : order_violations)
        j["order_violations"].push_back({{"edge", v.edge_id},
                                         {"source_reach", v.source_reach},
                                         {"target_reach", v.target_reach}});
    return j.dump();
}

CollisionReport check_trace(const ExecutionTrace& trace, const Tpg& tpg) {
    CollisionReport report;

    struct Occupancy {
        int agent;
        double from, to;
    };
    std::unordered_map<Cell, std::vector<Occupancy>> by_location;
    for (int a = 0; a < tpg.agent_count(); ++a) {
        for (int k = 0; k <= trace.reached[a]; ++k) {
            double leave;
            if (k < trace.reached[a]) leave = trace.reach_times[a][k + 1];
            else if (k == tpg.last_seq(a)) leave = kInfinity;
            else leave = trace.end_time;
            by_location[tpg.chain(a)[k]].push_back({a, trace.reach_times[a][k], leave});
        }
    }
    for (auto& [location, occupancies] : by_location) {
        std::sort(occupancies.begin(), occupancies.end(),
                  [](const Occupancy& x, const Occupancy& y) {
                      return std::tie(x.from, x.agent) < std::tie(y.from, y.agent);
                  });
        for (std::size_t i = 0; i < occupancies.size(); ++i) {
            for (std::size_t j = i + 1; j < occupancies.size(); ++j) {
                const Occupancy& a = occupancies[i];
                const Occupancy& b = occupancies[j];
                if (a.agent == b.agent) continue;
                const double from = std::max(a.from, b.from);
                const double to = std::min(a.to, b.to);
                if (to - from > kOverlapTolerance)
                    report.overlaps.push_back({location, a.agent, b.agent, from, to});
            }
        }
    }

    for (int e = 0; e < tpg.type2_count(); ++e) {
        const Type2Edge& edge = tpg.edge(e);
        if (trace.reached[edge.to.agent] < edge.to.seq) continue;  // target not entered yet
        const double target_reach = trace.reach_times[edge.to.agent][edge.to.seq];
        if (trace.reached[edge.from.agent] < edge.from.seq) {
            report.order_violations.push_back({e, kInfinity, target_reach});
            continue;
        }
        const double source_reach = trace.reach_times[edge.from.agent][edge.from.seq];
        if (target_reach <= source_reach + kOverlapTolerance)
            report.order_violations.push_back({e, source_reach, target_reach});
    }
    return report;
}

}  // namespace ktpg
