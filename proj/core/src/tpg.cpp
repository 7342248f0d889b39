#include "ktpg/tpg.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <unordered_map>

namespace ktpg {

Tpg::Tpg(std::vector<std::vector<Cell>> chains, std::vector<Type2Edge> edges)
    : chains_(std::move(chains)), edges_(std::move(edges)) {
    chain_offsets_.reserve(chains_.size() + 1);
    chain_offsets_.push_back(0);
    for (const auto& chain : chains_) {
        if (chain.empty()) throw std::invalid_argument("empty agent chain");
        chain_offsets_.push_back(chain_offsets_.back() + static_cast<int>(chain.size()));
    }
    vertex_count_ = chain_offsets_.back();

    incoming_.resize(vertex_count_);
    outgoing_.resize(vertex_count_);
    for (int e = 0; e < static_cast<int>(edges_.size()); ++e) {
        const Type2Edge& edge = edges_[e];
        if (edge.from.agent == edge.to.agent)
            throw std::invalid_argument("Type-2 edge must connect distinct agents");
        outgoing_[vertex_id(edge.from)].push_back(e);
        incoming_[vertex_id(edge.to)].push_back(e);
    }
    auto by_from = [this](int a, int b) { return edges_[a].from < edges_[b].from; };
    auto by_to = [this](int a, int b) { return edges_[a].to < edges_[b].to; };
    for (auto& list : incoming_) std::sort(list.begin(), list.end(), by_from);
    for (auto& list : outgoing_) std::sort(list.begin(), list.end(), by_to);
}

int Tpg::vertex_id(TpgVertexRef v) const {
    if (v.agent < 0 || v.agent >= agent_count() || v.seq < 0 || v.seq > last_seq(v.agent))
        throw std::out_of_range("unknown TPG vertex a" + std::to_string(v.agent) + ":" +
                                std::to_string(v.seq));
    return chain_offsets_[v.agent] + v.seq;
}

TpgVertexRef Tpg::vertex_ref(int id) const {
    const auto it = std::upper_bound(chain_offsets_.begin(), chain_offsets_.end(), id);
    const int agent = static_cast<int>(it - chain_offsets_.begin()) - 1;
    return TpgVertexRef{agent, id - chain_offsets_[agent]};
}

const std::vector<int>& Tpg::incoming_type2(TpgVertexRef v) const { return incoming_[vertex_id(v)]; }
const std::vector<int>& Tpg::outgoing_type2(TpgVertexRef v) const { return outgoing_[vertex_id(v)]; }

std::string Tpg::to_dot() const {
    std::ostringstream out;
    out << "digraph tpg {\n";
    for (int a = 0; a < agent_count(); ++a) {
        for (int k = 0; k < chain_length(a); ++k) {
            const Cell& c = chains_[a][k];
            out << "  v" << a << "_" << k << " [label=\"a" << a << ":" << k << "@(" << c.x << ","
                << c.y << ")\"];\n";
            if (k > 0) out << "  v" << a << "_" << k - 1 << " -> v" << a << "_" << k << ";\n";
        }
    }
    for (const Type2Edge& e : edges_) {
        out << "  v" << e.from.agent << "_" << e.from.seq << " -> v" << e.to.agent << "_" << e.to.seq
            << " [style=dashed, label=\"(" << e.shared_location.x << "," << e.shared_location.y
            << ")\"];\n";
    }
    out << "}\n";
    return out.str();
}

Tpg build_tpg(const MapfPlan& plan) {
    const ValidationReport report = validate_plan(plan);
    if (!report.ok())
        throw std::invalid_argument("cannot build TPG from colliding plan: " + report.summary());

    // A visit: one maximal run of an agent at a location, keyed by its first
    // timestep. Goal visits extend to infinity (agents park).
    struct Visit {
        int agent;
        int seq;
        int arrive_t;
    };

    std::vector<std::vector<Cell>> chains(plan.paths.size());
    std::unordered_map<Cell, std::vector<Visit>> visits_by_location;

    for (int a = 0; a < plan.agent_count(); ++a) {
        const TimedPath& path = plan.paths[a];
        int seq = 0;
        for (int t = 0; t < static_cast<int>(path.cells.size()); ++t) {
            if (t > 0 && path.cells[t] == path.cells[t - 1]) continue;  // collapse waits
            chains[a].push_back(path.cells[t]);
            visits_by_location[path.cells[t]].push_back({a, seq, t});
            ++seq;
        }
    }

    std::vector<Type2Edge> edges;
    for (auto& [location, visits] : visits_by_location) {
        std::sort(visits.begin(), visits.end(),
                  [](const Visit& u, const Visit& v) { return u.arrive_t < v.arrive_t; });
        for (std::size_t i = 0; i < visits.size(); ++i) {
            for (std::size_t j = i + 1; j < visits.size(); ++j) {
                const Visit& earlier = visits[i];
                const Visit& later = visits[j];
                if (earlier.agent == later.agent) continue;
                // A collision-free plan guarantees the earlier visitor moved on.
                if (earlier.seq + 1 >= static_cast<int>(chains[earlier.agent].size()))
                    throw std::logic_error("earlier visitor parked at a later-shared location");
                edges.push_back({TpgVertexRef{earlier.agent, earlier.seq + 1},
                                 TpgVertexRef{later.agent, later.seq}, location});
            }
        }
    }
    std::sort(edges.begin(), edges.end(), [](const Type2Edge& a, const Type2Edge& b) {
        return std::tie(a.to, a.from) < std::tie(b.to, b.from);
    });
    return Tpg(std::move(chains), std::move(edges));
}

bool assert_acyclic(const Tpg& tpg) {
    const int n = tpg.vertex_count();
    std::vector<int> in_degree(n, 0);
    for (int a = 0; a < tpg.agent_count(); ++a)
        for (int k = 1; k < tpg.chain_length(a); ++k) ++in_degree[tpg.vertex_id({a, k})];
    for (const Type2Edge& e : tpg.type2_edges()) ++in_degree[tpg.vertex_id(e.to)];

    std::deque<int> ready;
    for (int v = 0; v < n; ++v)
        if (in_degree[v] == 0) ready.push_back(v);

    int visited = 0;
    while (!ready.empty()) {
        const int v = ready.front();
        ready.pop_front();
        ++visited;
        const TpgVertexRef ref = tpg.vertex_ref(v);
        if (ref.seq + 1 <= tpg.last_seq(ref.agent)) {
            const int next = tpg.vertex_id({ref.agent, ref.seq + 1});
            if (--in_degree[next] == 0) ready.push_back(next);
        }
        for (int e : tpg.outgoing_type2(ref)) {
            const int to = tpg.vertex_id(tpg.edge(e).to);
            if (--in_degree[to] == 0) ready.push_back(to);
        }
    }
    return visited == n;
}

}  // namespace ktpg
