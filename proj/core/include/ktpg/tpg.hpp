#pragma once

#include <string>
#include <vector>

#include "ktpg/plan.hpp"
#include "ktpg/types.hpp"

namespace ktpg {

// Vertex v_i^k: the k-th location agent i visits (waits collapsed).
struct TpgVertexRef {
    int agent = 0;
    int seq = 0;

    bool operator==(const TpgVertexRef&) const = default;
    auto operator<=>(const TpgVertexRef&) const = default;
};

// Cross-agent precedence: the target may be entered only after the source
// agent has reached `from` (i.e. left the shared location loc(from.seq - 1)).
struct Type2Edge {
    TpgVertexRef from;  // v_j^{s+1}, j the earlier visitor
    TpgVertexRef to;    // v_i^k, i the later visitor
    Cell shared_location;
};

// Temporal plan graph: per-agent vertex chains (Type-1 edges are the implicit
// chain links) plus Type-2 precedence edges between visits of shared
// locations. Immutable after construction.
class Tpg {
  public:
    Tpg(std::vector<std::vector<Cell>> chains, std::vector<Type2Edge> edges);

    int agent_count() const { return static_cast<int>(chains_.size()); }
    const std::vector<Cell>& chain(int agent) const { return chains_[agent]; }
    int chain_length(int agent) const { return static_cast<int>(chains_[agent].size()); }
    int last_seq(int agent) const { return chain_length(agent) - 1; }
    const Cell& location(TpgVertexRef v) const { return chains_[v.agent][v.seq]; }

    int vertex_count() const { return vertex_count_; }
    int vertex_id(TpgVertexRef v) const;  // flat id in [0, vertex_count)
    TpgVertexRef vertex_ref(int id) const;

    const std::vector<Type2Edge>& type2_edges() const { return edges_; }
    int type2_count() const { return static_cast<int>(edges_.size()); }
    const Type2Edge& edge(int edge_id) const { return edges_[edge_id]; }

    // Edge-id adjacency, ordered by (agent, seq) of the opposite endpoint.
    const std::vector<int>& incoming_type2(TpgVertexRef v) const;
    const std::vector<int>& outgoing_type2(TpgVertexRef v) const;

    std::string to_dot() const;

  private:
    std::vector<std::vector<Cell>> chains_;
    std::vector<Type2Edge> edges_;
    std::vector<int> chain_offsets_;
    int vertex_count_ = 0;
    std::vector<std::vector<int>> incoming_;  // per flat vertex id
    std::vector<std::vector<int>> outgoing_;
};

// Builds the TPG from a collision-free plan: collapses waits into vertex
// chains and adds one Type-2 edge for every ordered pair of same-location
// visits by distinct agents, oriented by the plan's timestep order. Rejects
// plans that fail validate_plan.
Tpg build_tpg(const MapfPlan& plan);

// True iff the graph over Type-1 and Type-2 edges has a topological order.
bool assert_acyclic(const Tpg& tpg);

}  // namespace ktpg
