#include "ktpg/ktpg.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"
#include "ktpg/normal.hpp"

namespace ktpg {

KtpgState::KtpgState(const Tpg& tpg, const PrimitiveSet& primitives,
                     std::vector<AgentContext> agents, std::optional<UncertaintyModel> uncertainty,
                     std::vector<int> active_edges, std::vector<PresetBound> preset_lower,
                     std::vector<std::optional<SpeedProfile>> fallbacks)
    : tpg_(tpg),
      primitives_(primitives),
      agents_(std::move(agents)),
      uncertainty_(std::move(uncertainty)),
      active_edges_(std::move(active_edges)),
      fallbacks_(std::move(fallbacks)) {
    if (static_cast<int>(agents_.size()) != tpg_.agent_count())
        throw std::invalid_argument("one agent context per TPG agent required");
    if (!assert_acyclic(tpg_)) throw std::invalid_argument("TPG has a precedence cycle");
    if (uncertainty_) {
        uncertainty_->validate();
        if (static_cast<int>(uncertainty_->agent_variance_per_meter.size()) != tpg_.agent_count())
            throw std::invalid_argument("one noise parameter per agent required");
        z_threshold_ = normal_quantile(uncertainty_->p_threshold);
    }
    if (fallbacks_.empty()) fallbacks_.resize(agents_.size());
    fallback_used_.assign(agents_.size(), false);

    intervals_.assign(tpg_.vertex_count(), ReservedInterval{});
    conflicting_in_.assign(tpg_.vertex_count(), 0);
    status_.assign(tpg_.type2_count(), EdgeStatus::Satisfied);
    edge_active_.assign(tpg_.type2_count(), false);
    committed_.resize(agents_.size());

    for (const PresetBound& b : preset_lower)
        intervals_[tpg_.vertex_id(b.vertex)].intersect_lower(b.lower);

    for (int e : active_edges_) {
        const Type2Edge& edge = tpg_.edge(e);
        const AgentContext& from_ctx = agents_[edge.from.agent];
        const AgentContext& to_ctx = agents_[edge.to.agent];
        if (edge.from.seq < from_ctx.start_seq || edge.from.seq > from_ctx.end_seq ||
            edge.to.seq < to_ctx.start_seq || edge.to.seq > to_ctx.end_seq)
            throw std::invalid_argument("active edge endpoint outside agent range");
        edge_active_[e] = true;
        status_[e] = EdgeStatus::Conflicting;
        ++conflicting_in_[tpg_.vertex_id(edge.to)];
        ++conflicting_remaining_;
    }

    prefix_end_.resize(agents_.size());
    for (int a = 0; a < static_cast<int>(agents_.size()); ++a) {
        int u = agents_[a].start_seq - 1;
        while (u + 1 <= agents_[a].end_seq && conflicting_in_[tpg_.vertex_id({a, u + 1})] == 0) ++u;
        prefix_end_[a] = u;
    }

    stats_.edge_count = static_cast<int>(active_edges_.size());
    stats_.vertex_count = 0;
    for (const AgentContext& ctx : agents_) stats_.vertex_count += ctx.end_seq - ctx.start_seq + 1;
}

const ReservedInterval& KtpgState::interval(TpgVertexRef v) const {
    return intervals_[tpg_.vertex_id(v)];
}

EdgeStatus KtpgState::edge_status(int edge_id) const { return status_[edge_id]; }

std::pair<int, int> KtpgState::unlocked_prefix(int agent) const {
    return {agents_[agent].start_seq, prefix_end_[agent]};
}

double KtpgState::sigma2(TpgVertexRef v) const {
    const AgentContext& ctx = agents_[v.agent];
    if (!uncertainty_) return 0.0;
    return ctx.start_variance +
           uncertainty_->variance_for(v.agent, (v.seq - ctx.start_seq) * kCellSize);
}

double KtpgState::margin_for_edge(int edge_id) const {
    if (!uncertainty_) return 0.0;
    const Type2Edge& edge = tpg_.edge(edge_id);
    return z_threshold_ * std::sqrt(sigma2(edge.from) + sigma2(edge.to));
}

int KtpgState::select_agent() const {
    std::vector<int> counts(agents_.size(), 0);
    for (int e : active_edges_) {
        if (status_[e] != EdgeStatus::Conflicting) continue;
        const Type2Edge& edge = tpg_.edge(e);
        if (edge.from.seq >= agents_[edge.from.agent].start_seq &&
            edge.from.seq <= prefix_end_[edge.from.agent])
            ++counts[edge.from.agent];
    }
    int best = -1;
    for (int a = 0; a < static_cast<int>(counts.size()); ++a)
        if (counts[a] > 0 && (best < 0 || counts[a] > counts[best])) best = a;
    if (best < 0)
        throw std::logic_error("no agent can satisfy a conflicting edge (progress violation)");
    return best;
}

std::optional<SpeedProfile> KtpgState::plan_range(int agent, int up_to_seq) const {
    const AgentContext& ctx = agents_[agent];
    std::vector<Cell> chain;
    std::vector<ReservedInterval> bounds;
    chain.reserve(up_to_seq - ctx.start_seq + 1);
    for (int k = ctx.start_seq; k <= up_to_seq; ++k) {
        chain.push_back(tpg_.location({agent, k}));
        bounds.push_back(intervals_[tpg_.vertex_id({agent, k})]);
    }
    return plan_speed_profile(chain, bounds, ctx.start, primitives_, agent, ctx.start_seq);
}

// Theorem-2-style witness: reuse the previously committed profile (its times
// already honor every bound that existed when it was planned) and extend it
// from rest if the requested range reaches further.
std::optional<SpeedProfile> KtpgState::fallback_plan(int agent, int up_to_seq) {
    const std::optional<SpeedProfile>& fb = fallbacks_[agent];
    const AgentContext& ctx = agents_[agent];
    if (!fb || fb->start_seq != ctx.start_seq || fb->end_seq() < ctx.start_seq) return std::nullopt;
    ++stats_.fallback_plans;
    fallback_used_[agent] = true;

    SpeedProfile out;
    out.agent_id = agent;
    out.start_seq = ctx.start_seq;
    // Never cut a moving tail: extend to the next at-rest vertex of the
    // fallback (its end is always at rest).
    int keep = std::min(up_to_seq, fb->end_seq());
    while (fb->speed_at(keep) != 0.0) ++keep;
    for (int k = ctx.start_seq; k <= keep; ++k) {
        out.vertex_times.push_back(fb->reach_time(k));
        out.vertex_speeds.push_back(fb->speed_at(k));
        out.vertex_is_boundary.push_back(fb->boundary_at(k));
    }
    for (const ProfileSegment& seg : fb->segments)
        if (seg.cells > 0 ? seg.from_seq + seg.cells <= keep : seg.from_seq < keep)
            out.segments.push_back(seg);

    if (up_to_seq > keep) {
        if (fb->speed_at(keep) != 0.0)
            throw std::logic_error("fallback profile does not end at rest");
        std::vector<Cell> chain;
        std::vector<ReservedInterval> bounds;
        for (int k = keep; k <= up_to_seq; ++k) {
            chain.push_back(tpg_.location({agent, k}));
            bounds.push_back(intervals_[tpg_.vertex_id({agent, k})]);
        }
        KinematicState st;
        st.time = fb->reach_time(keep);
        st.speed = 0.0;
        st.orientation =
            arrival_direction(tpg_.chain(agent), keep, ctx.start.orientation);
        bounds[0].lower = std::min(bounds[0].lower, st.time);  // arrival is already committed
        auto ext = plan_speed_profile(chain, bounds, st, primitives_, agent, keep);
        if (!ext) return std::nullopt;
        for (int k = keep + 1; k <= up_to_seq; ++k) {
            out.vertex_times.push_back(ext->reach_time(k));
            out.vertex_speeds.push_back(ext->speed_at(k));
            out.vertex_is_boundary.push_back(ext->boundary_at(k));
        }
        for (const ProfileSegment& seg : ext->segments)
            if (seg.cells > 0 || seg.duration > 0.0) out.segments.push_back(seg);
    }
    return out;
}

void KtpgState::satisfy_edges(int agent, const SpeedProfile& profile) {
    const AgentContext& ctx = agents_[agent];
    std::vector<int> touched_agents;
    for (int e : active_edges_) {
        if (status_[e] != EdgeStatus::Conflicting) continue;
        const Type2Edge& edge = tpg_.edge(e);
        if (edge.from.agent != agent) continue;
        if (edge.from.seq < ctx.start_seq || edge.from.seq > profile.end_seq()) continue;

        const double split = profile.reach_time(edge.from.seq);
        const double margin = margin_for_edge(e);
        if (edge.from.seq - 1 >= ctx.start_seq) {
            ReservedInterval& own = intervals_[tpg_.vertex_id({agent, edge.from.seq - 1})];
            own.intersect_upper(split);
            if (own.empty()) throw std::logic_error("split time emptied the source interval");
        }
        ReservedInterval& target = intervals_[tpg_.vertex_id(edge.to)];
        target.intersect_lower(split + margin + kIntervalGap);
        if (target.empty()) throw std::logic_error("split time emptied the target interval");

        status_[e] = EdgeStatus::Satisfied;
        --conflicting_in_[tpg_.vertex_id(edge.to)];
        --conflicting_remaining_;
        touched_agents.push_back(edge.to.agent);
    }
    committed_[agent] = profile;

    for (int a : touched_agents) {
        int& u = prefix_end_[a];
        while (u + 1 <= agents_[a].end_seq && conflicting_in_[tpg_.vertex_id({a, u + 1})] == 0) ++u;
    }
}

int KtpgState::step() {
    const int agent = select_agent();
    const int before = conflicting_remaining_;
    std::optional<SpeedProfile> profile = plan_range(agent, prefix_end_[agent]);
    ++stats_.planner_calls;
    if (!profile) profile = fallback_plan(agent, prefix_end_[agent]);
    if (!profile)
        throw std::logic_error("speed-profile planning infeasible for agent " +
                               std::to_string(agent) + " (contradicts completeness)");
    satisfy_edges(agent, *profile);
    ++stats_.iterations;
    return before - conflicting_remaining_;
}

void KtpgState::commit_final_profiles() {
    for (int a = 0; a < static_cast<int>(agents_.size()); ++a) {
        const AgentContext& ctx = agents_[a];
        if (committed_[a] && committed_[a]->end_seq() >= ctx.end_seq) continue;
        std::optional<SpeedProfile> profile = plan_range(a, ctx.end_seq);
        ++stats_.planner_calls;
        if (!profile) profile = fallback_plan(a, ctx.end_seq);
        if (!profile)
            throw std::logic_error("final profile planning infeasible for agent " +
                                   std::to_string(a));
        committed_[a] = std::move(*profile);
    }
}

void KtpgState::run() {
    const int bound = std::min(stats_.vertex_count, static_cast<int>(active_edges_.size()));
    while (!done()) {
        step();
        if (stats_.iterations > bound)
            throw std::logic_error("iteration bound min(|V|, |E2|) exceeded");
    }
    commit_final_profiles();
}

std::string KtpgState::state_json() const {
    nlohmann::json j;
    j["intervals"] = nlohmann::json::array();
    for (int a = 0; a < tpg_.agent_count(); ++a) {
        for (int k = agents_[a].start_seq; k <= agents_[a].end_seq; ++k) {
            const ReservedInterval& iv = intervals_[tpg_.vertex_id({a, k})];
            j["intervals"].push_back(
                {{"agent", a},
                 {"seq", k},
                 {"lower", iv.lower},
                 {"upper", iv.upper == kInfinity ? nlohmann::json() : nlohmann::json(iv.upper)}});
        }
    }
    j["edges"] = nlohmann::json::array();
    for (int e : active_edges_) {
        const Type2Edge& edge = tpg_.edge(e);
        j["edges"].push_back({{"from", {edge.from.agent, edge.from.seq}},
                              {"to", {edge.to.agent, edge.to.seq}},
                              {"status", status_[e] == EdgeStatus::Satisfied ? "satisfied"
                                                                             : "conflicting"}});
    }
    return j.dump();
}

std::vector<SpeedProfile> run_ktpg(const Tpg& tpg, const RobotModel& model,
                                   const std::optional<UncertaintyModel>& uncertainty,
                                   KtpgRunStats* stats_out) {
    const PrimitiveSet primitives(model);
    std::vector<AgentContext> contexts(tpg.agent_count());
    for (int a = 0; a < tpg.agent_count(); ++a) {
        contexts[a].start_seq = 0;
        contexts[a].end_seq = tpg.last_seq(a);
        contexts[a].start.time = 0.0;
        contexts[a].start.speed = 0.0;
        contexts[a].start.orientation =
            tpg.chain_length(a) > 1 ? step_direction(tpg.chain(a)[0], tpg.chain(a)[1])
                                    : Direction::North;
    }
    std::vector<int> all_edges(tpg.type2_count());
    for (int e = 0; e < tpg.type2_count(); ++e) all_edges[e] = e;

    KtpgState state(tpg, primitives, std::move(contexts), uncertainty, std::move(all_edges));
    state.run();
    if (stats_out != nullptr) *stats_out = state.stats();

    std::vector<SpeedProfile> out;
    out.reserve(tpg.agent_count());
    for (const auto& p : state.profiles()) out.push_back(*p);
    return out;
}

}  // namespace ktpg
