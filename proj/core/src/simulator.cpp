#include "ktpg/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>

#include "ktpg/primitives.hpp"

namespace ktpg {

bool ExecutionTrace::all_at_goal(const Tpg& tpg) const {
    for (int a = 0; a < tpg.agent_count(); ++a)
        if (reached[a] != tpg.last_seq(a)) return false;
    return true;
}

std::string ExecutionTrace::events_jsonl() const {
    std::ostringstream out;
    out.precision(9);
    out << std::fixed;
    for (const TraceEvent& e : events) {
        out << "{\"agent\": " << e.agent << ", \"vertex_seq\": " << e.seq << ", \"location\": ["
            << e.location.x << ", " << e.location.y << "], \"t_actual\": " << e.t << "}\n";
    }
    return out.str();
}

Simulator::Simulator(const Tpg& tpg, NoiseModel noise) : tpg_(tpg), noise_(std::move(noise)) {
    const int n = tpg_.agent_count();
    agents_.resize(n);
    reached_.assign(n, 0);
    reach_times_.resize(n);
    for (int a = 0; a < n; ++a) {
        reach_times_[a].assign(tpg_.chain_length(a), std::nan(""));
        reach_times_[a][0] = 0.0;
        events_.push_back({a, 0, tpg_.chain(a)[0], 0.0});
    }
}

bool Simulator::idle(int agent) const { return agents_[agent].queue.empty(); }

bool Simulator::all_done() const {
    for (int a = 0; a < tpg_.agent_count(); ++a)
        if (reached_[a] != tpg_.last_seq(a)) return false;
    return true;
}

void Simulator::start_next_step(int agent, double from_time) {
    AgentRuntime& rt = agents_[agent];
    if (rt.queue.empty()) {
        rt.inflight_arrival.reset();
        return;
    }
    const DispatchStep& step = rt.queue.front();
    rt.inflight_arrival =
        from_time + step.dwell + noise_.move_time(agent, step.to_seq, step.move, kCellSize);
}

void Simulator::dispatch(int agent, int from_seq, const std::vector<DispatchStep>& steps,
                         double not_before) {
    AgentRuntime& rt = agents_[agent];
    if (reached_[agent] > from_seq)
        throw std::logic_error("dispatch behind agent " + std::to_string(agent) +
                               ": already past seq " + std::to_string(from_seq));

    const bool was_inflight = rt.inflight_arrival.has_value();
    int tail_seq = reached_[agent];
    std::deque<DispatchStep> kept;
    for (const DispatchStep& s : rt.queue) {
        if (s.to_seq <= from_seq) {
            kept.push_back(s);
            tail_seq = s.to_seq;
        }
    }
    if (was_inflight && kept.empty())
        throw std::logic_error("dispatch would cancel the in-flight step of agent " +
                               std::to_string(agent));
    if (tail_seq != from_seq)
        throw std::logic_error("dispatch gap for agent " + std::to_string(agent) + ": committed through " +
                               std::to_string(tail_seq) + ", new steps from " +
                               std::to_string(from_seq));
    int expect = from_seq + 1;
    for (const DispatchStep& s : steps) {
        if (s.to_seq != expect++ || s.to_seq > tpg_.last_seq(agent))
            throw std::logic_error("non-consecutive dispatch for agent " + std::to_string(agent));
        kept.push_back(s);
    }
    rt.queue = std::move(kept);
    if (!was_inflight && !rt.queue.empty())
        start_next_step(agent, std::max(reach_times_[agent][reached_[agent]], not_before));
}

std::optional<double> Simulator::next_event_time() const {
    std::optional<double> best;
    for (const AgentRuntime& rt : agents_)
        if (rt.inflight_arrival && (!best || *rt.inflight_arrival < *best))
            best = rt.inflight_arrival;
    return best;
}

void Simulator::process_arrival(int agent) {
    AgentRuntime& rt = agents_[agent];
    const double t = *rt.inflight_arrival;
    const DispatchStep step = rt.queue.front();
    rt.queue.pop_front();
    reached_[agent] = step.to_seq;
    reach_times_[agent][step.to_seq] = t;
    events_.push_back({agent, step.to_seq, tpg_.chain(agent)[step.to_seq], t});
    start_next_step(agent, t);
}

void Simulator::advance_until(double t) {
    while (true) {
        int best_agent = -1;
        double best_time = t;
        for (int a = 0; a < static_cast<int>(agents_.size()); ++a) {
            const auto& arr = agents_[a].inflight_arrival;
            if (arr && (*arr < best_time || (*arr == best_time && best_agent < 0))) {
                best_agent = a;
                best_time = *arr;
            }
        }
        if (best_agent < 0) break;
        process_arrival(best_agent);
    }
    now_ = std::max(now_, t);
}

double Simulator::advance_all() {
    while (true) {
        const std::optional<double> t = next_event_time();
        if (!t) break;
        advance_until(*t);
    }
    return now_;
}

ExecutionTrace Simulator::take_trace() {
    ExecutionTrace trace;
    trace.reach_times = std::move(reach_times_);
    trace.reached = std::move(reached_);
    trace.events = std::move(events_);
    trace.end_time = now_;
    return trace;
}

}  // namespace ktpg
