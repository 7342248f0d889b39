#pragma once

#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "ktpg/noise.hpp"
#include "ktpg/tpg.hpp"

namespace ktpg {

// One commanded vertex advance: dwell (wait + in-place turn, noiseless) at
// the current vertex, then the move into `to_seq` whose realized duration is
// the nominal plus sampled noise.
struct DispatchStep {
    int to_seq = 0;
    double dwell = 0.0;
    double move = 0.0;
};

struct TraceEvent {
    int agent = 0;
    int seq = 0;
    Cell location;
    double t = 0.0;
};

struct ExecutionTrace {
    std::vector<std::vector<double>> reach_times;  // [agent][seq], valid up to reached[agent]
    std::vector<int> reached;
    std::vector<TraceEvent> events;
    double end_time = 0.0;

    // controller-side episode metadata
    int window_count = 0;
    std::vector<double> window_runtimes;  // planner wall-clock seconds per replan
    int fallback_plans = 0;

    bool all_at_goal(const Tpg& tpg) const;
    std::string events_jsonl() const;  // one {agent, vertex_seq, location, t_actual} per line
};

// Event-driven executor of dispatched vertex advances. Agents execute their
// step queues back to back; an agent with no remaining steps holds its last
// vertex. Arrival events are processed in (time, agent) order.
class Simulator {
  public:
    Simulator(const Tpg& tpg, NoiseModel noise);

    double now() const { return now_; }
    int reached_seq(int agent) const { return reached_[agent]; }
    double reach_time(int agent, int seq) const { return reach_times_[agent][seq]; }
    bool idle(int agent) const;  // no in-flight step and empty queue
    bool all_done() const;

    // Drops the agent's queued steps with to_seq > from_seq and appends
    // `steps` (consecutive from from_seq + 1). The agent must not already be
    // past from_seq. For an agent sitting idle at from_seq, execution starts
    // at max(arrival time, not_before).
    void dispatch(int agent, int from_seq, const std::vector<DispatchStep>& steps,
                  double not_before);

    std::optional<double> next_event_time() const;
    // Processes every arrival with time <= t and sets now() = t.
    void advance_until(double t);
    // Runs until no motion remains; returns the final time.
    double advance_all();

    ExecutionTrace take_trace();
    const Tpg& tpg() const { return tpg_; }

  private:
    struct AgentRuntime {
        std::deque<DispatchStep> queue;
        std::optional<double> inflight_arrival;  // arrival time of queue.front()
    };

    void start_next_step(int agent, double from_time);
    void process_arrival(int agent);

    const Tpg& tpg_;
    NoiseModel noise_;
    double now_ = 0.0;
    std::vector<AgentRuntime> agents_;
    std::vector<std::vector<double>> reach_times_;
    std::vector<int> reached_;
    std::vector<TraceEvent> events_;
};

}  // namespace ktpg
