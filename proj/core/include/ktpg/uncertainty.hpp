#pragma once

#include <vector>

#include "ktpg/types.hpp"

namespace ktpg {

// Gaussian move-time noise: the actual duration of a move over distance d is
// the planned duration plus N(0, K * d), with K an agent-specific
// variance-per-meter. P_d is the per-edge probability with which safety
// margins must preserve passing orders.
struct UncertaintyModel {
    std::vector<double> agent_variance_per_meter;  // K_i, s^2/m
    double p_threshold = 0.99;                     // P_d

    double variance_for(int agent, double distance) const {
        return agent_variance_per_meter[agent] * distance;
    }
    void validate() const;

    // All agents share K = epsilon^2 (unit-distance standard deviation epsilon).
    static UncertaintyModel uniform(int agent_count, double epsilon, double p_threshold = 0.99);
};

// Reach-time distribution per chain vertex, accumulated from an anchor vertex
// with an observed (exact) reach time.
struct ReachTimeBelief {
    int anchor_seq = 0;
    std::vector<double> mean;      // indexed by seq - anchor_seq
    std::vector<double> variance;  // zero at the anchor

    double mean_at(int seq) const { return mean[seq - anchor_seq]; }
    double variance_at(int seq) const { return variance[seq - anchor_seq]; }
};

// Accumulates expected reach times and variances along a chain suffix.
// `step_durations[j]` is the planned duration from vertex anchor+j to
// anchor+j+1 and `step_distances[j]` the distance moved (0 for pure waits);
// planner-inserted waits and turns contribute time but no variance.
ReachTimeBelief propagate_belief(int anchor_seq, double observed_time,
                                 const std::vector<double>& step_durations,
                                 const std::vector<double>& step_distances,
                                 double variance_per_meter);

}  // namespace ktpg
