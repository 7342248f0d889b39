#include "ktpg/uncertainty.hpp"

#include <stdexcept>

namespace ktpg {

void UncertaintyModel::validate() const {
    for (double k : agent_variance_per_meter)
        if (k < 0.0) throw std::invalid_argument("variance per meter must be non-negative");
    if (!(p_threshold > 0.5 && p_threshold < 1.0))
        throw std::invalid_argument("P_d must lie in (0.5, 1)");
}

UncertaintyModel UncertaintyModel::uniform(int agent_count, double epsilon, double p_threshold) {
    UncertaintyModel m;
    m.agent_variance_per_meter.assign(agent_count, epsilon * epsilon);
    m.p_threshold = p_threshold;
    m.validate();
    return m;
}

ReachTimeBelief propagate_belief(int anchor_seq, double observed_time,
                                 const std::vector<double>& step_durations,
                                 const std::vector<double>& step_distances,
                                 double variance_per_meter) {
    if (step_durations.size() != step_distances.size())
        throw std::invalid_argument("one distance per step required");
    ReachTimeBelief belief;
    belief.anchor_seq = anchor_seq;
    belief.mean.push_back(observed_time);
    belief.variance.push_back(0.0);
    for (std::size_t j = 0; j < step_durations.size(); ++j) {
        belief.mean.push_back(belief.mean.back() + step_durations[j]);
        belief.variance.push_back(belief.variance.back() + variance_per_meter * step_distances[j]);
    }
    return belief;
}

}  // namespace ktpg
