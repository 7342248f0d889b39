#include "ktpg/noise.hpp"

#include <cmath>
#include <stdexcept>

namespace ktpg {

std::uint64_t SplitMix64::next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double SplitMix64::uniform01() { return ((next() >> 11) + 1) * 0x1.0p-53; }

double gaussian_sample(SplitMix64& rng) {
    const double u1 = rng.uniform01();
    const double u2 = rng.uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

double sample_move_time(double nominal, double variance_per_meter, double distance,
                        SplitMix64& rng, double clamp_floor) {
    if (nominal <= 0.0) throw std::invalid_argument("nominal move time must be positive");
    const double sigma = std::sqrt(variance_per_meter * distance);
    const double sampled = nominal + sigma * gaussian_sample(rng);
    return std::max(sampled, clamp_floor * nominal);
}

double NoiseModel::move_time(int agent, int target_seq, double nominal, double distance) const {
    const std::uint64_t key =
        seed ^ (0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(agent) + 1)) ^
        (0xc2b2ae3d27d4eb4fULL * (static_cast<std::uint64_t>(target_seq) + 1));
    SplitMix64 rng(key);
    return sample_move_time(nominal, agent_variance_per_meter[agent], distance, rng, clamp_floor);
}

NoiseModel NoiseModel::uniform(int agent_count, double epsilon, std::uint64_t seed) {
    NoiseModel m;
    m.agent_variance_per_meter.assign(agent_count, epsilon * epsilon);
    m.seed = seed;
    return m;
}

NoiseModel NoiseModel::noiseless(int agent_count) { return uniform(agent_count, 0.0, 0); }

}  // namespace ktpg
