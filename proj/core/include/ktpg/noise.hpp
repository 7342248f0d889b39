#pragma once

#include <cstdint>
#include <vector>

namespace ktpg {

// Small, portable counter RNG (splitmix64). Standard-library distributions
// are implementation-defined, so the gaussian is derived explicitly for
// bit-identical traces across platforms.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next();
    double uniform01();  // in (0, 1]

  private:
    std::uint64_t state_;
};

double gaussian_sample(SplitMix64& rng);  // standard normal via Box-Muller

// One noisy move duration: nominal + N(0, K * distance), clamped below at
// clamp_floor * nominal.
double sample_move_time(double nominal, double variance_per_meter, double distance,
                        SplitMix64& rng, double clamp_floor = 0.1);

// Per-move temporal noise with a documented stream-splitting rule: the move
// into vertex seq of agent a draws from the substream keyed by
// (seed, agent, seq), so realized durations do not depend on replanning or on
// the order agents are simulated.
struct NoiseModel {
    std::vector<double> agent_variance_per_meter;  // K_i, s^2/m
    std::uint64_t seed = 0;
    double clamp_floor = 0.1;

    double move_time(int agent, int target_seq, double nominal, double distance) const;

    static NoiseModel uniform(int agent_count, double epsilon, std::uint64_t seed);
    static NoiseModel noiseless(int agent_count);
};

}  // namespace ktpg
