#pragma once

#include <limits>

namespace ktpg {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Separation inserted when realizing an open lower bound (t, inf) as a closed
// one [t + kIntervalGap, inf).
constexpr double kIntervalGap = 1e-6;

// Tolerance for verifying interval membership of already-computed times.
// Construction (planning, interval splitting) uses exact comparisons.
constexpr double kMembershipTolerance = 1e-6;

// Time window during which an agent may occupy a TPG vertex's location. Both
// endpoints are treated as closed; the agent must reach the location at or
// after `lower` and leave it (reach the next location) at or before `upper`.
struct ReservedInterval {
    double lower = 0.0;
    double upper = kInfinity;

    bool empty() const { return lower > upper; }
    bool contains(double t, double tol = kMembershipTolerance) const {
        return t >= lower - tol && t <= upper + tol;
    }
    void intersect_upper(double bound) {
        if (bound < upper) upper = bound;
    }
    void intersect_lower(double bound) {
        if (bound > lower) lower = bound;
    }
};

}  // namespace ktpg
