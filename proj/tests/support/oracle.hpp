#pragma once

#include <vector>

#include "ktpg/interval.hpp"
#include "ktpg/primitives.hpp"
#include "ktpg/sipp.hpp"
#include "ktpg/types.hpp"

namespace ktpg::oracle {

struct OracleResult {
    bool feasible = false;
    double finish_time = 0.0;
};

// Brute-force reference for the speed-profile planner: enumerates every move
// primitive sequence along the chain (up to the chain length) and, for each,
// computes the pointwise-minimal schedule by pushing rigid nonzero-speed
// blocks until every interval lower bound holds; a sequence is infeasible if
// a push breaks an upper bound. Independent of the A* search path.
OracleResult min_finish_time(const std::vector<Cell>& chain,
                             const std::vector<ReservedInterval>& intervals,
                             const KinematicState& start, const PrimitiveSet& primitives);

// Bisection on the error function, |error| < 1e-12.
double normal_quantile(double p);

}  // namespace ktpg::oracle
