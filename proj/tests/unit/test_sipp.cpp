#include <cmath>

#include "doctest.h"
#include "fixtures.hpp"
#include "ktpg/noise.hpp"
#include "ktpg/sipp.hpp"
#include "oracle.hpp"

using namespace ktpg;
using doctest::Approx;

namespace {

std::vector<Cell> straight_chain(int cells) {
    std::vector<Cell> chain;
    for (int x = 0; x <= cells; ++x) chain.push_back({x, 0});
    return chain;
}

// Random chain with direction changes plus up to `bounds` random interval
// constraints; mirrors the acceptance setup at unit scale.
struct RandomCase {
    std::vector<Cell> chain;
    std::vector<ReservedInterval> intervals;
};

RandomCase random_case(SplitMix64& rng, int max_cells, int max_bounds) {
    RandomCase rc;
    Cell at{20, 20};
    rc.chain.push_back(at);
    const int cells = 1 + static_cast<int>(rng.next() % max_cells);
    Direction dir = Direction::East;
    for (int i = 0; i < cells; ++i) {
        if (i > 0 && rng.next() % 3 == 0) {
            // turn left or right, never reverse
            const int sign = rng.next() % 2 == 0 ? 1 : 3;
            dir = static_cast<Direction>((static_cast<int>(dir) + sign) % 4);
        }
        switch (dir) {
            case Direction::North: --at.y; break;
            case Direction::South: ++at.y; break;
            case Direction::East: ++at.x; break;
            case Direction::West: --at.x; break;
        }
        rc.chain.push_back(at);
    }
    rc.intervals.assign(rc.chain.size(), ReservedInterval{});
    const int bounds = static_cast<int>(rng.next() % (max_bounds + 1));
    for (int b = 0; b < bounds; ++b) {
        const int k = static_cast<int>(rng.next() % rc.chain.size());
        if (rng.next() % 2 == 0) {
            rc.intervals[k].intersect_lower(rng.uniform01() * 6.0);
        } else if (k > 0) {
            rc.intervals[k - 1].intersect_upper(1.0 + rng.uniform01() * 10.0);
        }
    }
    return rc;
}

}  // namespace

TEST_CASE("one-vertex chain yields a zero-duration profile") {
    const PrimitiveSet prims(RobotModel::omnidirectional());
    const auto profile = plan_speed_profile({{3, 3}}, {ReservedInterval{}}, {}, prims);
    REQUIRE(profile.has_value());
    CHECK(profile->finish_time() == 0.0);
    CHECK(profile->segments.empty());
}

TEST_CASE("a 4 m straight run from rest takes 4 s (oracle-checked)") {
    const PrimitiveSet prims(RobotModel::omnidirectional());
    const auto chain = straight_chain(4);
    const std::vector<ReservedInterval> free(chain.size());
    const auto profile = plan_speed_profile(chain, free, {}, prims);
    REQUIRE(profile.has_value());
    const auto reference = oracle::min_finish_time(chain, free, {}, prims);
    REQUIRE(reference.feasible);
    CHECK(profile->finish_time() == Approx(reference.finish_time).epsilon(1e-9));
    CHECK(profile->finish_time() == Approx(4.0).epsilon(1e-9));
    CHECK(min_traverse_time(chain, {}, prims) == Approx(4.0).epsilon(1e-9));
}

TEST_CASE("a lower bound on the second vertex forces a wait at the first") {
    const PrimitiveSet prims(RobotModel::omnidirectional());
    const auto chain = straight_chain(1);
    std::vector<ReservedInterval> bounds(2);
    bounds[1].intersect_lower(5.0);
    const auto profile = plan_speed_profile(chain, bounds, {}, prims);
    REQUIRE(profile.has_value());
    CHECK(profile->reach_time(1) >= 5.0);
    CHECK(profile->reach_time(1) == Approx(5.0));
    const auto reference = oracle::min_finish_time(chain, bounds, {}, prims);
    CHECK(profile->finish_time() == Approx(reference.finish_time).epsilon(1e-9));
    // the wait happens at rest at the first vertex
    REQUIRE(profile->segments.size() >= 2);
    CHECK(profile->segments[0].kind == PrimitiveKind::Wait);
}

TEST_CASE("upper bounds forbid outstaying a vertex") {
    const PrimitiveSet prims(RobotModel::omnidirectional());
    const auto chain = straight_chain(2);
    std::vector<ReservedInterval> bounds(3);
    bounds[0].intersect_upper(1.0);  // must have left the start by t = 1
    const auto profile = plan_speed_profile(chain, bounds, {}, prims);
    REQUIRE(profile.has_value());
    CHECK(profile->reach_time(1) <= 1.0 + 1e-9);
    bounds[0].intersect_upper(0.5);  // cannot reach the next vertex that fast
    CHECK_FALSE(plan_speed_profile(chain, bounds, {}, prims).has_value());
}

TEST_CASE("profiles wait only at zero speed and respect the speed envelope") {
    const PrimitiveSet prims(RobotModel::omnidirectional());
    SplitMix64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const RandomCase rc = random_case(rng, 6, 3);
        const auto profile = plan_speed_profile(rc.chain, rc.intervals, {}, prims);
        if (!profile) continue;
        for (const ProfileSegment& seg : profile->segments) {
            if (seg.kind == PrimitiveKind::Wait) {
                CHECK(seg.entry_speed == 0.0);
                CHECK(seg.exit_speed == 0.0);
            }
        }
        for (std::size_t k = 0; k < profile->vertex_times.size(); ++k) {
            CHECK(profile->vertex_speeds[k] >= 0.0);
            CHECK(profile->vertex_speeds[k] <= prims.model().v_max + 1e-12);
            CHECK(rc.intervals[k].contains(profile->vertex_times[k], 1e-9));
        }
        CHECK(profile->vertex_speeds.back() == 0.0);
    }
}

TEST_CASE("planner matches the oracle on random omnidirectional cases") {
    const PrimitiveSet prims(RobotModel::omnidirectional());
    SplitMix64 rng(11);
    int feasible = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const RandomCase rc = random_case(rng, 6, 3);
        const auto profile = plan_speed_profile(rc.chain, rc.intervals, {}, prims);
        const auto reference = oracle::min_finish_time(rc.chain, rc.intervals, {}, prims);
        REQUIRE(profile.has_value() == reference.feasible);
        if (profile) {
            CHECK(profile->finish_time() == Approx(reference.finish_time).epsilon(1e-9));
            ++feasible;
        }
    }
    CHECK(feasible > 100);
}

TEST_CASE("planner matches the oracle on random differential-drive cases") {
    const PrimitiveSet prims(RobotModel::differential_drive());
    SplitMix64 rng(13);
    for (int trial = 0; trial < 300; ++trial) {
        const RandomCase rc = random_case(rng, 6, 3);
        KinematicState start;
        start.orientation = rc.chain.size() > 1 ? step_direction(rc.chain[0], rc.chain[1])
                                                : Direction::East;
        const auto profile = plan_speed_profile(rc.chain, rc.intervals, start, prims);
        const auto reference = oracle::min_finish_time(rc.chain, rc.intervals, start, prims);
        REQUIRE(profile.has_value() == reference.feasible);
        if (profile)
            CHECK(profile->finish_time() == Approx(reference.finish_time).epsilon(1e-9));
    }
}

TEST_CASE("tightening an interval never speeds up the optimum") {
    const PrimitiveSet prims(RobotModel::omnidirectional());
    SplitMix64 rng(17);
    for (int trial = 0; trial < 120; ++trial) {
        RandomCase rc = random_case(rng, 6, 2);
        const auto base = plan_speed_profile(rc.chain, rc.intervals, {}, prims);
        if (!base) continue;
        const int k = static_cast<int>(rng.next() % rc.chain.size());
        rc.intervals[k].intersect_lower(rc.intervals[k].lower + rng.uniform01() * 3.0);
        const auto tightened = plan_speed_profile(rc.chain, rc.intervals, {}, prims);
        if (tightened)
            CHECK(tightened->finish_time() >= base->finish_time() - 1e-9);
    }
}

TEST_CASE("a 90-degree differential-drive turn adds stop and turn overhead") {
    const PrimitiveSet omni_prims(RobotModel::omnidirectional());
    const PrimitiveSet diff_prims(RobotModel::differential_drive());
    const std::vector<Cell> bent = {{0, 0}, {1, 0}, {2, 0}, {2, 1}, {2, 2}};
    KinematicState start;
    start.orientation = Direction::East;
    const double omni_time = min_traverse_time(bent, start, omni_prims);
    const double diff_time = min_traverse_time(bent, start, diff_prims);
    const auto reference = oracle::min_finish_time(
        bent, std::vector<ReservedInterval>(bent.size()), start, diff_prims);
    CHECK(diff_time == Approx(reference.finish_time).epsilon(1e-9));
    // the turn costs its dwell plus the stop-and-restart around the corner
    CHECK(diff_time >= omni_time + diff_prims.model().turn_time_90);
}

TEST_CASE("ideal_time_sum is additive and order-invariant") {
    const auto inst = fixtures::make_instance(8, 8,
                                              {{{0, 0}, {1, 0}, {2, 0}, {3, 0}, {4, 0}},
                                               {{0, 7}, {1, 7}, {2, 7}, {3, 7}, {4, 7}}});
    const RobotModel model = RobotModel::omnidirectional();
    const double both = ideal_time_sum(inst.plan, model);

    MapfPlan solo_a;
    solo_a.map = inst.plan.map;
    solo_a.paths = {inst.plan.paths[0]};
    MapfPlan solo_b;
    solo_b.map = inst.plan.map;
    solo_b.paths = {inst.plan.paths[1]};
    CHECK(both == Approx(ideal_time_sum(solo_a, model) + ideal_time_sum(solo_b, model)));

    MapfPlan swapped;
    swapped.map = inst.plan.map;
    swapped.paths = {inst.plan.paths[1], inst.plan.paths[0]};
    CHECK(both == Approx(ideal_time_sum(swapped, model)));

    const MapfPlan empty{{}, inst.plan.map};
    CHECK(ideal_time_sum(empty, model) == 0.0);
}
