#include <cmath>

#include "doctest.h"
#include "ktpg/primitives.hpp"

using namespace ktpg;
using doctest::Approx;

namespace {
const MotionPrimitive* find_move(const std::vector<MotionPrimitive>& prims, double u, double w) {
    for (const MotionPrimitive& p : prims)
        if (p.kind == PrimitiveKind::Move && std::abs(p.entry_speed - u) < 1e-9 &&
            std::abs(p.exit_speed - w) < 1e-9)
            return &p;
    return nullptr;
}
}  // namespace

TEST_CASE("primitive durations for the default omnidirectional model") {
    const auto prims = build_primitives(RobotModel::omnidirectional());
    const double root2 = std::sqrt(2.0);

    const auto* cruise2 = find_move(prims, 2.0, 2.0);
    REQUIRE(cruise2 != nullptr);
    CHECK(cruise2->duration == Approx(0.5).epsilon(1e-12));

    const auto* accel = find_move(prims, 0.0, root2);
    REQUIRE(accel != nullptr);
    CHECK(accel->cells_spanned == 1);
    CHECK(accel->duration == Approx(root2).epsilon(1e-12));

    const auto* stop = find_move(prims, 0.0, 0.0);
    REQUIRE(stop != nullptr);
    CHECK(stop->cells_spanned == 1);
    CHECK(stop->duration == Approx(2.0).epsilon(1e-12));

    const auto* full = find_move(prims, 0.0, 2.0);
    REQUIRE(full != nullptr);  // 2 m/s needs 2 m of runway at a = 1
    CHECK(full->cells_spanned == 2);
    CHECK(full->duration == Approx(2.0).epsilon(1e-12));
    CHECK(full->cell_offsets[0] == Approx(root2).epsilon(1e-12));
    CHECK(full->cell_speeds[0] == Approx(root2).epsilon(1e-12));

    const auto* brake = find_move(prims, 2.0, 0.0);
    REQUIRE(brake != nullptr);
    CHECK(brake->cells_spanned == 2);
    CHECK(brake->cell_offsets[0] == Approx(2.0 - root2).epsilon(1e-12));
}

TEST_CASE("every move primitive respects the kinodynamic envelope") {
    for (const RobotModel& model :
         {RobotModel::omnidirectional(), RobotModel::differential_drive()}) {
        for (const MotionPrimitive& p : build_primitives(model)) {
            if (p.kind != PrimitiveKind::Move) continue;
            CHECK(p.cells_spanned >= 1);
            CHECK(p.duration > 0.0);
            CHECK(p.cell_offsets.size() == static_cast<std::size_t>(p.cells_spanned));
            CHECK(p.cell_offsets.back() == Approx(p.duration));
            double prev = 0.0;
            for (std::size_t i = 0; i < p.cell_offsets.size(); ++i) {
                CHECK(p.cell_offsets[i] > prev);
                prev = p.cell_offsets[i];
                CHECK(p.cell_speeds[i] >= -1e-12);
                CHECK(p.cell_speeds[i] <= model.v_max + 1e-12);
            }
            // average speed over any prefix cannot beat v_max
            CHECK(p.cells_spanned * kCellSize / p.duration <= model.v_max + 1e-12);
        }
    }
}

TEST_CASE("differential drive adds turn primitives") {
    const auto prims = build_primitives(RobotModel::differential_drive());
    int turns = 0;
    for (const MotionPrimitive& p : prims)
        if (p.kind == PrimitiveKind::Turn) ++turns;
    CHECK(turns == 2);
}

TEST_CASE("misconfigured models are rejected") {
    RobotModel bad = RobotModel::omnidirectional();
    bad.discrete_speeds = {1.0, 2.0};  // no zero speed
    CHECK_THROWS_AS(build_primitives(bad), std::invalid_argument);
    RobotModel inverted = RobotModel::omnidirectional();
    inverted.a_min = 1.0;
    CHECK_THROWS_AS(build_primitives(inverted), std::invalid_argument);
}
