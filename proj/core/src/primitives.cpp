#include "ktpg/primitives.hpp"

#include <cmath>

namespace ktpg {

namespace {

// Crossing times for accelerate-then-cruise (speeding up) over m cells.
MotionPrimitive speed_up(double u, double w, double a, int m) {
    const double d_accel = (w * w - u * u) / (2.0 * a);
    const double t_accel = (w - u) / a;
    MotionPrimitive p;
    p.entry_speed = u;
    p.exit_speed = w;
    p.cells_spanned = m;
    for (int j = 1; j <= m; ++j) {
        const double x = j * kCellSize;
        if (x <= d_accel + 1e-12) {
            p.cell_offsets.push_back((-u + std::sqrt(u * u + 2.0 * a * x)) / a);
            p.cell_speeds.push_back(std::min(w, std::sqrt(u * u + 2.0 * a * x)));
        } else {
            p.cell_offsets.push_back(t_accel + (x - d_accel) / w);
            p.cell_speeds.push_back(w);
        }
    }
    p.duration = p.cell_offsets.back();
    return p;
}

// Crossing times for cruise-then-decelerate (slowing down) over m cells.
MotionPrimitive slow_down(double u, double w, double a, int m) {
    const double d_decel = (w * w - u * u) / (2.0 * a);  // a < 0
    const double d_cruise = m * kCellSize - d_decel;
    MotionPrimitive p;
    p.entry_speed = u;
    p.exit_speed = w;
    p.cells_spanned = m;
    for (int j = 1; j <= m; ++j) {
        const double x = j * kCellSize;
        if (x <= d_cruise + 1e-12) {
            p.cell_offsets.push_back(x / u);
            p.cell_speeds.push_back(u);
        } else {
            const double v = std::sqrt(std::max(0.0, u * u + 2.0 * a * (x - d_cruise)));
            p.cell_offsets.push_back(d_cruise / u + (v - u) / a);
            p.cell_speeds.push_back(v);
        }
    }
    p.duration = p.cell_offsets.back();
    return p;
}

// One-cell stop-to-stop: accelerate to a peak, optionally cruise at v_max,
// decelerate back to rest.
MotionPrimitive stop_to_stop(const RobotModel& model) {
    const double a_up = model.a_max;
    const double a_dn = -model.a_min;
    double peak = std::sqrt(2.0 * kCellSize * a_up * a_dn / (a_up + a_dn));
    peak = std::min(peak, model.v_max);
    const double d1 = peak * peak / (2.0 * a_up);
    const double d2 = peak * peak / (2.0 * a_dn);
    const double cruise = kCellSize - d1 - d2;
    MotionPrimitive p;
    p.cells_spanned = 1;
    p.duration = peak / a_up + cruise / peak + peak / a_dn;
    p.cell_offsets = {p.duration};
    p.cell_speeds = {0.0};
    return p;
}

}  // namespace

std::vector<MotionPrimitive> build_primitives(const RobotModel& model) {
    model.validate();
    std::vector<MotionPrimitive> prims;

    for (double u : model.discrete_speeds) {
        for (double w : model.discrete_speeds) {
            if (u == 0.0 && w == 0.0) continue;  // covered by stop_to_stop
            if (u == w) {
                MotionPrimitive cruise;
                cruise.entry_speed = cruise.exit_speed = u;
                cruise.cells_spanned = 1;
                cruise.duration = kCellSize / u;
                cruise.cell_offsets = {cruise.duration};
                cruise.cell_speeds = {u};
                prims.push_back(cruise);
                continue;
            }
            const double a = w > u ? model.a_max : model.a_min;
            const double d_change = (w * w - u * u) / (2.0 * a);
            const int m = std::max(1, static_cast<int>(std::ceil(d_change / kCellSize - 1e-9)));
            prims.push_back(w > u ? speed_up(u, w, a, m) : slow_down(u, w, a, m));
        }
    }
    prims.push_back(stop_to_stop(model));

    MotionPrimitive wait;
    wait.kind = PrimitiveKind::Wait;
    prims.push_back(wait);
    if (model.kind == RobotKind::DifferentialDrive) {
        for (double t : {model.turn_time_90, model.turn_time_180}) {
            MotionPrimitive turn;
            turn.kind = PrimitiveKind::Turn;
            turn.duration = t;
            prims.push_back(turn);
        }
    }

    bool movable_from_rest = false;
    for (const MotionPrimitive& p : prims)
        if (p.kind == PrimitiveKind::Move && p.entry_speed == 0.0) movable_from_rest = true;
    if (!movable_from_rest) throw std::invalid_argument("primitive set has no move from rest");
    return prims;
}

PrimitiveSet::PrimitiveSet(const RobotModel& model) : model_(model), all_(build_primitives(model)) {
    by_entry_.resize(model_.discrete_speeds.size());
    for (const MotionPrimitive& p : all_) {
        if (p.kind != PrimitiveKind::Move) continue;
        by_entry_[model_.speed_index(p.entry_speed)].push_back(p);
    }
}

}  // namespace ktpg
