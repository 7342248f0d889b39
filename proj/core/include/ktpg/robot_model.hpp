#pragma once

#include <vector>

#include "ktpg/types.hpp"

namespace ktpg {

enum class RobotKind { Omnidirectional, DifferentialDrive };

// Kinodynamic limits plus the discrete vertex-speed set used by the
// speed-profile planner. A differential-drive robot moves only along its
// current orientation and rotates in place at zero speed; an omnidirectional
// robot ignores orientation entirely.
struct RobotModel {
    RobotKind kind = RobotKind::Omnidirectional;
    double v_max = 2.0;   // m/s
    double v_min = 0.0;   // m/s
    double a_max = 1.0;   // m/s^2
    double a_min = -1.0;  // m/s^2
    std::vector<double> discrete_speeds = {0.0, 1.4142135623730951, 2.0};  // m/s, sorted, 0 included
    double turn_time_90 = 0.5;   // s, differential drive only
    double turn_time_180 = 0.9;  // s

    bool needs_orientation() const { return kind == RobotKind::DifferentialDrive; }
    double turn_time(int quarter_turns) const;
    int speed_index(double speed) const;  // -1 if not a discrete vertex speed

    void validate() const;

    static RobotModel omnidirectional();
    static RobotModel differential_drive();
};

}  // namespace ktpg
