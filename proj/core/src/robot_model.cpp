#include "ktpg/robot_model.hpp"

#include <algorithm>
#include <cmath>

namespace ktpg {

double RobotModel::turn_time(int quarter_turns) const {
    switch (quarter_turns) {
        case 0: return 0.0;
        case 1: return turn_time_90;
        case 2: return turn_time_180;
        default: throw std::invalid_argument("quarter turns must be 0..2");
    }
}

int RobotModel::speed_index(double speed) const {
    for (std::size_t i = 0; i < discrete_speeds.size(); ++i)
        if (std::abs(discrete_speeds[i] - speed) < 1e-9) return static_cast<int>(i);
    return -1;
}

void RobotModel::validate() const {
    if (!(a_min < 0.0 && 0.0 < a_max)) throw std::invalid_argument("need a_min < 0 < a_max");
    if (v_max <= 0.0) throw std::invalid_argument("v_max must be positive");
    if (discrete_speeds.empty() || speed_index(0.0) < 0)
        throw std::invalid_argument("discrete speed set must contain 0");
    if (!std::is_sorted(discrete_speeds.begin(), discrete_speeds.end()))
        throw std::invalid_argument("discrete speeds must be sorted");
    for (double s : discrete_speeds)
        if (s < 0.0 || s > v_max + 1e-12)
            throw std::invalid_argument("discrete speeds must lie in [0, v_max]");
}

RobotModel RobotModel::omnidirectional() { return RobotModel{}; }

RobotModel RobotModel::differential_drive() {
    RobotModel m;
    m.kind = RobotKind::DifferentialDrive;
    return m;
}

}  // namespace ktpg
