#pragma once

#include <vector>

#include "ktpg/robot_model.hpp"

namespace ktpg {

enum class PrimitiveKind { Move, Wait, Turn };

constexpr double kCellSize = 1.0;  // m between adjacent locations

// A precomputed kinematically feasible speed segment between two discrete
// vertex speeds, spanning one or more whole cells. `cell_offsets[j]` is the
// time from the primitive's start until the agent crosses into the (j+1)-th
// next cell; the last offset equals `duration`. `cell_speeds[j]` is the speed
// at that crossing.
struct MotionPrimitive {
    PrimitiveKind kind = PrimitiveKind::Move;
    double entry_speed = 0.0;
    double exit_speed = 0.0;
    int cells_spanned = 0;
    double duration = 0.0;
    std::vector<double> cell_offsets;
    std::vector<double> cell_speeds;
};

// The move primitives for a robot model, grouped by entry-speed index.
class PrimitiveSet {
  public:
    explicit PrimitiveSet(const RobotModel& model);

    const RobotModel& model() const { return model_; }
    const std::vector<MotionPrimitive>& from_speed(int speed_index) const {
        return by_entry_[speed_index];
    }
    const std::vector<MotionPrimitive>& all() const { return all_; }

  private:
    RobotModel model_;
    std::vector<MotionPrimitive> all_;
    std::vector<std::vector<MotionPrimitive>> by_entry_;
};

// Builds the minimal complete move-primitive set for the model: for every
// ordered pair of discrete speeds the minimal-cell transition primitive (with
// cruise padding when the speed change does not fill whole cells), a one-cell
// cruise at each nonzero speed, and the one-cell stop-to-stop primitive.
std::vector<MotionPrimitive> build_primitives(const RobotModel& model);

}  // namespace ktpg
