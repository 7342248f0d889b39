#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ktpg/primitives.hpp"
#include "ktpg/types.hpp"

namespace ktpg {

struct ProfileSegment {
    PrimitiveKind kind = PrimitiveKind::Move;
    double start_time = 0.0;  // absolute s
    double duration = 0.0;
    int from_seq = 0;  // chain vertex where the segment begins
    int cells = 0;     // 0 for wait/turn
    double entry_speed = 0.0;
    double exit_speed = 0.0;
    std::vector<double> cell_offsets;  // for moves, relative to start_time
};

// Per-move timing as executed: a dwell (wait + in-place turn) at the source
// vertex followed by the move into the next one. Noise applies to the move
// part only.
struct StepTiming {
    int to_seq = 0;
    double dwell = 0.0;
    double move = 0.0;
};

// Continuous-time trace of one agent along a (sub-)chain of its TPG vertices.
// vertex_times[j] is the reach time of chain vertex start_seq + j.
struct SpeedProfile {
    int agent_id = 0;
    int start_seq = 0;
    std::vector<double> vertex_times;
    std::vector<double> vertex_speeds;
    std::vector<bool> vertex_is_boundary;  // false inside a multi-cell primitive
    std::vector<ProfileSegment> segments;

    int covered_count() const { return static_cast<int>(vertex_times.size()); }
    int end_seq() const { return start_seq + covered_count() - 1; }
    bool covers(int seq) const { return seq >= start_seq && seq <= end_seq(); }
    double reach_time(int seq) const { return vertex_times[seq - start_seq]; }
    double speed_at(int seq) const { return vertex_speeds[seq - start_seq]; }
    bool boundary_at(int seq) const { return vertex_is_boundary[seq - start_seq]; }
    double start_time() const { return vertex_times.front(); }
    double finish_time() const { return vertex_times.back(); }

    // Per-move execution timings for seqs (start_seq, end_seq].
    std::vector<StepTiming> steps() const;

    std::string to_json() const;
};

}  // namespace ktpg
