#include "ktpg/profile.hpp"

#include <cmath>

#include "json.hpp"

namespace ktpg {

std::vector<StepTiming> SpeedProfile::steps() const {
    const int moves = covered_count() - 1;
    std::vector<double> move_duration(moves, 0.0);
    for (const ProfileSegment& seg : segments) {
        if (seg.kind != PrimitiveKind::Move) continue;
        for (int i = 0; i < seg.cells; ++i) {
            const int j = seg.from_seq + i - start_seq;
            move_duration[j] = seg.cell_offsets[i] - (i > 0 ? seg.cell_offsets[i - 1] : 0.0);
        }
    }
    std::vector<StepTiming> out(moves);
    for (int j = 0; j < moves; ++j) {
        out[j].to_seq = start_seq + j + 1;
        out[j].move = move_duration[j];
        out[j].dwell = vertex_times[j + 1] - vertex_times[j] - move_duration[j];
        if (out[j].dwell < 0.0 && out[j].dwell > -1e-9) out[j].dwell = 0.0;
    }
    return out;
}

std::string SpeedProfile::to_json() const {
    nlohmann::json j;
    j["agent"] = agent_id;
    j["start_seq"] = start_seq;
    j["vertex_times"] = vertex_times;
    j["vertex_speeds"] = vertex_speeds;
    j["segments"] = nlohmann::json::array();
    for (const ProfileSegment& seg : segments) {
        const char* kind = seg.kind == PrimitiveKind::Move ? "move"
                           : seg.kind == PrimitiveKind::Wait ? "wait"
                                                             : "turn";
        j["segments"].push_back({{"kind", kind},
                                 {"t", seg.start_time},
                                 {"duration", seg.duration},
                                 {"from_seq", seg.from_seq},
                                 {"cells", seg.cells},
                                 {"v_in", seg.entry_speed},
                                 {"v_out", seg.exit_speed}});
    }
    return j.dump();
}

}  // namespace ktpg
