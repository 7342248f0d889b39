#include "ktpg/sipp.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace ktpg {

namespace {

constexpr double kEps = 1e-9;

struct Node {
    int seq = 0;
    int speed_idx = 0;
    double alpha = 0.0;  // earliest feasible arrival at seq
    double beta = 0.0;   // latest useful arrival at seq
    int parent = -1;
    const MotionPrimitive* via = nullptr;
    double s_lo = 0.0, s_hi = 0.0;  // feasible start range of `via`
};

struct OpenEntry {
    double f;
    double alpha;
    double speed;
    int order;
    int node;
};

struct OpenGreater {
    bool operator()(const OpenEntry& a, const OpenEntry& b) const {
        if (a.f != b.f) return a.f > b.f;
        if (a.alpha != b.alpha) return a.alpha > b.alpha;   // lower g first
        if (a.speed != b.speed) return a.speed < b.speed;   // then higher speed
        return a.order > b.order;
    }
};

SpeedProfile reconstruct(const std::vector<Node>& pool, int goal, const std::vector<Cell>& chain,
                         const std::vector<double>& speeds, const std::vector<double>& turn_dwell,
                         const KinematicState& start, int agent_id, int seq_offset) {
    std::vector<int> path;
    for (int i = goal; i != -1; i = pool[i].parent) path.push_back(i);
    std::reverse(path.begin(), path.end());

    // Pick concrete times backward from the optimal goal arrival; waits are
    // realized only at zero-speed vertices.
    const std::size_t hops = path.size();
    std::vector<double> arrival(hops), prim_start(hops, 0.0);
    arrival.back() = pool[path.back()].alpha;
    for (std::size_t i = hops - 1; i >= 1; --i) {
        const Node& nd = pool[path[i]];
        double s = arrival[i] - nd.via->duration;
        s = std::clamp(s, nd.s_lo, nd.s_hi);
        prim_start[i] = s;
        const Node& par = pool[path[i - 1]];
        arrival[i - 1] = speeds[par.speed_idx] == 0.0 ? par.alpha : s;
    }

    const int n = static_cast<int>(chain.size());
    SpeedProfile prof;
    prof.agent_id = agent_id;
    prof.start_seq = seq_offset;
    prof.vertex_times.assign(n, 0.0);
    prof.vertex_speeds.assign(n, 0.0);
    prof.vertex_is_boundary.assign(n, false);
    prof.vertex_times[0] = arrival[0];
    prof.vertex_speeds[0] = start.speed;
    prof.vertex_is_boundary[0] = true;

    for (std::size_t i = 1; i < hops; ++i) {
        const Node& nd = pool[path[i]];
        const Node& par = pool[path[i - 1]];
        const int k = par.seq;
        const double s = prim_start[i];
        if (speeds[par.speed_idx] == 0.0) {
            const double gap = s - arrival[i - 1];
            const double turn = turn_dwell[k];
            if (turn > 0.0) {
                ProfileSegment seg;
                seg.kind = PrimitiveKind::Turn;
                seg.start_time = arrival[i - 1];
                seg.duration = turn;
                seg.from_seq = k + seq_offset;
                prof.segments.push_back(seg);
            }
            if (gap - turn > kEps) {
                ProfileSegment seg;
                seg.kind = PrimitiveKind::Wait;
                seg.start_time = arrival[i - 1] + turn;
                seg.duration = gap - turn;
                seg.from_seq = k + seq_offset;
                prof.segments.push_back(seg);
            }
        }
        ProfileSegment seg;
        seg.kind = PrimitiveKind::Move;
        seg.start_time = s;
        seg.duration = nd.via->duration;
        seg.from_seq = k + seq_offset;
        seg.cells = nd.via->cells_spanned;
        seg.entry_speed = nd.via->entry_speed;
        seg.exit_speed = nd.via->exit_speed;
        seg.cell_offsets = nd.via->cell_offsets;
        prof.segments.push_back(seg);
        for (int j = 1; j <= nd.via->cells_spanned; ++j) {
            prof.vertex_times[k + j] = s + nd.via->cell_offsets[j - 1];
            prof.vertex_speeds[k + j] = nd.via->cell_speeds[j - 1];
            prof.vertex_is_boundary[k + j] = j == nd.via->cells_spanned;
        }
    }
    return prof;
}

}  // namespace

Direction arrival_direction(const std::vector<Cell>& chain, int seq, Direction fallback) {
    if (seq <= 0) return fallback;
    return step_direction(chain[seq - 1], chain[seq]);
}

std::optional<SpeedProfile> plan_speed_profile(const std::vector<Cell>& chain,
                                               const std::vector<ReservedInterval>& intervals,
                                               const KinematicState& start,
                                               const PrimitiveSet& primitives, int agent_id,
                                               int seq_offset) {
    const RobotModel& model = primitives.model();
    const int n = static_cast<int>(chain.size());
    if (n == 0) throw std::invalid_argument("empty chain");
    if (static_cast<int>(intervals.size()) != n)
        throw std::invalid_argument("one reserved interval per chain vertex required");
    const int start_speed_idx = model.speed_index(start.speed);
    if (start_speed_idx < 0) throw std::invalid_argument("start speed is not a discrete vertex speed");

    if (start.time < intervals[0].lower - kEps || start.time > intervals[0].upper + kEps)
        return std::nullopt;

    const int last = n - 1;
    const std::vector<double>& speeds = model.discrete_speeds;

    if (n == 1) {
        if (start.speed != 0.0) return std::nullopt;
        SpeedProfile prof;
        prof.agent_id = agent_id;
        prof.start_seq = seq_offset;
        prof.vertex_times = {start.time};
        prof.vertex_speeds = {0.0};
        prof.vertex_is_boundary = {true};
        return prof;
    }

    std::vector<Direction> move_dir(last);
    for (int k = 0; k < last; ++k) move_dir[k] = step_direction(chain[k], chain[k + 1]);

    std::vector<double> turn_dwell(n, 0.0);
    std::vector<int> max_span(n, 0);
    if (model.needs_orientation()) {
        for (int k = 0; k < last; ++k) {
            const Direction in = k == 0 ? start.orientation : move_dir[k - 1];
            turn_dwell[k] = model.turn_time(quarter_turns_between(in, move_dir[k]));
        }
        max_span[last - 1] = 1;
        for (int k = last - 2; k >= 0; --k)
            max_span[k] = move_dir[k + 1] == move_dir[k] ? max_span[k + 1] + 1 : 1;
    } else {
        for (int k = 0; k < last; ++k) max_span[k] = last - k;
    }
    if (start.speed > 0.0 && turn_dwell[0] > 0.0) return std::nullopt;

    std::vector<Node> pool;
    std::priority_queue<OpenEntry, std::vector<OpenEntry>, OpenGreater> open;
    const int speed_count = static_cast<int>(speeds.size());
    std::vector<std::vector<std::pair<double, double>>> seen(
        static_cast<std::size_t>(n) * speed_count);
    int order = 0;

    const auto h = [&](int seq) { return (last - seq) * kCellSize / model.v_max; };
    const auto push = [&](Node nd) {
        auto& windows = seen[static_cast<std::size_t>(nd.seq) * speed_count + nd.speed_idx];
        for (const auto& [a, b] : windows)
            if (a <= nd.alpha + 1e-12 && b >= nd.beta - 1e-12) return;
        windows.emplace_back(nd.alpha, nd.beta);
        pool.push_back(nd);
        open.push({nd.alpha + h(nd.seq), nd.alpha, speeds[nd.speed_idx], order++,
                   static_cast<int>(pool.size()) - 1});
    };

    push(Node{0, start_speed_idx, start.time, start.time, -1, nullptr, 0.0, 0.0});

    while (!open.empty()) {
        const OpenEntry top = open.top();
        open.pop();
        const Node nd = pool[top.node];
        const double u = speeds[nd.speed_idx];

        if (nd.seq == last && u == 0.0)
            return reconstruct(pool, top.node, chain, speeds, turn_dwell, start, agent_id,
                               seq_offset);

        double base_lo, base_hi;
        if (u == 0.0) {
            base_lo = nd.alpha + turn_dwell[nd.seq];
            base_hi = kInfinity;
        } else {
            if (turn_dwell[nd.seq] > 0.0) continue;  // cannot turn at speed
            base_lo = nd.alpha;
            base_hi = nd.beta;
        }

        for (const MotionPrimitive& p : primitives.from_speed(nd.speed_idx)) {
            const int m = p.cells_spanned;
            if (nd.seq + m > last || m > max_span[nd.seq]) continue;
            const int land = nd.seq + m;
            const double w = p.exit_speed;
            if (w > 0.0 && (land == last || turn_dwell[land] > 0.0)) continue;

            double s_lo = base_lo;
            double s_hi = std::min(base_hi, intervals[nd.seq].upper - p.cell_offsets[0]);
            for (int j = 1; j <= m; ++j) {
                s_lo = std::max(s_lo, intervals[nd.seq + j].lower - p.cell_offsets[j - 1]);
                if (j < m)
                    s_hi = std::min(s_hi, intervals[nd.seq + j].upper - p.cell_offsets[j]);
            }
            s_hi = std::min(s_hi, intervals[land].upper - p.cell_offsets[m - 1]);
            if (s_lo > s_hi + kEps) continue;
            s_hi = std::max(s_hi, s_lo);

            push(Node{land, model.speed_index(w), s_lo + p.duration, s_hi + p.duration, top.node,
                      &p, s_lo, s_hi});
        }
    }
    return std::nullopt;
}

double min_traverse_time(const std::vector<Cell>& chain, const KinematicState& start,
                         const PrimitiveSet& primitives) {
    const std::vector<ReservedInterval> free_intervals(chain.size());
    const auto profile = plan_speed_profile(chain, free_intervals, start, primitives);
    if (!profile)
        throw std::logic_error("unconstrained chain traversal is infeasible (primitive set bug)");
    return profile->finish_time() - start.time;
}

double ideal_time_sum(const MapfPlan& plan, const RobotModel& model) {
    const PrimitiveSet primitives(model);
    double total = 0.0;
    for (const TimedPath& path : plan.paths) {
        const std::vector<Cell> chain = path.deduplicated();
        KinematicState start;
        if (chain.size() > 1) start.orientation = step_direction(chain[0], chain[1]);
        total += min_traverse_time(chain, start, primitives);
    }
    return total;
}

}  // namespace ktpg
