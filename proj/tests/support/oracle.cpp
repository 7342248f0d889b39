#include "oracle.hpp"

#include <cmath>

namespace ktpg::oracle {

namespace {

constexpr double kEps = 1e-9;

struct SequenceContext {
    const std::vector<Cell>& chain;
    const std::vector<ReservedInterval>& intervals;
    const KinematicState& start;
    const PrimitiveSet& prims;
    std::vector<double> turn_dwell;  // required dwell before departing each vertex
    std::vector<int> max_span;       // straight-run limit per vertex
    int last;
    double best = kInfinity;
    bool found = false;
};

// Pointwise-minimal schedule of one fixed primitive sequence. Waiting is
// possible only before primitives entered at zero speed; rigid runs in
// between shift as one block, anchored at the preceding wait point.
void evaluate_sequence(SequenceContext& ctx, const std::vector<const MotionPrimitive*>& seq) {
    const int q = static_cast<int>(seq.size());
    std::vector<int> from_seq(q);  // chain vertex where each primitive starts
    int k = 0;
    for (int j = 0; j < q; ++j) {
        from_seq[j] = k;
        k += seq[j]->cells_spanned;
    }

    std::vector<double> lower_need(q, -kInfinity), upper_cap(q, kInfinity);
    for (int j = 0; j < q; ++j) {
        const MotionPrimitive& p = *seq[j];
        const int base = from_seq[j];
        upper_cap[j] = std::min(upper_cap[j], ctx.intervals[base].upper - p.cell_offsets[0]);
        for (int i = 1; i <= p.cells_spanned; ++i) {
            lower_need[j] =
                std::max(lower_need[j], ctx.intervals[base + i].lower - p.cell_offsets[i - 1]);
            if (i < p.cells_spanned)
                upper_cap[j] =
                    std::min(upper_cap[j], ctx.intervals[base + i].upper - p.cell_offsets[i]);
        }
        upper_cap[j] = std::min(upper_cap[j], ctx.intervals[base + p.cells_spanned].upper -
                                                  p.cell_offsets[p.cells_spanned - 1]);
    }

    std::vector<double> s(q, 0.0);
    int j = 0;
    while (j < q) {
        const bool can_wait = seq[j]->entry_speed == 0.0;
        const double dwell = ctx.turn_dwell[from_seq[j]];
        if (!can_wait && dwell > 0.0) return;  // turning requires rest
        const double chained =
            j == 0 ? ctx.start.time + dwell : s[j - 1] + seq[j - 1]->duration + dwell;
        if (can_wait) {
            s[j] = std::max(chained, lower_need[j]);
            ++j;
        } else {
            s[j] = chained;
            if (s[j] < lower_need[j] - kEps) {
                // Push the rigid block at its last wait point and replay.
                int anchor = j;
                while (anchor > 0 && seq[anchor]->entry_speed != 0.0) --anchor;
                if (anchor == 0 && seq[0]->entry_speed != 0.0) return;  // fixed start, no slack
                s[anchor] += lower_need[j] - s[j];
                j = anchor + 1;
            } else {
                ++j;
            }
        }
    }
    for (int i = 0; i < q; ++i)
        if (s[i] > upper_cap[i] + kEps) return;

    const double finish = q == 0 ? ctx.start.time : s[q - 1] + seq[q - 1]->duration;
    ctx.found = true;
    ctx.best = std::min(ctx.best, finish);
}

void enumerate(SequenceContext& ctx, std::vector<const MotionPrimitive*>& seq, int at, double speed) {
    if (at == ctx.last && speed == 0.0) evaluate_sequence(ctx, seq);
    if (at >= ctx.last) return;
    const int speed_idx = ctx.prims.model().speed_index(speed);
    for (const MotionPrimitive& p : ctx.prims.from_speed(speed_idx)) {
        if (at + p.cells_spanned > ctx.last) continue;
        if (p.cells_spanned > ctx.max_span[at]) continue;
        seq.push_back(&p);
        enumerate(ctx, seq, at + p.cells_spanned, p.exit_speed);
        seq.pop_back();
    }
}

}  // namespace

OracleResult min_finish_time(const std::vector<Cell>& chain,
                             const std::vector<ReservedInterval>& intervals,
                             const KinematicState& start, const PrimitiveSet& primitives) {
    SequenceContext ctx{chain, intervals, start, primitives, {}, {}, 0};
    ctx.last = static_cast<int>(chain.size()) - 1;

    if (start.time < intervals[0].lower - kEps || start.time > intervals[0].upper + kEps)
        return {};

    const int n = static_cast<int>(chain.size());
    ctx.turn_dwell.assign(n, 0.0);
    ctx.max_span.assign(n, 0);
    std::vector<Direction> dir(std::max(0, n - 1));
    for (int k = 0; k + 1 < n; ++k) dir[k] = step_direction(chain[k], chain[k + 1]);
    const RobotModel& model = primitives.model();
    if (model.needs_orientation()) {
        for (int k = 0; k + 1 < n; ++k) {
            const Direction in = k == 0 ? start.orientation : dir[k - 1];
            ctx.turn_dwell[k] = model.turn_time(quarter_turns_between(in, dir[k]));
        }
        if (n >= 2) ctx.max_span[n - 2] = 1;
        for (int k = n - 3; k >= 0; --k)
            ctx.max_span[k] = dir[k + 1] == dir[k] ? ctx.max_span[k + 1] + 1 : 1;
    } else {
        for (int k = 0; k + 1 < n; ++k) ctx.max_span[k] = ctx.last - k;
    }

    std::vector<const MotionPrimitive*> seq;
    enumerate(ctx, seq, 0, start.speed);
    if (!ctx.found) return {};
    return {true, ctx.best};
}

double normal_quantile(double p) {
    double lo = -10.0, hi = 10.0;
    while (hi - lo > 1e-13) {
        const double mid = 0.5 * (lo + hi);
        const double cdf = 0.5 * std::erfc(-mid / std::sqrt(2.0));
        (cdf < p ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace ktpg::oracle
