#include "ktpg/instance_gen.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <unordered_set>

#include "ktpg/noise.hpp"

namespace ktpg {

namespace {

constexpr int kNever = std::numeric_limits<int>::max();

int bounded(SplitMix64& rng, int n) { return static_cast<int>(rng.next() % n); }

std::vector<int> bfs_distances(const GridMap& map, const Cell& from) {
    std::vector<int> dist(map.cell_count(), kNever);
    std::queue<Cell> queue;
    dist[map.index(from)] = 0;
    queue.push(from);
    while (!queue.empty()) {
        const Cell c = queue.front();
        queue.pop();
        const Cell neighbors[4] = {{c.x + 1, c.y}, {c.x - 1, c.y}, {c.x, c.y + 1}, {c.x, c.y - 1}};
        for (const Cell& nb : neighbors) {
            if (!map.passable(nb) || dist[map.index(nb)] != kNever) continue;
            dist[map.index(nb)] = dist[map.index(c)] + 1;
            queue.push(nb);
        }
    }
    return dist;
}

struct Reservations {
    const GridMap& map;
    std::unordered_set<std::int64_t> vertex;  // cell_index * stride + t
    std::unordered_set<std::int64_t> edge;    // (from * cells + to) * stride + t
    std::vector<int> parked_from;             // per cell, first timestep parked
    std::vector<int> last_visit;              // per cell, latest reserved timestep
    int stride;

    explicit Reservations(const GridMap& m, int horizon)
        : map(m),
          parked_from(m.cell_count(), kNever),
          last_visit(m.cell_count(), -1),
          stride(horizon + 2) {}

    void block_vertex(const Cell& c, int t) { vertex.insert(static_cast<std::int64_t>(map.index(c)) * stride + t); }
    void block_edge(const Cell& from, const Cell& to, int t) {
        edge.insert((static_cast<std::int64_t>(map.index(from)) * map.cell_count() + map.index(to)) *
                        stride +
                    t);
    }
    bool vertex_blocked(const Cell& c, int t) const {
        if (t >= parked_from[map.index(c)]) return true;
        return vertex.count(static_cast<std::int64_t>(map.index(c)) * stride + t) > 0;
    }
    bool edge_blocked(const Cell& from, const Cell& to, int t) const {
        return edge.count(
                   (static_cast<std::int64_t>(map.index(from)) * map.cell_count() + map.index(to)) *
                       stride +
                   t) > 0;
    }

    void add_path(const TimedPath& path) {
        for (int t = 0; t < static_cast<int>(path.cells.size()); ++t) {
            block_vertex(path.cells[t], t);
            last_visit[map.index(path.cells[t])] = std::max(last_visit[map.index(path.cells[t])], t);
            if (t > 0 && path.cells[t] != path.cells[t - 1])
                block_edge(path.cells[t], path.cells[t - 1], t);  // forbid the reverse swap
        }
        parked_from[map.index(path.goal())] =
            std::min(parked_from[map.index(path.goal())], path.last_timestep());
    }
};

// Space-time A* for one agent against the reservation table. Returns an empty
// path on failure.
std::vector<Cell> plan_single(const GridMap& map, const Cell& start, const Cell& goal,
                              const Reservations& res, int horizon) {
    const std::vector<int> dist = bfs_distances(map, goal);
    if (dist[map.index(start)] == kNever) return {};
    // The agent may only finish once no earlier agent still needs its goal.
    if (res.parked_from[map.index(goal)] != kNever) return {};
    const int goal_free_after = res.last_visit[map.index(goal)];

    struct Node {
        int f, t;
        Cell cell;
        int parent;
    };
    struct Greater {
        bool operator()(const Node& a, const Node& b) const {
            if (a.f != b.f) return a.f > b.f;
            if (a.t != b.t) return a.t < b.t;  // deeper (later) first on ties
            return std::tie(a.cell.x, a.cell.y) > std::tie(b.cell.x, b.cell.y);
        }
    };

    std::vector<Node> pool;
    std::priority_queue<Node, std::vector<Node>, Greater> open;
    std::unordered_set<std::int64_t> closed;
    const auto key = [&](const Cell& c, int t) {
        return static_cast<std::int64_t>(map.index(c)) * (horizon + 2) + t;
    };

    if (res.vertex_blocked(start, 0)) return {};
    pool.push_back({dist[map.index(start)], 0, start, -1});
    open.push(pool.back());

    while (!open.empty()) {
        Node node = open.top();
        open.pop();
        if (!closed.insert(key(node.cell, node.t)).second) continue;
        const int pool_index = static_cast<int>(pool.size());
        pool.push_back(node);

        if (node.cell == goal && node.t > goal_free_after) {
            std::vector<Cell> cells;
            for (int i = pool_index; i != -1; i = pool[i].parent) cells.push_back(pool[i].cell);
            std::reverse(cells.begin(), cells.end());
            return cells;
        }
        if (node.t >= horizon) continue;

        const Cell c = node.cell;
        const Cell candidates[5] = {
            c, {c.x + 1, c.y}, {c.x - 1, c.y}, {c.x, c.y + 1}, {c.x, c.y - 1}};
        for (const Cell& nb : candidates) {
            if (!map.passable(nb)) continue;
            if (dist[map.index(nb)] == kNever) continue;
            const int t = node.t + 1;
            if (res.vertex_blocked(nb, t)) continue;
            if (nb != c && res.edge_blocked(c, nb, t)) continue;
            if (closed.count(key(nb, t))) continue;
            open.push({t + dist[map.index(nb)], t, nb, pool_index});
        }
    }
    return {};
}

}  // namespace

GeneratedInstance generate_instance(const GridMap& map, int n_agents, std::uint64_t seed,
                                    int max_orders) {
    GeneratedInstance out;
    if (n_agents <= 0) throw std::invalid_argument("agent count must be positive");

    std::vector<int> free_cells;
    for (int i = 0; i < map.cell_count(); ++i)
        if (!map.blocked(map.cell(i))) free_cells.push_back(i);
    if (static_cast<int>(free_cells.size()) < 2 * n_agents) {
        out.note = "map too small for " + std::to_string(n_agents) + " agents";
        return out;
    }

    SplitMix64 rng(seed ^ 0x6a09e667f3bcc909ULL);
    const auto sample_distinct = [&](int count) {
        std::vector<int> pool = free_cells;
        std::vector<int> picked;
        for (int i = 0; i < count; ++i) {
            const int j = bounded(rng, static_cast<int>(pool.size()));
            picked.push_back(pool[j]);
            pool[j] = pool.back();
            pool.pop_back();
        }
        return picked;
    };
    const std::vector<int> starts = sample_distinct(n_agents);
    const std::vector<int> goals = sample_distinct(n_agents);

    out.tasks.resize(n_agents);
    for (int a = 0; a < n_agents; ++a)
        out.tasks[a] = {a, map.cell(starts[a]), map.cell(goals[a])};

    std::vector<int> order(n_agents);
    for (int a = 0; a < n_agents; ++a) order[a] = a;

    // Generous horizon: prioritized paths stay far below it on solvable maps.
    const int horizon = map.cell_count() * (n_agents + 2);

    for (int attempt = 0; attempt < max_orders; ++attempt) {
        // Fisher-Yates with the portable generator; a fresh order per attempt.
        for (int i = n_agents - 1; i > 0; --i)
            std::swap(order[i], order[bounded(rng, i + 1)]);

        std::vector<TimedPath> paths(n_agents);
        Reservations res(map, horizon);
        bool failed = false;
        for (int a : order) {
            const std::vector<Cell> cells =
                plan_single(map, out.tasks[a].start, out.tasks[a].goal, res, horizon);
            if (cells.empty()) {
                failed = true;
                break;
            }
            paths[a] = {a, cells};
            res.add_path(paths[a]);
        }
        if (failed) continue;

        out.plan.paths = std::move(paths);
        out.plan.map = &map;
        if (!validate_plan(out.plan).ok())
            throw std::logic_error("generated plan fails validation (generator bug)");
        out.ok = true;
        return out;
    }
    out.note = "no collision-free plan found after " + std::to_string(max_orders) + " orders";
    return out;
}

}  // namespace ktpg
