#include "ktpg/plan.hpp"

#include <algorithm>
#include <sstream>

namespace ktpg {

std::vector<Cell> TimedPath::deduplicated() const {
    std::vector<Cell> out;
    for (const Cell& c : cells)
        if (out.empty() || out.back() != c) out.push_back(c);
    return out;
}

int MapfPlan::makespan() const {
    int m = 0;
    for (const TimedPath& p : paths) m = std::max(m, p.last_timestep());
    return m;
}

std::string ValidationReport::summary() const {
    std::ostringstream out;
    out << vertex_collisions.size() << " vertex collision(s), " << edge_collisions.size()
        << " edge collision(s)";
    return out.str();
}

namespace {

[[noreturn]] void fail(int line_no, const std::string& what) {
    throw ParseError("plan parse error at line " + std::to_string(line_no) + ": " + what);
}

}  // namespace

MapfPlan parse_plan(const std::string& text, const GridMap& map) {
    MapfPlan plan;
    plan.map = &map;

    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;

        std::istringstream rec(line);
        TimedPath path;
        char ch = 0;
        if (!(rec >> path.agent_id >> ch) || ch != ':') fail(line_no, "expected 'agent_id:' prefix");
        if (path.agent_id != static_cast<int>(plan.paths.size()))
            fail(line_no, "agent ids must be consecutive from 0, got " + std::to_string(path.agent_id));

        int expected_t = 0;
        while (true) {
            Cell c;
            int t = 0;
            char p1 = 0, comma = 0, p2 = 0, at = 0;
            if (!(rec >> p1)) break;
            if (p1 != '(') fail(line_no, "expected '(' starting a step");
            if (!(rec >> c.x >> comma >> c.y >> p2 >> at >> t) || comma != ',' || p2 != ')' || at != '@')
                fail(line_no, "malformed step, expected (x,y)@t");
            if (t != expected_t)
                fail(line_no, "timestep gap: expected @" + std::to_string(expected_t) + ", got @" +
                                  std::to_string(t));
            if (!map.in_bounds(c)) fail(line_no, "cell " + to_string(c) + " out of map bounds");
            if (map.blocked(c)) fail(line_no, "cell " + to_string(c) + " is blocked");
            if (!path.cells.empty()) {
                const Cell& prev = path.cells.back();
                const int manhattan = std::abs(c.x - prev.x) + std::abs(c.y - prev.y);
                if (manhattan > 1)
                    fail(line_no, "non-adjacent step " + to_string(prev) + " -> " + to_string(c));
            }
            path.cells.push_back(c);
            ++expected_t;
            rec >> ch;  // separating comma, optional before EOL
            if (rec && ch != ',') fail(line_no, "expected ',' between steps");
        }
        if (path.cells.empty()) fail(line_no, "record has no steps");
        plan.paths.push_back(std::move(path));
    }
    return plan;
}

std::string write_plan(const MapfPlan& plan) {
    std::ostringstream out;
    for (const TimedPath& path : plan.paths) {
        out << path.agent_id << ":";
        for (std::size_t t = 0; t < path.cells.size(); ++t) {
            out << (t == 0 ? " " : ", ") << "(" << path.cells[t].x << "," << path.cells[t].y << ")@"
                << t;
        }
        out << "\n";
    }
    return out.str();
}

ValidationReport validate_plan(const MapfPlan& plan) {
    ValidationReport report;
    const int n = plan.agent_count();
    const int horizon = plan.makespan();

    for (int t = 0; t <= horizon; ++t) {
        for (int a = 0; a < n; ++a) {
            for (int b = a + 1; b < n; ++b) {
                const Cell& ca = plan.paths[a].at(t);
                const Cell& cb = plan.paths[b].at(t);
                if (ca == cb) report.vertex_collisions.push_back({a, b, t, ca});
                if (t > 0) {
                    const Cell& pa = plan.paths[a].at(t - 1);
                    const Cell& pb = plan.paths[b].at(t - 1);
                    if (pa == cb && pb == ca && pa != pb)
                        report.edge_collisions.push_back({a, b, t, pa, pb});
                }
            }
        }
    }
    return report;
}

}  // namespace ktpg
