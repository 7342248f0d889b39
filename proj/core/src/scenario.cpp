#include "ktpg/scenario.hpp"

#include <cmath>
#include <sstream>

namespace ktpg {

std::vector<AgentTask> parse_scenario(const std::string& text, int count, const GridMap* map) {
    if (count < 0) throw std::invalid_argument("task count must be non-negative");

    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    std::vector<AgentTask> tasks;
    tasks.reserve(count);

    while (static_cast<int>(tasks.size()) < count && std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line_no == 1 && line.rfind("version", 0) == 0) continue;

        std::istringstream fields(line);
        int bucket = 0, map_w = 0, map_h = 0;
        std::string map_name;
        AgentTask task;
        double dist = 0.0;
        if (!(fields >> bucket >> map_name >> map_w >> map_h >> task.start.x >> task.start.y >>
              task.goal.x >> task.goal.y >> dist))
            throw ParseError("scen parse error at line " + std::to_string(line_no) +
                             ": expected 9 fields");
        task.agent_id = static_cast<int>(tasks.size());
        if (map != nullptr) {
            for (const Cell& c : {task.start, task.goal}) {
                if (!map->in_bounds(c))
                    throw ParseError("scen parse error at line " + std::to_string(line_no) + ": cell " +
                                     to_string(c) + " out of map bounds");
                if (map->blocked(c))
                    throw ParseError("scen parse error at line " + std::to_string(line_no) + ": cell " +
                                     to_string(c) + " is blocked");
            }
        }
        tasks.push_back(task);
    }
    if (static_cast<int>(tasks.size()) < count)
        throw ParseError("scen file has only " + std::to_string(tasks.size()) + " tasks, " +
                         std::to_string(count) + " requested");
    return tasks;
}

std::string write_scenario(const std::vector<AgentTask>& tasks, const GridMap& map,
                           const std::string& map_name) {
    std::ostringstream out;
    out << "version 1\n";
    for (const AgentTask& t : tasks) {
        const double dist = std::abs(t.goal.x - t.start.x) + std::abs(t.goal.y - t.start.y);
        out << 0 << '\t' << map_name << '\t' << map.width() << '\t' << map.height() << '\t'
            << t.start.x << '\t' << t.start.y << '\t' << t.goal.x << '\t' << t.goal.y << '\t'
            << dist << '\n';
    }
    return out.str();
}

}  // namespace ktpg
