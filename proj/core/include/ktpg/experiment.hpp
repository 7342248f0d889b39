#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ktpg/robot_model.hpp"
#include "ktpg/window.hpp"

namespace ktpg {

struct ExperimentConfig {
    std::string map_path;
    std::string scen_path;   // optional; tasks for generated instances come from here if set
    std::string plan_path;   // optional; instances are generated when absent
    std::string out_dir;     // optional; results.csv / results.json / traces
    std::vector<int> agent_counts = {10};
    std::string algo = "winktpg";  // ktpg | ktpgu | winktpg | adg
    RobotModel model = RobotModel::omnidirectional();
    std::vector<double> epsilons = {0.0};
    double p_threshold = 0.99;
    WindowConfig window;
    std::vector<std::uint64_t> seeds = {1};
    double time_limit = 300.0;   // wall-clock seconds per run
    double adg_period = 0.01;
    bool write_traces = false;
};

struct ResultRow {
    std::string map;
    int agents = 0;
    std::string algo;
    std::string model;
    double eps = 0.0;
    double pd = 0.0;
    double te = 0.0;
    int tp = 0;
    int ne = 0;
    std::uint64_t seed = 0;
    bool success = false;
    double t_ideal = 0.0;
    double t_sum = 0.0;
    double suboptimality = 0.0;
    double makespan = 0.0;
    int windows = 0;
    double planner_time_total = 0.0;
    double planner_time_max = 0.0;
    int collisions = 0;
    int order_violations = 0;
    int fallbacks = 0;
    std::string note;
};

struct ExperimentOutcome {
    std::vector<ResultRow> rows;
    int exit_code = 0;  // 0 ok, 1 some run failed or was unsafe
};

// One run per (agent count, epsilon, seed). Rows are emitted in that nesting
// order; identical configs and seeds reproduce results byte for byte.
ExperimentOutcome run_experiment(const ExperimentConfig& config);

std::string results_csv(const std::vector<ResultRow>& rows);
std::string results_json(const std::vector<ResultRow>& rows);

}  // namespace ktpg
