#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "ktpg/experiment.hpp"
#include "ktpg/instance_gen.hpp"
#include "ktpg/interval.hpp"
#include "ktpg/sipp.hpp"
#include "ktpg/tpg.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

ktpg::GridMap load_map(const std::string& path) {
    return ktpg::parse_map(read_file(path), std::filesystem::path(path).filename().string());
}

ktpg::RobotModel model_by_name(const std::string& name) {
    if (name == "omni") return ktpg::RobotModel::omnidirectional();
    if (name == "diffdrive") return ktpg::RobotModel::differential_drive();
    throw CLI::ValidationError("--model must be omni or diffdrive");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"kinodynamic TPG execution framework"};
    app.require_subcommand(1);

    // run: experiment batches
    auto* run = app.add_subcommand("run", "run execution experiments");
    ktpg::ExperimentConfig config;
    std::string model_name = "omni";
    double te = 10.0;
    int tp = 20;
    bool te_inf = false, tp_inf = false;
    run->add_option("--map", config.map_path, "MovingAI .map file")->required();
    run->add_option("--scen", config.scen_path, "MovingAI .scen file (informational)");
    run->add_option("--plan", config.plan_path, "plan file; generated per seed when omitted");
    run->add_option("--agents", config.agent_counts, "agent counts (generated instances)");
    run->add_option("--algo", config.algo, "ktpg | ktpgu | winktpg | adg");
    run->add_option("--model", model_name, "omni | diffdrive");
    run->add_option("--eps", config.epsilons, "per-move noise levels (std dev per 1 m move)");
    run->add_option("--pd", config.p_threshold, "safety probability threshold P_d");
    run->add_option("--te", te, "replan period, seconds");
    run->add_flag("--te-inf", te_inf, "plan once, never replan");
    run->add_option("--tp", tp, "planning window depth, vertices");
    run->add_flag("--tp-inf", tp_inf, "plan whole remaining chains");
    run->add_option("--ne", config.window.enqueue_count, "enqueued vertex count N_E");
    run->add_option("--seeds", config.seeds, "seeds (one run per seed)");
    run->add_option("--time-limit", config.time_limit, "wall-clock limit per run, seconds");
    run->add_option("--adg-period", config.adg_period, "ADG replan period, seconds");
    run->add_option("--out", config.out_dir, "output directory for results.csv / results.json");
    run->add_flag("--traces", config.write_traces, "dump per-run event traces (JSON lines)");

    // gen: instance generation
    auto* gen = app.add_subcommand("gen", "generate a scenario and collision-free plan");
    std::string gen_map, gen_out = ".";
    int gen_agents = 10;
    std::uint64_t gen_seed = 1;
    gen->add_option("--map", gen_map, "MovingAI .map file")->required();
    gen->add_option("--agents", gen_agents, "agent count")->required();
    gen->add_option("--seed", gen_seed, "generator seed");
    gen->add_option("--out", gen_out, "output directory");

    // validate: plan checking
    auto* validate = app.add_subcommand("validate", "check a plan for collisions");
    std::string val_map, val_plan;
    validate->add_option("--map", val_map, "MovingAI .map file")->required();
    validate->add_option("--plan", val_plan, "plan file")->required();

    // ideal: unconstrained cost baseline
    auto* ideal = app.add_subcommand("ideal", "print the ideal (solo) time sum");
    std::string ideal_map, ideal_plan, ideal_model = "omni";
    ideal->add_option("--map", ideal_map, "MovingAI .map file")->required();
    ideal->add_option("--plan", ideal_plan, "plan file")->required();
    ideal->add_option("--model", ideal_model, "omni | diffdrive");

    // dot: TPG dump
    auto* dot = app.add_subcommand("dot", "dump the plan's TPG in DOT format");
    std::string dot_map, dot_plan, dot_out;
    dot->add_option("--map", dot_map, "MovingAI .map file")->required();
    dot->add_option("--plan", dot_plan, "plan file")->required();
    dot->add_option("--out", dot_out, "output file (stdout when omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (run->parsed()) {
            config.model = model_by_name(model_name);
            config.window.replan_period = te_inf ? ktpg::kInfinity : te;
            config.window.plan_depth = tp_inf ? std::numeric_limits<int>::max() : tp;
            config.window.validate();
            const ktpg::ExperimentOutcome outcome = ktpg::run_experiment(config);
            std::cout << ktpg::results_csv(outcome.rows);
            return outcome.exit_code;
        }
        if (gen->parsed()) {
            const ktpg::GridMap map = load_map(gen_map);
            const ktpg::GeneratedInstance inst = ktpg::generate_instance(map, gen_agents, gen_seed);
            if (!inst.ok) {
                std::cerr << "instance skipped: " << inst.note << "\n";
                return 1;
            }
            std::filesystem::create_directories(gen_out);
            std::ostringstream base;
            base << gen_out << "/" << std::filesystem::path(gen_map).stem().string() << "_a"
                 << gen_agents << "_s" << gen_seed;
            std::ofstream scen(base.str() + ".scen");
            scen << ktpg::write_scenario(inst.tasks, map, map.name());
            std::ofstream plan(base.str() + ".plan");
            plan << ktpg::write_plan(inst.plan);
            std::cout << base.str() << ".scen\n" << base.str() << ".plan\n";
            return 0;
        }
        if (validate->parsed()) {
            const ktpg::GridMap map = load_map(val_map);
            const ktpg::MapfPlan plan = ktpg::parse_plan(read_file(val_plan), map);
            const ktpg::ValidationReport report = ktpg::validate_plan(plan);
            std::cout << report.summary() << "\n";
            return report.ok() ? 0 : 1;
        }
        if (ideal->parsed()) {
            const ktpg::GridMap map = load_map(ideal_map);
            const ktpg::MapfPlan plan = ktpg::parse_plan(read_file(ideal_plan), map);
            std::cout << ktpg::ideal_time_sum(plan, model_by_name(ideal_model)) << "\n";
            return 0;
        }
        if (dot->parsed()) {
            const ktpg::GridMap map = load_map(dot_map);
            const ktpg::MapfPlan plan = ktpg::parse_plan(read_file(dot_plan), map);
            const std::string text = ktpg::build_tpg(plan).to_dot();
            if (dot_out.empty()) {
                std::cout << text;
            } else {
                std::ofstream out(dot_out);
                out << text;
            }
            return 0;
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
