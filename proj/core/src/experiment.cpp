#include "ktpg/experiment.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "ktpg/adg.hpp"
#include "ktpg/instance_gen.hpp"
#include "ktpg/ktpg.hpp"
#include "ktpg/log.hpp"
#include "ktpg/metrics.hpp"
#include "ktpg/sipp.hpp"
#include "ktpg/trace_check.hpp"
#include "ktpg/winktpg.hpp"

namespace ktpg {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// One-shot execution: dispatch the committed profiles in full and run the
// simulator dry.
ExecutionTrace execute_profiles(Simulator& sim, const std::vector<SpeedProfile>& profiles) {
    for (const SpeedProfile& profile : profiles) {
        std::vector<DispatchStep> steps;
        for (const StepTiming& st : profile.steps())
            steps.push_back(DispatchStep{st.to_seq, st.dwell, st.move});
        sim.dispatch(profile.agent_id, 0, steps, 0.0);
    }
    sim.advance_all();
    return sim.take_trace();
}

ResultRow run_one(const ExperimentConfig& config, const GridMap& map, const MapfPlan& plan,
                  double eps, std::uint64_t seed) {
    ResultRow row;
    row.map = map.name();
    row.agents = plan.agent_count();
    row.algo = config.algo;
    row.model = config.model.kind == RobotKind::Omnidirectional ? "omni" : "diffdrive";
    row.eps = eps;
    row.pd = config.p_threshold;
    row.te = config.window.replan_period;
    row.tp = config.window.plan_depth;
    row.ne = config.window.enqueue_count;
    row.seed = seed;

    const Tpg tpg = build_tpg(plan);
    row.t_ideal = ideal_time_sum(plan, config.model);
    const NoiseModel noise = NoiseModel::uniform(plan.agent_count(), eps, seed);
    Simulator sim(tpg, noise);

    ExecutionTrace trace;
    if (config.algo == "ktpg" || config.algo == "ktpgu") {
        std::optional<UncertaintyModel> unc;
        if (config.algo == "ktpgu")
            unc = UncertaintyModel::uniform(plan.agent_count(), eps, config.p_threshold);
        KtpgRunStats stats;
        const std::vector<SpeedProfile> profiles = run_ktpg(tpg, config.model, unc, &stats);
        trace = execute_profiles(sim, profiles);
        trace.window_count = 1;
    } else if (config.algo == "winktpg") {
        ExecutionOptions options;
        options.window = config.window;
        options.uncertainty =
            UncertaintyModel::uniform(plan.agent_count(), eps, config.p_threshold);
        options.wall_clock_limit = config.time_limit;
        trace = run_execution_loop(sim, config.model, options);
    } else if (config.algo == "adg") {
        trace = run_adg_baseline(sim, config.model, config.adg_period, config.time_limit);
    } else {
        throw std::invalid_argument("unknown algorithm '" + config.algo + "'");
    }

    const Metrics metrics = compute_metrics(trace, tpg, row.t_ideal);
    const CollisionReport report = check_trace(trace, tpg);
    row.success = metrics.success;
    row.t_sum = metrics.t_sum;
    row.suboptimality = metrics.suboptimality;
    row.makespan = metrics.makespan;
    row.windows = metrics.window_count;
    row.planner_time_total = metrics.planner_time_total;
    row.planner_time_max = metrics.planner_time_max;
    row.collisions = static_cast<int>(report.overlaps.size());
    row.order_violations = static_cast<int>(report.order_violations.size());
    row.fallbacks = trace.fallback_plans;

    if (config.write_traces && !config.out_dir.empty()) {
        std::ostringstream name;
        name << config.out_dir << "/trace_" << row.algo << "_a" << row.agents << "_e" << eps
             << "_s" << seed << ".jsonl";
        std::ofstream out(name.str());
        out << trace.events_jsonl();
    }
    return row;
}

}  // namespace

ExperimentOutcome run_experiment(const ExperimentConfig& config) {
    ExperimentOutcome outcome;
    const std::string map_text = read_file(config.map_path);
    const GridMap map =
        parse_map(map_text, std::filesystem::path(config.map_path).filename().string());

    std::vector<int> agent_counts = config.agent_counts;
    if (!config.plan_path.empty()) agent_counts = {0};  // the plan fixes the team

    for (int agents : agent_counts) {
        for (std::uint64_t seed : config.seeds) {
            // The instance is independent of epsilon so rows pair per seed.
            MapfPlan plan;
            std::string instance_note;
            if (!config.plan_path.empty()) {
                plan = parse_plan(read_file(config.plan_path), map);
                const ValidationReport validation = validate_plan(plan);
                if (!validation.ok())
                    throw std::runtime_error("input plan has collisions: " + validation.summary());
            } else {
                const GeneratedInstance inst = generate_instance(map, agents, seed);
                if (!inst.ok) {
                    instance_note = inst.note;
                } else {
                    plan = inst.plan;
                }
            }

            for (double eps : config.epsilons) {
                if (!instance_note.empty()) {
                    ResultRow row;
                    row.map = map.name();
                    row.agents = agents;
                    row.algo = config.algo;
                    row.eps = eps;
                    row.seed = seed;
                    row.note = "skipped: " + instance_note;
                    outcome.rows.push_back(row);
                    outcome.exit_code = 1;
                    log::warn("instance skipped (agents=%d seed=%llu): %s", agents,
                              static_cast<unsigned long long>(seed), instance_note.c_str());
                    continue;
                }
                ResultRow row;
                try {
                    row = run_one(config, map, plan, eps, seed);
                } catch (const TimeLimitExceeded& e) {
                    row.map = map.name();
                    row.agents = agents;
                    row.algo = config.algo;
                    row.eps = eps;
                    row.seed = seed;
                    row.note = e.what();
                }
                if (!row.success || row.collisions > 0) outcome.exit_code = 1;
                outcome.rows.push_back(std::move(row));
            }
        }
    }

    if (!config.out_dir.empty()) {
        std::filesystem::create_directories(config.out_dir);
        std::ofstream csv(config.out_dir + "/results.csv", std::ios::binary);
        csv << results_csv(outcome.rows);
        std::ofstream json(config.out_dir + "/results.json", std::ios::binary);
        json << results_json(outcome.rows);
    }
    return outcome;
}

std::string results_csv(const std::vector<ResultRow>& rows) {
    std::ostringstream out;
    out.precision(6);
    out << std::fixed;
    out << "# ktpg-results v1\n";
    out << "map,agents,algo,model,eps,pd,te,tp,ne,seed,success,t_ideal,t_sum,suboptimality,"
           "makespan,windows,planner_time_total,planner_time_max,collisions,order_violations,"
           "fallbacks,note\n";
    for (const ResultRow& r : rows) {
        out << r.map << ',' << r.agents << ',' << r.algo << ',' << r.model << ',' << r.eps << ','
            << r.pd << ',' << r.te << ',' << r.tp << ',' << r.ne << ',' << r.seed << ','
            << (r.success ? 1 : 0) << ',' << r.t_ideal << ',' << r.t_sum << ',' << r.suboptimality
            << ',' << r.makespan << ',' << r.windows << ',' << r.planner_time_total << ','
            << r.planner_time_max << ',' << r.collisions << ',' << r.order_violations << ','
            << r.fallbacks << ',' << r.note << '\n';
    }
    return out.str();
}

std::string results_json(const std::vector<ResultRow>& rows) {
    nlohmann::json arr = nlohmann::json::array();
    for (const ResultRow& r : rows) {
        arr.push_back({{"map", r.map},
                       {"agents", r.agents},
                       {"algo", r.algo},
                       {"model", r.model},
                       {"eps", r.eps},
                       {"pd", r.pd},
                       {"te", r.te},
                       {"tp", r.tp},
                       {"ne", r.ne},
                       {"seed", r.seed},
                       {"success", r.success},
                       {"t_ideal", r.t_ideal},
                       {"t_sum", r.t_sum},
                       {"suboptimality", r.suboptimality},
                       {"makespan", r.makespan},
                       {"windows", r.windows},
                       {"planner_time_total", r.planner_time_total},
                       {"planner_time_max", r.planner_time_max},
                       {"collisions", r.collisions},
                       {"order_violations", r.order_violations},
                       {"fallbacks", r.fallbacks},
                       {"note", r.note}});
    }
    return arr.dump(2) + "\n";
}

}  // namespace ktpg
