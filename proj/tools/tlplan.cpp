#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "tlplan/cli.hpp"

int main(int argc, char** argv)
{
    tlplan::RunConfig cfg;
    CLI::App app{"Multi-robot temporal-logic motion planner"};
    app.require_subcommand(1);

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--workspace", cfg.workspace, "Workspace JSON file");
        sub->add_option("--check-midpoints", cfg.check_midpoints, "Also test the midpoint of every joint move")
            ->expected(0, 1)
            ->default_str("false");
    };

    auto* plan = app.add_subcommand("plan", "Synthesize a minimum-cost prefix-suffix plan");
    add_common(plan);
    plan->add_option("--task", cfg.task, "LTL task file")->required();
    plan->add_option("--mode", cfg.mode, "full, reduced or joint-tuple-only")
        ->check(CLI::IsMember({"full", "reduced", "joint-tuple-only"}));
    plan->add_option("--seed", cfg.seed, "Sampling seed for the reduced modes");
    plan->add_option("--out", cfg.out, "Plan output file")->default_str("plan.json");
    plan->add_option("--report", cfg.report, "Statistics report file");
    plan->add_option("--threads", cfg.threads, "Worker threads (default: TSP_THREADS or all cores)");
    plan->add_option("--max-iterations", cfg.max_iterations, "Stop the reduction loop after this many iterations");
    plan->add_flag("!--no-timing", cfg.timing, "Omit wall-clock fields from the report");

    auto* verify = app.add_subcommand("verify", "Check a plan against a task and workspace");
    add_common(verify);
    verify->add_option("--plan", cfg.plan, "Plan file")->required();
    verify->add_option("--task", cfg.task, "LTL task file")->required();

    auto* simulate = app.add_subcommand("simulate", "Unroll a plan into a trajectory");
    add_common(simulate);
    simulate->add_option("--plan", cfg.plan, "Plan file")->required();
    simulate->add_option("--cycles", cfg.cycles, "Suffix repetitions")->check(CLI::NonNegativeNumber);
    simulate->add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    simulate->add_option("--out", cfg.out, "Trajectory output file");

    auto* stats = app.add_subcommand("stats", "Report product sizes without planning");
    add_common(stats);
    stats->add_option("--task", cfg.task, "LTL task file");
    stats->add_option("--mode", cfg.mode, "full for the complete systems, reduced for the initial reduced ones")
        ->check(CLI::IsMember({"full", "reduced", "joint-tuple-only"}));
    stats->add_option("--sizes", cfg.sizes, "Component sizes overriding the workspace")->delimiter(',');
    stats->add_option("--nba-states", cfg.nba_states, "Automaton size overriding the task");
    stats->add_option("--report", cfg.report, "Statistics report file");
    stats->add_flag("!--no-timing", cfg.timing, "Omit wall-clock fields from the report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, std::cerr, std::cerr);
        const bool help = code == 0;
        nlohmann::ordered_json line{{"command", "tlplan"},
                                    {"status", help ? "ok" : "input_error"},
                                    {"exit_code", help ? 0 : int(tlplan::kExitInput)},
                                    {"message", help ? std::string("help") : std::string(e.what())}};
        std::cout << line.dump() << std::endl;
        return help ? 0 : tlplan::kExitInput;
    }

    if (*plan)
        return tlplan::cmd_plan(cfg, std::cout, std::cerr);
    if (*verify)
        return tlplan::cmd_verify(cfg, std::cout, std::cerr);
    if (*simulate)
        return tlplan::cmd_simulate(cfg, std::cout, std::cerr);
    return tlplan::cmd_stats(cfg, std::cout, std::cerr);
}
