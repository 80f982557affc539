#include "tlplan/cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "tlplan/buchi.hpp"
#include "tlplan/ltl.hpp"
#include "tlplan/product.hpp"
#include "tlplan/reduction.hpp"
#include "tlplan/runtime.hpp"
#include "tlplan/synthesis.hpp"
#include "tlplan/workspace.hpp"

namespace tlplan {

namespace {

using ojson = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

/// Failure carrying its exit code and extra status fields.
struct CommandError {
    int code;
    std::string status;
    std::string message;
    ojson extra = ojson::object();
};

[[noreturn]] void fail(int code, const std::string& status, const std::string& message, ojson extra = ojson::object())
{
    throw CommandError{code, status, message, std::move(extra)};
}

std::string read_file(const std::string& path, const char* what)
{
    if (path.empty())
        fail(kExitInput, "input_error", std::string("missing ") + what + " path");
    std::ifstream in(path, std::ios::binary);
    if (!in)
        fail(kExitInput, "input_error", std::string("cannot read ") + what + " '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text))
        fail(kExitInput, "input_error", "cannot write '" + path + "'");
}

void require_writable(const std::string& path)
{
    if (path.empty())
        return;
    const auto dir = std::filesystem::path(path).parent_path();
    if (!dir.empty() && !std::filesystem::is_directory(dir))
        fail(kExitInput, "input_error", "output directory '" + dir.string() + "' does not exist");
}

Formula load_task(const std::string& path)
{
    const std::string text = read_file(path, "task file");
    try {
        return parse(text);
    } catch (const ParseError& e) {
        fail(kExitInput, "input_error", std::string("task file: ") + e.what(),
             ojson{{"line", e.line()}, {"column", e.column()}});
    }
}

/// Loaded workspace with one full transition system per robot.
struct Scene {
    WorkspaceFile file;
    std::shared_ptr<const Workspace> ws;
    std::vector<Wts> full;
    std::vector<std::string> names;
    ProximityOptions proximity;
};

Scene load_scene(const RunConfig& cfg)
{
    Scene s;
    s.file = parse_workspace_json(read_file(cfg.workspace, "workspace file"));
    if (s.file.robots.empty())
        throw InputError("workspace file lists no robots");
    s.ws = std::make_shared<const Workspace>(s.file.config);
    for (std::size_t i = 0; i < s.file.robots.size(); ++i) {
        s.full.push_back(build_wts(s.ws, static_cast<int>(i), s.file.robots[i].name, s.file.robots[i].init));
        s.names.push_back(s.file.robots[i].name);
    }
    s.proximity = {s.file.config.r_influence_robot, cfg.check_midpoints};
    return s;
}

/// Every atom must name a known robot and an existing waypoint; `obs` is allowed.
void check_alphabet(const Formula& f, const Scene& s)
{
    for (const Atom& a : atoms(f)) {
        if (a.is_obs())
            continue;
        if (!a.is_located())
            throw InputError("atom '" + a.str() + "' is not of the form robot@waypoint");
        if (std::find(s.names.begin(), s.names.end(), a.robot) == s.names.end())
            throw InputError("atom '" + a.str() + "' names an unknown robot");
        if (!s.ws->valid(a.waypoint))
            throw InputError("atom '" + a.str() + "' names a waypoint outside the workspace");
    }
}

ExpansionMode parse_mode(const std::string& m)
{
    if (m == "reduced")
        return ExpansionMode::FullProduct;
    if (m == "joint-tuple-only")
        return ExpansionMode::JointTupleOnly;
    fail(kExitInput, "input_error", "unknown mode '" + m + "'");
}

ojson nba_json(const Nba& b)
{
    return ojson{{"states", b.state_count()},
                 {"accepting", b.accepting().size()},
                 {"transitions", b.transitions().size()}};
}

ojson solver_json(const SolverStats& st, bool timing)
{
    ojson j{{"nodes_expanded", st.nodes_expanded},
            {"dijkstra_runs", st.dijkstra_runs},
            {"reachable_nodes", st.reachable_nodes},
            {"accepting_reachable", st.accepting_reachable},
            {"accepting_on_cycle", st.accepting_on_cycle},
            {"cycle_searches_skipped", st.cycle_searches_skipped}};
    if (timing)
        j["runtime_ms"] = st.runtime_ms;
    return j;
}

/// Runs `body`, turning every failure into a status line and exit code.
template <class Body>
int run_command(const char* name, std::ostream& status, std::ostream& diag, Body&& body)
{
    ojson line{{"command", name}};
    int code = kExitOk;
    try {
        ojson fields = body();
        line["status"] = "ok";
        line["exit_code"] = 0;
        for (auto& [k, v] : fields.items())
            line[k] = v;
    } catch (const CommandError& e) {
        code = e.code;
        line["status"] = e.status;
        line["exit_code"] = e.code;
        line["message"] = e.message;
        for (auto& [k, v] : e.extra.items())
            line[k] = v;
        diag << name << ": " << e.message << "\n";
    } catch (const InfeasibleStartError& e) {
        code = kExitInfeasible;
        line["status"] = "infeasible";
        line["exit_code"] = code;
        line["message"] = e.what();
        diag << name << ": " << e.what() << "\n";
    } catch (const ConsistencyError& e) {
        code = kExitInternal;
        line["status"] = "internal_error";
        line["exit_code"] = code;
        line["message"] = e.what();
        diag << name << ": internal consistency failure: " << e.what() << "\n";
    } catch (const std::overflow_error& e) {
        code = kExitInput;
        line["status"] = "input_error";
        line["exit_code"] = code;
        line["message"] = e.what();
        diag << name << ": " << e.what() << "\n";
    } catch (const ResourceError& e) {
        code = kExitInput;
        line["status"] = "input_error";
        line["exit_code"] = code;
        line["message"] = e.what();
        diag << name << ": " << e.what() << "\n";
    } catch (const InputError& e) {
        code = kExitInput;
        line["status"] = "input_error";
        line["exit_code"] = code;
        line["message"] = e.what();
        diag << name << ": " << e.what() << "\n";
    } catch (const AlphabetError& e) {
        code = kExitInput;
        line["status"] = "input_error";
        line["exit_code"] = code;
        line["message"] = e.what();
        diag << name << ": " << e.what() << "\n";
    } catch (const std::exception& e) {
        code = kExitInternal;
        line["status"] = "internal_error";
        line["exit_code"] = code;
        line["message"] = e.what();
        diag << name << ": unexpected failure: " << e.what() << "\n";
    }
    status << line.dump() << std::endl;
    return code;
}

double ms_since(Clock::time_point t)
{
    return std::chrono::duration<double, std::milli>(Clock::now() - t).count();
}

}  // namespace

int cmd_plan(const RunConfig& cfg, std::ostream& status, std::ostream& diag)
{
    return run_command("plan", status, diag, [&]() -> ojson {
        const auto t0 = Clock::now();
        if (cfg.mode != "full")
            parse_mode(cfg.mode);
        require_writable(cfg.out);
        require_writable(cfg.report);
        const Scene s = load_scene(cfg);
        const Formula f = load_task(cfg.task);
        check_alphabet(f, s);
        const auto nba = std::make_shared<const Nba>(translate(to_nnf(f)));

        SynthesisOptions sopt;
        sopt.threads = cfg.threads;
        std::optional<Plan> plan;
        ojson report{{"command", "plan"}, {"mode", cfg.mode}, {"seed", cfg.seed}, {"robots", s.names},
                     {"formula", f.str()}, {"nba", nba_json(*nba)}};
        std::vector<std::uint64_t> sizes;
        for (const auto& w : s.full)
            sizes.push_back(w.size());
        report["full_product"] = {{"component_sizes", sizes},
                                  {"pba_states_theoretical", theoretical_pba_size(sizes, nba->state_count())}};
        ojson extra = ojson::object();
        std::string infeasible_reason;
        if (cfg.mode == "full") {
            const LazyPba p(s.full, s.proximity, nba);
            SynthesisResult r = try_synthesize(p, sopt);
            report["solver"] = solver_json(r.stats, cfg.timing);
            plan = std::move(r.plan);
            if (!plan)
                infeasible_reason = "no reachable accepting product state lies on a cycle";
        } else {
            ReductionConfig rc;
            rc.mode = parse_mode(cfg.mode);
            rc.seed = cfg.seed;
            rc.proximity = s.proximity;
            rc.synthesis = sopt;
            rc.max_iterations = cfg.max_iterations;
            ReductionResult r = reduce_and_plan(s.full, f, nba, rc);
            report["reduction"] = ojson::parse(r.report.to_json(cfg.timing));
            extra["outcome"] = r.report.outcome;
            extra["growth_iterations"] = r.report.iterations.size();
            extra["final_sizes"] = r.report.final_sizes;
            plan = std::move(r.plan);
            if (!plan)
                infeasible_reason = "reduction ended with outcome " + r.report.outcome;
        }
        if (cfg.timing)
            report["timing_ms"] = {{"total", ms_since(t0)}};
        if (!plan) {
            if (!cfg.report.empty())
                write_file(cfg.report, report.dump(2) + "\n");
            fail(kExitInfeasible, "infeasible", infeasible_reason, extra);
        }

        const ProximityRule rule(s.ws, s.proximity);
        const auto problems = plan_violations(*plan, *s.ws, rule);
        if (!problems.empty())
            throw ConsistencyError("synthesized plan is malformed: " + problems.front());
        if (!verify(*plan, f, *nba))
            throw ConsistencyError("synthesized plan does not satisfy the task");

        const std::string out = cfg.out.empty() ? "plan.json" : cfg.out;
        write_file(out, plan_to_json(*plan));
        if (!cfg.report.empty()) {
            report["costs"] = {{"prefix", plan->prefix_cost}, {"suffix", plan->suffix_cost}, {"total", plan->total_cost}};
            write_file(cfg.report, report.dump(2) + "\n");
        }
        ojson fields{{"mode", cfg.mode},
                     {"plan", out},
                     {"prefix_length", plan->prefix.size()},
                     {"suffix_length", plan->suffix.size()},
                     {"prefix_cost", plan->prefix_cost},
                     {"suffix_cost", plan->suffix_cost},
                     {"total_cost", plan->total_cost}};
        for (auto& [k, v] : extra.items())
            fields[k] = v;
        return fields;
    });
}

int cmd_verify(const RunConfig& cfg, std::ostream& status, std::ostream& diag)
{
    return run_command("verify", status, diag, [&]() -> ojson {
        const Scene s = load_scene(cfg);
        const Formula f = load_task(cfg.task);
        const Plan pl = plan_from_json(read_file(cfg.plan, "plan file"));
        auto reject = [&](const std::string& why) { fail(kExitVerifyFailed, "verify_failed", why); };

        if (pl.robots != s.names)
            reject("plan robots do not match the workspace robots");
        for (const Atom& a : atoms(f))
            if (!a.is_obs() && std::find(s.names.begin(), s.names.end(), a.robot) == s.names.end())
                reject("task atom '" + a.str() + "' names a robot absent from the plan");
        const ProximityRule rule(s.ws, s.proximity);
        const auto problems = plan_violations(pl, *s.ws, rule);
        if (!problems.empty())
            fail(kExitVerifyFailed, "verify_failed", problems.front(), ojson{{"violations", problems}});
        JointState start;
        for (const auto& w : s.full)
            start.push_back(w.initial());
        if (pl.prefix.front() != start)
            reject("plan does not start at the robots' initial waypoints");
        const Nba b = translate(to_nnf(f));
        if (!verify(pl, f, b))
            reject("plan trace does not satisfy the task");
        return ojson{{"total_cost", pl.total_cost}};
    });
}

int cmd_simulate(const RunConfig& cfg, std::ostream& status, std::ostream& diag)
{
    return run_command("simulate", status, diag, [&]() -> ojson {
        if (cfg.format != "csv" && cfg.format != "json")
            fail(kExitInput, "input_error", "unknown format '" + cfg.format + "'");
        require_writable(cfg.out);
        const Scene s = load_scene(cfg);
        const Plan pl = plan_from_json(read_file(cfg.plan, "plan file"));
        if (pl.robots != s.names)
            throw InputError("plan robots do not match the workspace robots");
        const Trajectory tr = execute(pl, *s.ws, cfg.cycles);
        const std::string out = cfg.out.empty() ? "trajectory." + cfg.format : cfg.out;
        export_trajectory(tr, cfg.format == "csv" ? TrajectoryFormat::Csv : TrajectoryFormat::Json, out);

        const auto series = distance_series(tr);
        ojson fields{{"trajectory", out}, {"steps", tr.steps.size()}, {"final_cost", tr.steps.back().cumulative_cost}};
        const double r = s.file.config.r_influence_robot;
        if (!series.empty()) {
            double lo = series.front().second;
            std::size_t violations = 0;
            for (const auto& [step, d] : series) {
                lo = std::min(lo, d);
                violations += !(d > r);
            }
            fields["min_distance"] = lo;
            fields["distance_violations"] = violations;
            if (violations)
                fail(kExitVerifyFailed, "verify_failed", "robots come within the influence radius", fields);
        } else {
            fields["min_distance"] = nullptr;
        }
        return fields;
    });
}

int cmd_stats(const RunConfig& cfg, std::ostream& status, std::ostream& diag)
{
    return run_command("stats", status, diag, [&]() -> ojson {
        const auto t0 = Clock::now();
        require_writable(cfg.report);
        ojson fields = ojson::object();
        std::optional<Scene> scene;
        if (!cfg.workspace.empty())
            scene = load_scene(cfg);
        std::shared_ptr<const Nba> nba;
        std::optional<Formula> f;
        if (!cfg.task.empty()) {
            f = load_task(cfg.task);
            if (scene)
                check_alphabet(*f, *scene);
            nba = std::make_shared<const Nba>(translate(to_nnf(*f)));
        }
        if (!nba && !cfg.nba_states)
            fail(kExitInput, "input_error", "stats needs a task file or --nba-states");
        if (!scene && cfg.sizes.empty())
            fail(kExitInput, "input_error", "stats needs a workspace file or --sizes");

        std::vector<Wts> comps;
        if (scene) {
            comps = scene->full;
            if (cfg.mode != "full") {
                if (!f)
                    fail(kExitInput, "input_error", "reduced statistics need a task file");
                parse_mode(cfg.mode);
                std::vector<int> init;
                for (const auto& w : comps)
                    init.push_back(w.initial());
                const PropSets ps = extract_prop_sets(*f, scene->names, init);
                for (std::size_t i = 0; i < comps.size(); ++i)
                    comps[i] = build_initial_wts(scene->full[i], ps.pi[i], ps.pi_bar[i], true);
            }
        }
        std::vector<std::uint64_t> sizes = cfg.sizes;
        if (sizes.empty())
            for (const auto& w : comps)
                sizes.push_back(w.size());
        const std::uint64_t q = cfg.nba_states ? *cfg.nba_states : static_cast<std::uint64_t>(nba->state_count());
        const std::uint64_t theoretical = theoretical_pba_size(sizes, q);
        fields["mode"] = cfg.mode;
        fields["component_sizes"] = sizes;
        fields["nba_states"] = q;
        fields["pba_states_theoretical"] = theoretical;

        ojson report = fields;
        report["command"] = "stats";
        if (nba)
            report["nba"] = nba_json(*nba);
        // Actual sizes are only meaningful for the systems that were loaded.
        const bool overridden = !cfg.sizes.empty() || cfg.nba_states.has_value();
        if (scene && nba && !overridden) {
            const bool small = theoretical <= 2'000'000;
            const ProductStats ps = small ? product_stats(build_pba(Pts(comps, scene->proximity), nba))
                                          : product_stats(comps, scene->proximity, *nba);
            if (ps.pba_transitions)
                fields["pba_transitions"] = *ps.pba_transitions;
            report["product"] = ojson::parse(ps.to_json());
            if (ps.joint_pruned) {
                fields["joint_states_pruned"] = *ps.joint_pruned;
                fields["pba_states"] = *ps.joint_pruned * static_cast<std::uint64_t>(nba->state_count());
            }
        }
        if (cfg.timing)
            report["timing_ms"] = {{"total", ms_since(t0)}};
        if (!cfg.report.empty())
            write_file(cfg.report, report.dump(2) + "\n");
        return fields;
    });
}

}  // namespace tlplan
