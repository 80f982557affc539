// Acceptance checks for the planner. Prints one PASS/FAIL line per
// criterion and exits non-zero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <unistd.h>

#include "json.hpp"
#include "tlplan/cli.hpp"
#include "tlplan/reduction.hpp"
#include "tlplan/runtime.hpp"

#include "../support/corpus.hpp"
#include "../support/instances.hpp"
#include "../support/lasso_oracle.hpp"

namespace fs = std::filesystem;
using namespace tlplan;
using namespace tlplan::testing;
using Clock = std::chrono::steady_clock;

namespace {

struct Verdict {
    bool pass = false;
    std::string detail;
};

const fs::path kConfigs = TLPLAN_CONFIG_DIR;
fs::path g_scratch;

// Every executed multi-robot trajectory feeds the distance invariant.
struct DistanceLedger {
    std::size_t trajectories = 0;
    std::size_t steps = 0;
    std::size_t violations = 0;
    double closest = INFINITY;

    void record(const Trajectory& tr, double radius)
    {
        ++trajectories;
        for (const auto& s : tr.steps) {
            if (!s.min_distance)
                continue;
            ++steps;
            closest = std::min(closest, *s.min_distance);
            if (!(*s.min_distance > radius))
                ++violations;
        }
    }
} g_distances;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::string fmt(double v, int digits = 3)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

nlohmann::json call(int (*fn)(const RunConfig&, std::ostream&, std::ostream&), const RunConfig& cfg, int& code)
{
    std::ostringstream out, err;
    code = fn(cfg, out, err);
    return nlohmann::json::parse(out.str());
}

RunConfig config_for(const std::string& name, const std::string& mode)
{
    RunConfig cfg;
    cfg.workspace = (kConfigs / (name + ".workspace.json")).string();
    cfg.task = (kConfigs / ((name == "case1-growth" ? "case1" : name) + ".task")).string();
    cfg.mode = mode;
    cfg.out = (g_scratch / (name + "-" + mode + ".plan.json")).string();
    cfg.timing = false;
    return cfg;
}

void record_plan_distances(const RunConfig& cfg, const std::string& plan_file)
{
    std::ifstream plan_in(plan_file);
    std::stringstream plan_text;
    plan_text << plan_in.rdbuf();
    const WorkspaceFile wf = load_workspace_file(cfg.workspace);
    const Workspace ws(wf.config);
    g_distances.record(execute(plan_from_json(plan_text.str()), ws, 3), wf.config.r_influence_robot);
}

Verdict state_count_identities()
{
    const std::vector<std::pair<std::vector<std::uint64_t>, std::uint64_t>> cases = {
        {{145, 145}, 13},           {{145, 145, 145}, 7}, {{145, 145, 145, 145, 145}, 8},
        {{14, 16}, 13},             {{11, 10, 11}, 7},    {{5, 9, 9, 9, 10}, 8},
    };
    const std::vector<std::uint64_t> expected = {273325, 21340375, 512778725000ULL, 2912, 8470, 291600};
    const auto t0 = Clock::now();
    std::string got;
    bool ok = true;
    for (std::size_t i = 0; i < cases.size(); ++i) {
        RunConfig cfg;
        cfg.sizes = cases[i].first;
        cfg.nba_states = cases[i].second;
        int code = 0;
        const auto st = call(cmd_stats, cfg, code);
        const std::uint64_t v = code == kExitOk ? st["pba_states_theoretical"].get<std::uint64_t>() : 0;
        ok = ok && v == expected[i];
        got += (i ? "," : "") + std::to_string(v);
    }
    const double secs = seconds_since(t0);
    return {ok && secs < 1.0, "values " + got + " in " + fmt(secs) + " s"};
}

Verdict case_two()
{
    const auto t0 = Clock::now();
    RunConfig cfg = config_for("case2", "reduced");
    int code = 0;
    const auto st = call(cmd_plan, cfg, code);
    if (code != kExitOk)
        return {false, "plan exited " + std::to_string(code) + ": " + st.dump()};
    const auto iterations = st["growth_iterations"].get<std::size_t>();

    RunConfig v = cfg;
    v.plan = cfg.out;
    int vcode = 0;
    call(cmd_verify, v, vcode);

    RunConfig s = v;
    s.out = (g_scratch / "case2.csv").string();
    s.cycles = 3;
    int scode = 0;
    const auto sim = call(cmd_simulate, s, scode);
    const double closest = sim["min_distance"].is_number() ? sim["min_distance"].get<double>() : 0.0;
    record_plan_distances(cfg, cfg.out);
    const double secs = seconds_since(t0);
    return {iterations == 0 && vcode == kExitOk && scode == kExitOk && closest > 3.7 && secs < 600,
            "growth iterations " + std::to_string(iterations) + ", verify exit " + std::to_string(vcode) +
                ", min distance " + fmt(closest) + " over 3 cycles, " + fmt(secs) + " s"};
}

Verdict case_one()
{
    const auto t0 = Clock::now();
    RunConfig red = config_for("case1", "reduced");
    int rcode = 0;
    const auto rs = call(cmd_plan, red, rcode);
    if (rcode != kExitOk)
        return {false, "reduced plan exited " + std::to_string(rcode) + ": " + rs.dump()};
    RunConfig v = red;
    v.plan = red.out;
    int vcode = 0;
    call(cmd_verify, v, vcode);
    record_plan_distances(red, red.out);

    std::size_t largest = 0;
    for (const auto& n : rs["final_sizes"])
        largest = std::max(largest, n.get<std::size_t>());

    RunConfig full = config_for("case1", "full");
    int fcode = 0;
    const auto fs_ = call(cmd_plan, full, fcode);
    if (fcode != kExitOk)
        return {false, "full plan exited " + std::to_string(fcode) + ": " + fs_.dump()};
    record_plan_distances(full, full.out);
    const double j_red = rs["total_cost"].get<double>();
    const double j_full = fs_["total_cost"].get<double>();
    const double secs = seconds_since(t0);
    return {vcode == kExitOk && largest <= 29 && j_full <= j_red + 1e-9 && secs < 1800,
            "reduced sizes " + rs["final_sizes"].dump() + ", verify exit " + std::to_string(vcode) + ", J_full " +
                fmt(j_full) + " <= J_reduced " + fmt(j_red) + ", " + fmt(secs) + " s"};
}

Verdict nba_conformance()
{
    const std::vector<Atom> ab = {Atom{"a", 0}, Atom{"b", 0}};
    std::size_t words = 0, disagreements = 0;
    for (const auto& text : formula_corpus()) {
        const Formula f = parse(text);
        const Nba b = translate(to_nnf(f));
        for_each_lasso(ab, 6, [&](const LassoWord& w) {
            ++words;
            if (accepts_lasso(b, w) != eval_lasso(f, w))
                ++disagreements;
        });
    }
    return {disagreements == 0, std::to_string(formula_corpus().size()) + " formulas, " + std::to_string(words) +
                                    " word checks, " + std::to_string(disagreements) + " disagreements"};
}

Verdict incremental_equivalence()
{
    std::mt19937_64 rng(5150);
    const auto& corpus = formula_corpus();
    const char* names[] = {"r", "g"};
    std::size_t compared = 0, mismatches = 0, inserted = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const int m = 2 + static_cast<int>(rng() % 2);
        const auto ws = make_workspace(m);
        const int robots = 1 + static_cast<int>(rng() % 2);
        const double radius = robots == 2 ? (rng() % 2 ? 0.5 : 1.2) : 0.0;
        const ProximityOptions opt{radius, rng() % 4 == 0};
        const ProximityRule rule(ws, opt);
        std::vector<Wts> comps;
        for (int r = 0; r < robots; ++r) {
            const int init = r == 0 ? 1 : m * m;
            comps.emplace_back(ws, r, names[r], init, std::vector<int>{init});
            for (int s = 1; s <= ws->size(); ++s)
                if (rng() % 3 == 0)
                    comps[r].add_state(s);
        }
        const std::string text =
            bind_atoms(corpus[rng() % corpus.size()], "r@" + std::to_string(1 + rng() % ws->size()),
                       std::string(names[robots - 1]) + "@" + std::to_string(1 + rng() % ws->size()));
        const auto b = nba_for(parse(text));
        Pba p = build_pba(compose_pts(comps, opt), b);

        const int robot = static_cast<int>(rng() % robots);
        std::vector<int> missing;
        for (int s = 1; s <= ws->size(); ++s)
            if (!comps[robot].contains(s))
                missing.push_back(s);
        if (!missing.empty()) {
            const int added = missing[rng() % missing.size()];
            comps[robot].add_state(added);
            p.add_component_state(robot, added);
            std::vector<std::vector<int>> tuples{{}};
            for (const Wts& c : comps) {
                std::vector<std::vector<int>> next;
                for (const auto& t : tuples)
                    for (int s : c.states()) {
                        auto u = t;
                        u.push_back(s);
                        next.push_back(std::move(u));
                    }
                tuples = std::move(next);
            }
            for (const auto& t : tuples)
                if (t[robot] == added && rule.state_ok(t)) {
                    p = update_pba(std::move(p), t);
                    ++inserted;
                }
        }
        const Pba rebuilt = build_pba(compose_pts(comps, opt), b);
        ++compared;
        if (p.canonical_text() != rebuilt.canonical_text())
            ++mismatches;
    }
    return {compared == 200 && mismatches == 0, std::to_string(compared) + " instances, " +
                                                    std::to_string(inserted) + " insertions, " +
                                                    std::to_string(mismatches) + " mismatches"};
}

Verdict completeness()
{
    std::mt19937_64 rng(606);
    const auto& corpus = formula_corpus();
    const char* names[] = {"r", "g"};
    std::size_t feasible = 0, infeasible = 0, failures = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const int m = 2 + static_cast<int>(rng() % 2);
        const int total = m * m + (m - 1) * (m - 1);
        std::vector<int> obstacles;
        if (m == 3 && rng() % 3 == 0)
            obstacles.push_back(10 + static_cast<int>(rng() % 4));
        const auto ws = make_workspace(m, obstacles);
        const int robots = 1 + static_cast<int>(rng() % 2);
        const double radius = robots == 2 ? 0.8 : 0.0;
        std::vector<Wts> full;
        for (int r = 0; r < robots; ++r)
            full.push_back(build_wts(ws, r, names[r], r == 0 ? 1 : m * m));
        const std::string text = bind_atoms(corpus[rng() % corpus.size()], "r@" + std::to_string(1 + rng() % total),
                                            std::string(names[robots - 1]) + "@" + std::to_string(1 + rng() % total));
        const Formula f = parse(text);
        const auto b = nba_for(f);
        ReductionConfig cfg;
        cfg.seed = rng();
        cfg.precheck = false;
        cfg.proximity = {radius, false};
        const auto full_res = try_synthesize(LazyPba(full, cfg.proximity, b));
        const auto red = reduce_and_plan(full, f, b, cfg);
        if (full_res.plan) {
            ++feasible;
            const bool ok = red.outcome == ReductionOutcome::Planned &&
                            red.plan->total_cost >= full_res.plan->total_cost - 1e-9 && verify(*red.plan, f, *b);
            if (!ok) {
                ++failures;
                continue;
            }
            if (robots == 2) {
                g_distances.record(execute(*red.plan, *ws, 3), radius);
                g_distances.record(execute(*full_res.plan, *ws, 3), radius);
            }
        } else {
            ++infeasible;
            if (red.outcome != ReductionOutcome::Infeasible)
                ++failures;
        }
    }
    return {failures == 0 && feasible > 0 && infeasible > 0,
            std::to_string(feasible) + " feasible, " + std::to_string(infeasible) + " infeasible, " +
                std::to_string(failures) + " failures"};
}

Verdict distance_invariant()
{
    // Random three-robot plans on a mid-sized grid add coverage beyond the
    // plans executed by the other criteria.
    std::mt19937_64 rng(77);
    const auto& corpus = formula_corpus();
    const auto ws = make_workspace(4);
    for (int trial = 0; trial < 30; ++trial) {
        const double radius = trial % 2 ? 1.2 : 0.9;
        const std::string text = bind_atoms(corpus[rng() % corpus.size()], "r@" + std::to_string(1 + rng() % 25),
                                            "g@" + std::to_string(1 + rng() % 25));
        const auto res = try_synthesize(LazyPba(
            {build_wts(ws, 0, "r", 1), build_wts(ws, 1, "g", 16), build_wts(ws, 2, "b", 4)}, {radius, false},
            nba_for(parse(text))));
        if (res.plan)
            g_distances.record(execute(*res.plan, *ws, 3), radius);
    }
    return {g_distances.violations == 0 && g_distances.trajectories > 0,
            std::to_string(g_distances.trajectories) + " trajectories, " + std::to_string(g_distances.steps) +
                " steps, closest " + fmt(g_distances.closest) + ", " + std::to_string(g_distances.violations) +
                " violations"};
}

}  // namespace

int main()
{
    g_scratch = fs::temp_directory_path() / ("tlplan_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(g_scratch);

    const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
        {"state-count identities", state_count_identities},
        {"case2 config end to end", case_two},
        {"case1 config end to end", case_one},
        {"automaton conformance on the formula corpus", nba_conformance},
        {"incremental product equals rebuild", incremental_equivalence},
        {"completeness and cost dominance", completeness},
        {"distance invariant on executed trajectories", distance_invariant},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Verdict v;
        try {
            v = criteria[i].second();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        failed += v.pass ? 0 : 1;
        std::printf("criterion %zu %s: %s (%s)\n", i + 1, v.pass ? "PASS" : "FAIL", criteria[i].first.c_str(),
                    v.detail.c_str());
        std::fflush(stdout);
    }
    fs::remove_all(g_scratch);
    return failed == 0 ? 0 : 1;
}
