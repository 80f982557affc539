#include "doctest.h"

#include <cmath>
#include <random>

#include "tlplan/synthesis.hpp"

#include "../support/corpus.hpp"
#include "../support/instances.hpp"

using namespace tlplan;
using namespace tlplan::testing;

namespace {

const double kMove = std::sqrt(2.0) / 2.0;

Plan plan_single(const std::shared_ptr<const Workspace>& ws, int init, const std::string& text,
                 SynthesisOptions opt = {})
{
    const LazyPba p({build_wts(ws, 0, "r", init)}, {}, nba_for(parse(text)));
    return synthesize(p, opt);
}

int units(const Plan& pl) { return static_cast<int>(std::lround(pl.total_cost / kMove)); }

bool same_plan(const Plan& a, const Plan& b)
{
    return a.robots == b.robots && a.prefix == b.prefix && a.suffix == b.suffix && a.prefix_nba == b.prefix_nba &&
           a.suffix_nba == b.suffix_nba && a.total_cost == b.total_cost && a.accepting_node == b.accepting_node;
}

}  // namespace

TEST_CASE("synthesize: eventually reach the adjacent corner")
{
    const auto ws = make_workspace(2);
    const Plan pl = plan_single(ws, 1, "F r@5");
    CHECK(pl.prefix.front() == JointState{1});
    CHECK(pl.prefix.back() == pl.suffix.front());
    CHECK(pl.suffix.back() == pl.suffix.front());
    CHECK(pl.suffix.size() >= 2);
    CHECK(std::find(pl.prefix.begin(), pl.prefix.end(), JointState{5}) != pl.prefix.end());
    CHECK(pl.total_cost == doctest::Approx(0.70711).epsilon(1e-5));
    CHECK(pl.suffix_cost == 0.0);
    CHECK(verify(pl, parse("F r@5"), *nba_for(parse("F r@5"))));
}

TEST_CASE("synthesize: recurrence between two waypoints costs twice their distance")
{
    for (int m = 2; m <= 3; ++m) {
        const auto ws = make_workspace(m);
        for (int a = 1; a <= ws->size(); ++a)
            for (int b = a + 1; b <= ws->size(); ++b) {
                const int d = bfs_hops(*ws, a)[b];
                const Plan pl = plan_single(ws, a, "G F r@" + std::to_string(a) + " & G F r@" + std::to_string(b));
                CHECK(std::abs(pl.suffix_cost - 2 * d * ws->move_length()) < 1e-9);
            }
    }
}

TEST_CASE("synthesize: goal on an obstacle is infeasible")
{
    const auto ws = make_workspace(3, {9});
    const LazyPba p({build_wts(ws, 0, "r", 1)}, {}, nba_for(parse("F r@9")));
    CHECK_THROWS_AS(synthesize(p), InfeasibleError);
    const SynthesisResult res = try_synthesize(p);
    CHECK_FALSE(res.plan.has_value());
}

TEST_CASE("synthesize: optimal against exhaustive searches")
{
    const std::vector<std::string> corpus = {"F a", "G F a", "G F a & G F b", "!a U b"};
    for (int m = 2; m <= 3; ++m) {
        const auto ws = make_workspace(m);
        for (const auto& shape : corpus)
            for (int start = 1; start <= ws->size(); start += 2)
                for (int a = 1; a <= ws->size(); a += 3)
                    for (int b = 2; b <= ws->size(); b += 4) {
                        const std::string text = bind_atoms(shape, "r@" + std::to_string(a), "r@" + std::to_string(b));
                        const Formula f = parse(text);
                        const auto nba = nba_for(f);
                        const std::vector<Wts> comps{build_wts(ws, 0, "r", start)};
                        const auto res = try_synthesize(LazyPba(comps, {}, nba));
                        if (!res.plan) {
                            CHECK(naive_product_units(comps, 0.0, *nba) == -1);
                            CHECK(brute_force_units(*ws, "r", start, f, 8) == -1);
                            continue;
                        }
                        const int got = units(*res.plan);
                        CHECK_MESSAGE(naive_product_units(comps, 0.0, *nba) == got, text << " from " << start);
                        // Any satisfying lasso is a lower bound; single-goal tasks attain it.
                        const int lasso = brute_force_units(*ws, "r", start, f, got + 2);
                        CHECK(lasso <= got);
                        if (shape != "G F a & G F b")
                            CHECK_MESSAGE(lasso == got, text << " from " << start);
                    }
    }
}

TEST_CASE("synthesize: two-robot optimum matches the naive product")
{
    std::mt19937_64 rng(5);
    const auto ws = make_workspace(2);
    for (int trial = 0; trial < 30; ++trial) {
        const std::string text = bind_atoms(formula_corpus()[rng() % formula_corpus().size()],
                                            "r@" + std::to_string(1 + rng() % 5), "g@" + std::to_string(1 + rng() % 5));
        const auto nba = nba_for(parse(text));
        const std::vector<Wts> comps{build_wts(ws, 0, "r", 1), build_wts(ws, 1, "g", 4)};
        const auto res = try_synthesize(LazyPba(comps, {0.5, false}, nba));
        const int oracle = naive_product_units(comps, 0.5, *nba);
        CHECK_MESSAGE((res.plan ? units(*res.plan) : -1) == oracle, text);
    }
}

TEST_CASE("synthesize: goal-directed and plain cycle searches agree")
{
    std::mt19937_64 rng(99);
    const auto ws = make_workspace(3, {6});
    for (int trial = 0; trial < 25; ++trial) {
        auto pick = [&] {
            int v;
            do
                v = 1 + static_cast<int>(rng() % ws->size());
            while (ws->is_obstacle(v));
            return v;
        };
        const int s0 = 1, s1 = 9;
        const std::string text = "G F r@" + std::to_string(pick()) + " & G F g@" + std::to_string(pick()) +
                                 " & G (r@" + std::to_string(pick()) + " -> F g@" + std::to_string(pick()) + ")";
        std::vector<Wts> comps{build_wts(ws, 0, "r", s0), build_wts(ws, 1, "g", s1)};
        const LazyPba p(comps, {0.6, false}, nba_for(parse(text)));
        SynthesisOptions plain;
        plain.goal_directed = false;
        const auto a = try_synthesize(p);
        const auto b = try_synthesize(p, plain);
        REQUIRE(a.plan.has_value() == b.plan.has_value());
        if (!a.plan)
            continue;
        CHECK(same_plan(*a.plan, *b.plan));
        SynthesisOptions chunky;
        chunky.chunk_size = 3;
        chunky.threads = 2;
        CHECK(same_plan(*try_synthesize(p, chunky).plan, *a.plan));
    }
}

TEST_CASE("synthesize: materialized and lazy products give the same plan")
{
    const auto ws = make_workspace(3);
    std::vector<Wts> comps{build_wts(ws, 0, "r", 1), build_wts(ws, 1, "g", 9)};
    const auto b = nba_for(parse("G F (r@9 & g@1) & G F r@5"));
    const Plan x = synthesize(build_pba(compose_pts(comps, {0.8, false}), b));
    const Plan y = synthesize(LazyPba(comps, {0.8, false}, b));
    CHECK(x.total_cost == y.total_cost);
    CHECK(x.prefix == y.prefix);
    CHECK(x.suffix == y.suffix);
}

TEST_CASE("synthesize: plans respect proximity, costs and the run budget")
{
    const auto ws = make_workspace(4);
    std::vector<Wts> comps{build_wts(ws, 0, "r", 1), build_wts(ws, 1, "g", 16)};
    const Formula f = parse("G F r@16 & G F g@1");
    const auto b = nba_for(f);
    const Pba p = build_pba(compose_pts(comps, {1.2, false}), b);
    const Plan pl = synthesize(p);
    CHECK(plan_violations(pl, *ws, p.rule()).empty());
    CHECK(verify(pl, f, *b));
    const CostTriple c = plan_cost(pl, *ws);
    CHECK(c.prefix == pl.prefix_cost);
    CHECK(c.suffix == pl.suffix_cost);
    CHECK(c.total == pl.total_cost);
    CHECK(pl.total_cost == pl.prefix_cost + pl.suffix_cost);
    for (std::size_t t = 0; t < pl.prefix.size(); ++t)
        CHECK(waypoint_distance(*ws, pl.prefix[t][0], pl.prefix[t][1]) > 1.2);
    for (std::size_t t = 0; t < pl.suffix.size(); ++t)
        CHECK(waypoint_distance(*ws, pl.suffix[t][0], pl.suffix[t][1]) > 1.2);
    CHECK(pl.stats.dijkstra_runs <= p.initial_nodes().size() + p.accepting_count());
    CHECK(pl.stats.accepting_on_cycle <= pl.stats.accepting_reachable);
}

TEST_CASE("plan_cost: step weights")
{
    const auto ws = make_workspace(3);
    CHECK(joint_step_weight(*ws, {1, 9}, {10, 9}) == ws->move_length());
    CHECK(joint_step_weight(*ws, {1, 9}, {1, 9}) == 0.0);
    CHECK(joint_step_weight(*ws, {1, 9}, {10, 13}) == 2 * ws->move_length());
    CHECK_THROWS_AS(joint_step_weight(*ws, {1, 9}, {2, 9}), InputError);
    CHECK_THROWS_AS(joint_step_weight(*make_workspace(3, {10}), {1}, {10}), InputError);

    Plan pl;
    pl.robots = {"r"};
    pl.prefix = {{1}, {10}};
    pl.suffix = {{10}, {10}};
    const CostTriple c = plan_cost(pl, *ws);
    CHECK(c.suffix == 0.0);
    CHECK(c.prefix == ws->move_length());
}

TEST_CASE("verify: accepts, rejects and orders")
{
    const auto ws = make_workspace(3);
    const Plan pl = plan_single(ws, 1, "F r@13");
    CHECK(verify(pl, parse("F r@13"), *nba_for(parse("F r@13"))));
    CHECK_FALSE(verify(pl, parse("F r@3"), *nba_for(parse("F r@3"))));

    // Visits 4 before 5 under !r@4 U r@5.
    Plan bad;
    bad.robots = {"r"};
    bad.prefix = {{1}, {10}, {4}, {12}, {5}};
    bad.suffix = {{5}, {5}};
    const Formula until = parse("!r@4 U r@5");
    CHECK_FALSE(eval_lasso(until, plan_word(bad)));
    CHECK_FALSE(verify(bad, until, *nba_for(until)));
    Plan good = bad;
    good.prefix = {{1}, {10}, {5}};
    CHECK(verify(good, until, *nba_for(until)));
}

TEST_CASE("plan_violations: structural problems are reported")
{
    const auto ws = make_workspace(3);
    const ProximityRule rule(ws, {0.8, false});
    Plan pl = synthesize(LazyPba({build_wts(ws, 0, "r", 1), build_wts(ws, 1, "g", 9)}, {0.8, false},
                                 nba_for(parse("F (r@9 & g@1)"))));
    CHECK(plan_violations(pl, *ws, rule).empty());
    Plan jump = pl;
    jump.prefix[1][0] = 3;
    CHECK_FALSE(plan_violations(jump, *ws, rule).empty());
    Plan cost = pl;
    cost.total_cost += 1e-12;
    CHECK_FALSE(plan_violations(cost, *ws, rule).empty());
    Plan close = pl;
    close.suffix = {{5, 10}, {5, 10}};
    close.prefix.back() = {5, 10};
    CHECK_FALSE(plan_violations(close, *ws, rule).empty());
}

TEST_CASE("plans are deterministic and round trip through JSON")
{
    const auto ws = make_workspace(3);
    auto make = [&] {
        return synthesize(LazyPba({build_wts(ws, 0, "r", 1), build_wts(ws, 1, "g", 9)}, {0.8, false},
                                  nba_for(parse("G F r@13 & G F g@10 & F (r@3 & g@7)"))));
    };
    const Plan a = make();
    const Plan b = make();
    const std::string ja = plan_to_json(a);
    CHECK(ja == plan_to_json(b));
    CHECK(ja.find("runtime") == std::string::npos);
    const Plan c = plan_from_json(ja);
    CHECK(plan_to_json(c) == ja);
    CHECK(c.prefix == a.prefix);
    CHECK(c.total_cost == a.total_cost);
    CHECK_THROWS_AS(plan_from_json("{\"robots\": 3}"), InputError);
    CHECK_THROWS_AS(plan_from_json("not json"), InputError);
}

TEST_CASE("resolve_threads")
{
    CHECK(resolve_threads(3) == 3);
    CHECK(resolve_threads(0) >= 1);
}
