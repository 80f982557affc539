#include "doctest.h"

#include <random>
#include <sstream>

#include "tlplan/runtime.hpp"

#include "../support/corpus.hpp"
#include "../support/instances.hpp"

using namespace tlplan;
using namespace tlplan::testing;

namespace {

Plan two_robot_plan(const std::shared_ptr<const Workspace>& ws, double r)
{
    return synthesize(LazyPba({build_wts(ws, 0, "r", 1), build_wts(ws, 1, "g", ws->grid_m() * ws->grid_m())}, {r, false},
                              nba_for(parse("G F r@" + std::to_string(ws->grid_m() * ws->grid_m()) + " & G F g@1"))));
}

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("execute: prefix only")
{
    const auto ws = make_workspace(4);
    const Plan pl = two_robot_plan(ws, 1.2);
    const Trajectory tr = execute(pl, *ws, 0);
    CHECK(tr.steps.size() == pl.prefix.size());
    CHECK(tr.steps.back().cumulative_cost == pl.prefix_cost);
    CHECK(tr.steps.front().cumulative_cost == 0.0);
    CHECK(tr.robots == pl.robots);
}

TEST_CASE("execute: repetitions, junctions and exact final cost")
{
    const auto ws = make_workspace(4);
    const Plan pl = two_robot_plan(ws, 1.2);
    for (int k = 1; k <= 4; ++k) {
        const Trajectory tr = execute(pl, *ws, k);
        CHECK(tr.steps.size() == pl.prefix.size() + k * (pl.suffix.size() - 1));
        CHECK(tr.steps.back().cumulative_cost == pl.prefix_cost + k * pl.suffix_cost);
        for (std::size_t t = 0; t < tr.steps.size(); ++t) {
            CHECK(tr.steps[t].step == t);
            if (t == 0)
                continue;
            const double w = joint_step_weight(*ws, tr.steps[t - 1].waypoints, tr.steps[t].waypoints);
            CHECK(std::abs(tr.steps[t].cumulative_cost - tr.steps[t - 1].cumulative_cost - w) < 1e-9);
        }
    }
}

TEST_CASE("execute: trajectory length identity on random plans")
{
    std::mt19937_64 rng(17);
    const auto& corpus = formula_corpus();
    int plans = 0;
    for (int trial = 0; trial < 40; ++trial) {
        const auto ws = make_workspace(3);
        const std::string text = bind_atoms(corpus[rng() % corpus.size()], "r@" + std::to_string(1 + rng() % 13),
                                            "g@" + std::to_string(1 + rng() % 13));
        const auto res = try_synthesize(
            LazyPba({build_wts(ws, 0, "r", 1), build_wts(ws, 1, "g", 9)}, {0.8, false}, nba_for(parse(text))));
        if (!res.plan)
            continue;
        ++plans;
        const int k = static_cast<int>(rng() % 4);
        const Trajectory tr = execute(*res.plan, *ws, k);
        CHECK(tr.steps.size() == res.plan->prefix.size() + k * (res.plan->suffix.size() - 1));
        for (const auto& s : tr.steps)
            CHECK(*s.min_distance > 0.8);
    }
    CHECK(plans >= 15);
}

TEST_CASE("execute: malformed plans")
{
    const auto ws = make_workspace(3);
    Plan pl;
    pl.robots = {"r"};
    CHECK_THROWS_AS(execute(pl, *ws, 1), InputError);
    pl.prefix = {{1}, {10}};
    pl.suffix = {{10}, {5}, {10}};
    CHECK_NOTHROW(execute(pl, *ws, 1));
    CHECK_THROWS_AS(execute(pl, *ws, -1), InputError);
    pl.suffix = {{10}, {3}, {10}};
    CHECK_THROWS_AS(execute(pl, *ws, 1), InputError);
    pl.suffix = {{5}, {10}, {5}};
    CHECK_THROWS_AS(execute(pl, *ws, 1), InputError);
}

TEST_CASE("distance_series")
{
    const auto ws = make_workspace(5);
    SUBCASE("single robot gives an empty series")
    {
        const Plan pl = synthesize(LazyPba({build_wts(ws, 0, "r", 1)}, {}, nba_for(parse("G F r@25"))));
        const Trajectory tr = execute(pl, *ws, 2);
        CHECK(distance_series(tr).empty());
        CHECK_FALSE(tr.steps.front().min_distance.has_value());
    }
    SUBCASE("robots kept three apart")
    {
        const double r = 3.0 - 1e-6;
        const Plan pl = synthesize(LazyPba({build_wts(ws, 0, "r", 1), build_wts(ws, 1, "g", 25)}, {r, false},
                                           nba_for(parse("G F r@5 & G F g@21"))));
        const auto series = distance_series(execute(pl, *ws, 3));
        REQUIRE_FALSE(series.empty());
        for (const auto& [step, d] : series)
            CHECK(d > r);
    }
}

TEST_CASE("trajectory export formats")
{
    const auto ws = make_workspace(4);
    Trajectory empty;
    empty.robots = {"r", "g"};
    CHECK(trajectory_to_csv(empty) == "step,r_wp,r_x,r_y,g_wp,g_x,g_y,min_dist,cum_cost\n");

    Plan one;
    one.robots = {"r"};
    one.prefix = {{1}};
    one.suffix = {{1}, {1}};
    const Trajectory single = execute(one, *ws, 0);
    const std::string csv = trajectory_to_csv(single);
    CHECK(count_lines(csv) == 2);
    CHECK(csv == "step,r_wp,r_x,r_y,min_dist,cum_cost\n0,1,0.5,0.5,,0\n");

    const Trajectory tr = execute(two_robot_plan(ws, 1.2), *ws, 2);
    CHECK(count_lines(trajectory_to_csv(tr)) == tr.steps.size() + 1);
    CHECK(trajectory_to_csv(tr) == trajectory_to_csv(execute(two_robot_plan(ws, 1.2), *ws, 2)));
    const Trajectory back = trajectory_from_json(trajectory_to_json(tr));
    CHECK(back == tr);
    CHECK(trajectory_from_json(trajectory_to_json(single)) == single);
    CHECK_THROWS_AS(trajectory_from_json("{}"), InputError);
    CHECK_THROWS_AS(export_trajectory(tr, TrajectoryFormat::Csv, "/nonexistent-dir/t.csv"), InputError);
}
