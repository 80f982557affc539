#include "tlplan/runtime.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "json.hpp"

namespace tlplan {

bool TrajectoryStep::operator==(const TrajectoryStep& o) const
{
    if (step != o.step || waypoints != o.waypoints || min_distance != o.min_distance ||
        cumulative_cost != o.cumulative_cost || positions.size() != o.positions.size())
        return false;
    for (std::size_t i = 0; i < positions.size(); ++i)
        if (positions[i].x != o.positions[i].x || positions[i].y != o.positions[i].y)
            return false;
    return true;
}

namespace {

TrajectoryStep make_step(const Workspace& ws, std::size_t step, const JointState& wps, double cost)
{
    TrajectoryStep s;
    s.step = step;
    s.waypoints = wps;
    for (int w : wps) {
        if (!ws.valid(w))
            throw InputError("plan uses unknown waypoint " + std::to_string(w));
        s.positions.push_back(ws.position(w));
    }
    if (wps.size() >= 2) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < wps.size(); ++i)
            for (std::size_t j = i + 1; j < wps.size(); ++j)
                best = std::min(best, waypoint_distance(ws, wps[i], wps[j]));
        s.min_distance = best;
    }
    s.cumulative_cost = cost;
    return s;
}

}  // namespace

Trajectory execute(const Plan& pl, const Workspace& ws, int suffix_repetitions)
{
    if (suffix_repetitions < 0)
        throw InputError("suffix repetitions must be non-negative");
    if (pl.prefix.empty() || pl.suffix.size() < 2)
        throw InputError("plan needs a non-empty prefix and a suffix with at least one transition");
    if (pl.prefix.back() != pl.suffix.front() || pl.suffix.back() != pl.suffix.front())
        throw InputError("suffix must start and end at the last prefix state");
    for (const auto& t : pl.prefix)
        if (t.size() != pl.robots.size())
            throw InputError("joint state size differs from the robot count");
    for (const auto& t : pl.suffix)
        if (t.size() != pl.robots.size())
            throw InputError("joint state size differs from the robot count");

    Trajectory tr;
    tr.robots = pl.robots;
    double running = 0.0;
    tr.steps.push_back(make_step(ws, 0, pl.prefix[0], 0.0));
    for (std::size_t t = 1; t < pl.prefix.size(); ++t) {
        running += joint_step_weight(ws, pl.prefix[t - 1], pl.prefix[t]);
        tr.steps.push_back(make_step(ws, tr.steps.size(), pl.prefix[t], running));
    }
    // Segment ends are prefix + k * suffix so the final value is exact.
    const double prefix_cost = running;
    double suffix_cost = 0.0;
    for (std::size_t t = 1; t < pl.suffix.size(); ++t)
        suffix_cost += joint_step_weight(ws, pl.suffix[t - 1], pl.suffix[t]);
    for (int k = 0; k < suffix_repetitions; ++k) {
        const double base = prefix_cost + k * suffix_cost;
        double partial = 0.0;
        for (std::size_t t = 1; t < pl.suffix.size(); ++t) {
            partial += joint_step_weight(ws, pl.suffix[t - 1], pl.suffix[t]);
            const double cum = t + 1 == pl.suffix.size() ? prefix_cost + (k + 1) * suffix_cost : base + partial;
            tr.steps.push_back(make_step(ws, tr.steps.size(), pl.suffix[t], cum));
        }
    }
    return tr;
}

std::vector<std::pair<std::size_t, double>> distance_series(const Trajectory& tr)
{
    std::vector<std::pair<std::size_t, double>> out;
    if (tr.robots.size() < 2)
        return out;
    for (const auto& s : tr.steps)
        if (s.min_distance)
            out.emplace_back(s.step, *s.min_distance);
    return out;
}

namespace {

std::string num(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::string trajectory_to_csv(const Trajectory& tr)
{
    std::string out = "step";
    for (const auto& r : tr.robots)
        out += "," + r + "_wp," + r + "_x," + r + "_y";
    out += ",min_dist,cum_cost\n";
    for (const auto& s : tr.steps) {
        out += std::to_string(s.step);
        for (std::size_t i = 0; i < s.waypoints.size(); ++i)
            out += "," + std::to_string(s.waypoints[i]) + "," + num(s.positions[i].x) + "," + num(s.positions[i].y);
        out += ",";
        if (s.min_distance)
            out += num(*s.min_distance);
        out += "," + num(s.cumulative_cost) + "\n";
    }
    return out;
}

std::string trajectory_to_json(const Trajectory& tr)
{
    nlohmann::ordered_json j;
    j["robots"] = tr.robots;
    j["steps"] = nlohmann::ordered_json::array();
    for (const auto& s : tr.steps) {
        nlohmann::ordered_json e;
        e["step"] = s.step;
        e["waypoints"] = s.waypoints;
        auto pos = nlohmann::ordered_json::array();
        for (const auto& p : s.positions)
            pos.push_back({p.x, p.y});
        e["positions"] = pos;
        e["min_distance"] = s.min_distance ? nlohmann::ordered_json(*s.min_distance) : nullptr;
        e["cumulative_cost"] = s.cumulative_cost;
        j["steps"].push_back(std::move(e));
    }
    return j.dump(2) + "\n";
}

Trajectory trajectory_from_json(const std::string& text)
{
    try {
        const auto j = nlohmann::json::parse(text);
        Trajectory tr;
        tr.robots = j.at("robots").get<std::vector<std::string>>();
        for (const auto& e : j.at("steps")) {
            TrajectoryStep s;
            s.step = e.at("step").get<std::size_t>();
            s.waypoints = e.at("waypoints").get<JointState>();
            for (const auto& p : e.at("positions"))
                s.positions.push_back(Point{p.at(0).get<double>(), p.at(1).get<double>()});
            if (!e.at("min_distance").is_null())
                s.min_distance = e.at("min_distance").get<double>();
            s.cumulative_cost = e.at("cumulative_cost").get<double>();
            tr.steps.push_back(std::move(s));
        }
        return tr;
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed trajectory: ") + e.what());
    }
}

void export_trajectory(const Trajectory& tr, TrajectoryFormat format, const std::string& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw InputError("cannot open '" + path + "' for writing");
    out << (format == TrajectoryFormat::Csv ? trajectory_to_csv(tr) : trajectory_to_json(tr));
    if (!out)
        throw InputError("failed writing '" + path + "'");
}

}  // namespace tlplan
