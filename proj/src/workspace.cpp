#include "tlplan/workspace.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace tlplan {

void WorkspaceConfig::validate() const
{
    if (grid_m < 1)
        throw InputError("grid_m must be at least 1");
    if (!(pitch > 0.0))
        throw InputError("pitch must be positive");
    if (!(r_influence_robot >= 0.0))
        throw InputError("r_influence_robot must be nonnegative");
    const int r = grid_m * grid_m + (grid_m - 1) * (grid_m - 1);
    for (int o : obstacles)
        if (o < 1 || o > r)
            throw InputError("obstacle id " + std::to_string(o) + " out of range 1.." + std::to_string(r));
}

Workspace::Workspace(const WorkspaceConfig& cfg) : cfg_(cfg), move_length_(cfg.pitch * std::sqrt(2.0) / 2.0)
{
    cfg_.validate();
    const int m = cfg_.grid_m;
    const int total = m * m + (m - 1) * (m - 1);
    pos_.assign(total + 1, Point{});
    adj_.assign(total + 1, {});
    obstacle_.assign(total + 1, 0);
    for (int o : cfg_.obstacles)
        obstacle_[o] = 1;
    std::sort(cfg_.obstacles.begin(), cfg_.obstacles.end());
    cfg_.obstacles.erase(std::unique(cfg_.obstacles.begin(), cfg_.obstacles.end()), cfg_.obstacles.end());

    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            pos_[center_id(i, j)] = Point{(j + 0.5) * cfg_.pitch, (i + 0.5) * cfg_.pitch};
    for (int i = 1; i < m; ++i) {
        for (int j = 1; j < m; ++j) {
            const int c = corner_id(i, j);
            pos_[c] = Point{j * cfg_.pitch, i * cfg_.pitch};
            for (int di : {-1, 0})
                for (int dj : {-1, 0}) {
                    const int ctr = center_id(i + di, j + dj);
                    adj_[c].push_back(ctr);
                    adj_[ctr].push_back(c);
                }
        }
    }
    for (auto& a : adj_)
        std::sort(a.begin(), a.end());
}

int Workspace::center_id(int row, int col) const
{
    const int m = cfg_.grid_m;
    if (row < 0 || row >= m || col < 0 || col >= m)
        throw std::out_of_range("center index out of range");
    return row * m + col + 1;
}

int Workspace::corner_id(int row, int col) const
{
    const int m = cfg_.grid_m;
    if (row < 1 || row >= m || col < 1 || col >= m)
        throw std::out_of_range("corner index out of range");
    return m * m + (row - 1) * (m - 1) + (col - 1) + 1;
}

std::size_t Workspace::edge_count() const
{
    std::size_t n = 0;
    for (const auto& a : adj_)
        n += a.size();
    return n / 2;
}

Workspace build_workspace(const WorkspaceConfig& cfg) { return Workspace(cfg); }

double waypoint_distance(const Workspace& ws, int a, int b)
{
    if (!ws.valid(a) || !ws.valid(b))
        throw InputError("waypoint id out of range");
    if (a == b)
        return 0.0;
    const Point& p = ws.position(a);
    const Point& q = ws.position(b);
    return std::hypot(p.x - q.x, p.y - q.y);
}

// ---------------------------------------------------------------------------

Wts::Wts(std::shared_ptr<const Workspace> ws, int robot, std::string name, int initial, const std::vector<int>& states)
    : ws_(std::move(ws)), robot_(robot), name_(std::move(name)), initial_(initial)
{
    member_.assign(ws_->size() + 1, 0);
    for (int s : states)
        add_state(s);
    if (!contains(initial_))
        throw InputError("initial waypoint " + std::to_string(initial_) + " of robot '" + name_ +
                         "' is not a state of its transition system");
}

void Wts::add_state(int id)
{
    if (!ws_->valid(id))
        throw InputError("waypoint id " + std::to_string(id) + " out of range");
    if (ws_->is_obstacle(id))
        throw InputError("waypoint " + std::to_string(id) + " is an obstacle");
    if (member_[id])
        return;
    member_[id] = 1;
    states_.insert(std::upper_bound(states_.begin(), states_.end(), id), id);
}

std::vector<int> Wts::moves(int id) const
{
    std::vector<int> out;
    if (!contains(id))
        return out;
    for (int n : ws_->neighbors(id))
        if (member_[n])
            out.push_back(n);
    return out;
}

bool Wts::has_transition(int from, int to) const
{
    if (!contains(from) || !contains(to))
        return false;
    if (from == to)
        return true;
    const auto& n = ws_->neighbors(from);
    return std::binary_search(n.begin(), n.end(), to);
}

double Wts::weight(int from, int to) const
{
    if (!has_transition(from, to))
        throw InputError("no transition " + std::to_string(from) + " -> " + std::to_string(to) + " for robot '" +
                         name_ + "'");
    return from == to ? 0.0 : ws_->move_length();
}

Wts build_wts(std::shared_ptr<const Workspace> ws, int robot, const std::string& name, int init)
{
    if (!ws->valid(init))
        throw InputError("initial waypoint " + std::to_string(init) + " of robot '" + name + "' out of range");
    if (ws->is_obstacle(init))
        throw InputError("initial waypoint " + std::to_string(init) + " of robot '" + name + "' is an obstacle");
    std::vector<int> states;
    for (int id = 1; id <= ws->size(); ++id)
        if (!ws->is_obstacle(id))
            states.push_back(id);
    return Wts(std::move(ws), robot, name, init, states);
}

// ---------------------------------------------------------------------------
// JSON

WorkspaceFile parse_workspace_json(const std::string& text)
{
    using nlohmann::json;
    WorkspaceFile wf;
    try {
        const json j = json::parse(text);
        wf.config.grid_m = j.at("grid_m").get<int>();
        wf.config.pitch = j.value("pitch", 1.0);
        wf.config.obstacles = j.value("obstacles", std::vector<int>{});
        wf.config.r_influence_robot = j.value("r_influence_robot", 0.0);
        wf.config.r_influence_coil = j.value("r_influence_coil", 0.0);
        wf.config.epsilon = j.value("epsilon", 0.05);
        for (const auto& r : j.at("robots"))
            wf.robots.push_back(RobotSpec{r.at("name").get<std::string>(), r.at("init").get<int>()});
    } catch (const json::exception& e) {
        throw InputError(std::string("workspace file: ") + e.what());
    }
    wf.config.validate();
    if (wf.robots.empty())
        throw InputError("workspace file lists no robots");
    std::set<std::string> names;
    const int r = wf.config.grid_m * wf.config.grid_m + (wf.config.grid_m - 1) * (wf.config.grid_m - 1);
    for (const auto& rb : wf.robots) {
        if (rb.name.empty() || rb.name == "obs" || rb.name.find('@') != std::string::npos)
            throw InputError("invalid robot name '" + rb.name + "'");
        if (!names.insert(rb.name).second)
            throw InputError("duplicate robot name '" + rb.name + "'");
        if (rb.init < 1 || rb.init > r)
            throw InputError("initial waypoint of robot '" + rb.name + "' out of range");
    }
    return wf;
}

WorkspaceFile load_workspace_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open workspace file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_workspace_json(ss.str());
}

std::string workspace_to_json(const WorkspaceFile& wf)
{
    nlohmann::ordered_json j;
    j["grid_m"] = wf.config.grid_m;
    j["pitch"] = wf.config.pitch;
    j["obstacles"] = wf.config.obstacles;
    auto robots = nlohmann::ordered_json::array();
    for (const auto& r : wf.robots)
        robots.push_back({{"name", r.name}, {"init", r.init}});
    j["robots"] = robots;
    j["r_influence_robot"] = wf.config.r_influence_robot;
    j["r_influence_coil"] = wf.config.r_influence_coil;
    j["epsilon"] = wf.config.epsilon;
    return j.dump(2) + "\n";
}

}  // namespace tlplan
