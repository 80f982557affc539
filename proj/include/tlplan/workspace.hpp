#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "tlplan/ltl.hpp"

namespace tlplan {

/// Thrown for malformed or inconsistent inputs (files, ids, configs).
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct WorkspaceConfig {
    int grid_m = 1;                   // coils per side
    double pitch = 1.0;               // coil side length
    std::vector<int> obstacles;       // waypoint ids
    double r_influence_robot = 0.0;   // pairwise separation must exceed this
    double r_influence_coil = 0.0;    // informational
    double epsilon = 0.05;            // informational

    void validate() const;
};

struct RobotSpec {
    std::string name;
    int init = 0;
};

/// Contents of a workspace JSON file.
struct WorkspaceFile {
    WorkspaceConfig config;
    std::vector<RobotSpec> robots;
};

WorkspaceFile parse_workspace_json(const std::string& text);
WorkspaceFile load_workspace_file(const std::string& path);
std::string workspace_to_json(const WorkspaceFile& wf);

struct Point {
    double x = 0.0;
    double y = 0.0;
};

/// Waypoints of an m x m coil array. Ids are 1-based: coil centers first in
/// row-major order, then the interior coil corners in row-major order.
/// Moves are diagonal and always join a center to a corner.
class Workspace {
public:
    explicit Workspace(const WorkspaceConfig& cfg);

    const WorkspaceConfig& config() const { return cfg_; }
    int grid_m() const { return cfg_.grid_m; }
    double pitch() const { return cfg_.pitch; }
    int size() const { return static_cast<int>(pos_.size()) - 1; }
    bool valid(int id) const { return id >= 1 && id <= size(); }
    bool is_center(int id) const { return id <= cfg_.grid_m * cfg_.grid_m; }
    bool is_obstacle(int id) const { return obstacle_[id] != 0; }

    /// Center (row, col), 0 <= row, col < m.
    int center_id(int row, int col) const;
    /// Corner shared by centers (row-1, col-1) .. (row, col), 1 <= row, col < m.
    int corner_id(int row, int col) const;

    const Point& position(int id) const { return pos_.at(id); }
    /// All diagonal neighbours, obstacles included, sorted by id.
    const std::vector<int>& neighbors(int id) const { return adj_.at(id); }
    std::size_t edge_count() const;
    /// Length of every diagonal move: pitch * sqrt(2) / 2.
    double move_length() const { return move_length_; }

private:
    WorkspaceConfig cfg_;
    std::vector<Point> pos_;
    std::vector<std::vector<int>> adj_;
    std::vector<char> obstacle_;
    double move_length_;
};

Workspace build_workspace(const WorkspaceConfig& cfg);

double waypoint_distance(const Workspace& ws, int a, int b);

/// Weighted transition system of one robot: states are waypoint ids,
/// transitions are diagonal moves between member states plus a zero-cost
/// stay at every state. A reduced system keeps a subset of the states and the
/// induced transitions.
class Wts {
public:
    Wts(std::shared_ptr<const Workspace> ws, int robot, std::string name, int initial, const std::vector<int>& states);

    const Workspace& workspace() const { return *ws_; }
    const std::shared_ptr<const Workspace>& workspace_ptr() const { return ws_; }
    int robot() const { return robot_; }
    const std::string& name() const { return name_; }
    int initial() const { return initial_; }
    const std::vector<int>& states() const { return states_; }
    std::size_t size() const { return states_.size(); }
    bool contains(int id) const { return id >= 1 && id < static_cast<int>(member_.size()) && member_[id]; }
    /// Move targets of a member state (stay excluded), sorted.
    std::vector<int> moves(int id) const;
    bool has_transition(int from, int to) const;
    /// w(from, to); throws when the transition does not exist.
    double weight(int from, int to) const;
    Atom label(int id) const { return Atom{name_, id}; }

    /// Adds a non-obstacle waypoint to the state set (no-op when present).
    void add_state(int id);

private:
    std::shared_ptr<const Workspace> ws_;
    int robot_;
    std::string name_;
    int initial_;
    std::vector<int> states_;
    std::vector<char> member_;
};

/// Full system of a robot: every non-obstacle waypoint.
Wts build_wts(std::shared_ptr<const Workspace> ws, int robot, const std::string& name, int init);

}  // namespace tlplan
