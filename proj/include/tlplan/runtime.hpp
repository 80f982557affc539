#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tlplan/synthesis.hpp"
#include "tlplan/workspace.hpp"

namespace tlplan {

struct TrajectoryStep {
    std::size_t step = 0;
    JointState waypoints;
    std::vector<Point> positions;
    std::optional<double> min_distance;  // absent for a single robot
    double cumulative_cost = 0.0;

    bool operator==(const TrajectoryStep& o) const;
};

struct Trajectory {
    std::vector<std::string> robots;
    std::vector<TrajectoryStep> steps;

    bool operator==(const Trajectory& o) const = default;
};

/// Prefix once, then `suffix_repetitions` copies of the suffix with the
/// repeated junction state dropped. Throws InputError for malformed plans.
Trajectory execute(const Plan& pl, const Workspace& ws, int suffix_repetitions);

/// (step, minimum pairwise distance); empty for single-robot trajectories.
std::vector<std::pair<std::size_t, double>> distance_series(const Trajectory& tr);

enum class TrajectoryFormat { Csv, Json };

std::string trajectory_to_csv(const Trajectory& tr);
std::string trajectory_to_json(const Trajectory& tr);
Trajectory trajectory_from_json(const std::string& text);
/// Writes the trajectory; throws InputError when the file cannot be written.
void export_trajectory(const Trajectory& tr, TrajectoryFormat format, const std::string& path);

}  // namespace tlplan
