#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tlplan/buchi.hpp"
#include "tlplan/ltl.hpp"
#include "tlplan/product.hpp"
#include "tlplan/workspace.hpp"

namespace tlplan {

/// No reachable accepting product state lies on a cycle.
class InfeasibleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Two independent checks disagreed; indicates a defect, not bad input.
class ConsistencyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SolverStats {
    std::uint64_t nodes_expanded = 0;
    std::uint64_t dijkstra_runs = 0;      // single-source searches, prefix search included
    std::uint64_t reachable_nodes = 0;
    std::uint64_t accepting_reachable = 0;
    std::uint64_t accepting_on_cycle = 0; // survivors of the SCC test
    std::uint64_t cycle_searches_skipped = 0;
    double runtime_ms = 0.0;              // wall clock, excluded from plan files
};

using JointState = std::vector<int>;

/// Prefix-suffix plan. prefix runs from the initial joint state to the
/// accepting product state; suffix starts and ends at that same joint state.
struct Plan {
    std::vector<std::string> robots;
    std::vector<JointState> prefix;
    std::vector<JointState> suffix;
    std::vector<int> prefix_nba;
    std::vector<int> suffix_nba;
    double prefix_cost = 0.0;
    double suffix_cost = 0.0;
    double total_cost = 0.0;
    std::uint64_t accepting_node = 0;
    SolverStats stats;
};

struct CostTriple {
    double prefix = 0.0;
    double suffix = 0.0;
    double total = 0.0;
};

struct SynthesisOptions {
    int threads = 0;              // 0: TSP_THREADS or hardware concurrency
    std::size_t chunk_size = 64;  // cycle searches per scheduling round
    bool goal_directed = true;    // false: plain Dijkstra for cycles (oracle)
};

/// Worker count from an explicit request, then TSP_THREADS, then hardware.
int resolve_threads(int requested);

struct SynthesisResult {
    std::optional<Plan> plan;
    SolverStats stats;
};

SynthesisResult try_synthesize(const ProductGraph& p, const SynthesisOptions& opt = {});
/// Throws InfeasibleError when no plan exists.
Plan synthesize(const ProductGraph& p, const SynthesisOptions& opt = {});

/// Weight of one joint step; throws InputError when it is not a legal joint
/// transition of the workspace (non-adjacent move or obstacle waypoint).
double joint_step_weight(const Workspace& ws, const JointState& from, const JointState& to);

/// Recomputes costs by summing step weights in plan order.
CostTriple plan_cost(const Plan& pl, const Workspace& ws);

/// Structural problems of a plan (shape, adjacency, obstacles, costs,
/// proximity); empty when the plan is well formed.
std::vector<std::string> plan_violations(const Plan& pl, const Workspace& ws, const ProximityRule& rule);

LassoWord plan_word(const Plan& pl);

/// Checks the plan trace against the automaton and cross-checks with the
/// formula evaluator; throws ConsistencyError when they disagree.
bool verify(const Plan& pl, const Formula& f, const Nba& b);

std::string plan_to_json(const Plan& pl);
Plan plan_from_json(const std::string& text);

}  // namespace tlplan
