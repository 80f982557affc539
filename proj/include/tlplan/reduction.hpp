#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tlplan/buchi.hpp"
#include "tlplan/ltl.hpp"
#include "tlplan/product.hpp"
#include "tlplan/synthesis.hpp"
#include "tlplan/workspace.hpp"

namespace tlplan {

/// A location required by the task cannot be reached while building the
/// initial reduced systems.
class InitializationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Waypoints of each robot's atoms in the task: `pi` lists positively
/// occurring ones in first-occurrence order after the initial waypoint,
/// `pi_bar` the negated ones in ascending order.
struct PropSets {
    std::vector<std::vector<int>> pi;
    std::vector<std::vector<int>> pi_bar;
};

PropSets extract_prop_sets(const Formula& f, const std::vector<std::string>& robots, const std::vector<int>& initial);

/// Union of lexicographically smallest shortest paths between consecutive
/// entries of `pi`, avoiding pi_bar \ pi. With `skip_unreachable`, targets
/// that cannot be reached are skipped instead of raising InitializationError.
Wts build_initial_wts(const Wts& full, const std::vector<int>& pi, const std::vector<int>& pi_bar,
                      bool skip_unreachable = false);

std::vector<int> compute_seed_set(const Wts& reduced, const std::vector<int>& pi_bar);

/// States within `n` hops of `anchor` in the full system that are not yet in
/// `existing`, ascending.
std::vector<int> n_hop_candidates(const Wts& full, int anchor, int n, const Wts& existing);

/// States of the full system reachable from its initial state.
std::vector<int> reachable_states(const Wts& full);

enum class ExpansionMode {
    FullProduct,    // every new joint combination enters the product
    JointTupleOnly, // one new joint tuple per iteration
};

struct ReductionConfig {
    ExpansionMode mode = ExpansionMode::FullProduct;
    std::uint64_t seed = 0;
    bool precheck = true;          // quick infeasibility test over reachable locations
    bool init_fallback = true;     // skip unreachable task locations during initialization
    bool check_rebuild = false;    // compare every incremental product with a rebuild
    std::size_t max_iterations = 0; // 0: unlimited
    ProximityOptions proximity;
    SynthesisOptions synthesis;
};

enum class ReductionOutcome {
    Planned,
    Infeasible,   // every reduced system saturated and synthesis failed
    Unsatisfiable, // the task cannot hold using reachable locations only
    IterationLimit,
};

std::string to_string(ReductionOutcome o);

struct IterationRecord {
    std::size_t iteration = 0;
    std::vector<std::optional<int>> added;  // per robot
    std::vector<int> anchors;               // S_i(kappa_i) used for the draw
    std::vector<int> hops;                  // n_i used for the draw
    std::uint64_t joint_states_added = 0;
    std::uint64_t pba_states = 0;
    std::uint64_t pba_transitions = 0;
    double update_ms = 0.0;
    double synthesis_ms = 0.0;
};

struct ReductionReport {
    std::vector<std::string> robots;
    std::string mode;
    std::uint64_t seed = 0;
    PropSets sets;
    std::vector<std::vector<int>> seed_sets;
    std::vector<std::size_t> initial_sizes;
    std::vector<std::size_t> final_sizes;
    std::vector<std::size_t> full_sizes;
    std::uint64_t initial_pba_states = 0;
    std::uint64_t initial_pba_transitions = 0;
    double initial_synthesis_ms = 0.0;
    double init_ms = 0.0;
    std::vector<IterationRecord> iterations;
    std::vector<std::string> notes;
    std::string outcome;
    SolverStats last_solver;
    std::vector<std::vector<int>> final_states;

    /// Deterministic fields only when `with_timing` is false.
    std::string to_json(bool with_timing = true) const;
};

struct ReductionResult {
    ReductionOutcome outcome = ReductionOutcome::Infeasible;
    std::optional<Plan> plan;
    ReductionReport report;
};

ReductionResult reduce_and_plan(const std::vector<Wts>& full, const Formula& f, std::shared_ptr<const Nba> b,
                                const ReductionConfig& cfg);

/// Replaces every atom for which `is_false` holds by `false`.
Formula substitute_false(const Formula& f, const std::function<bool(const Atom&)>& is_false);

}  // namespace tlplan
