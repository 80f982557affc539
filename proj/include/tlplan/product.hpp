#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "tlplan/buchi.hpp"
#include "tlplan/workspace.hpp"

namespace tlplan {

/// The initial joint state already violates the proximity constraint.
class InfeasibleStartError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The automaton mentions an atom the robot team cannot produce.
class AlphabetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A search or enumeration would exceed the configured resource limits.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ProximityOptions {
    double r_influence = 0.0;     // pairwise distance must be strictly larger
    bool check_midpoints = false; // also test the midpoint of every joint move
};

/// Pairwise separation test for joint waypoint tuples and joint moves.
class ProximityRule {
public:
    ProximityRule() = default;
    ProximityRule(std::shared_ptr<const Workspace> ws, ProximityOptions opt);

    const ProximityOptions& options() const { return opt_; }
    bool separated(int a, int b) const { return ok_[static_cast<std::size_t>(a) * stride_ + b] != 0; }
    bool state_ok(std::span<const int> tuple) const;
    /// Midpoint test of a joint move (always true unless midpoints are checked).
    bool move_ok(std::span<const int> from, std::span<const int> to) const;

private:
    std::shared_ptr<const Workspace> ws_;
    ProximityOptions opt_;
    std::size_t stride_ = 0;
    std::vector<char> ok_;
};

/// Joint move between two PTS states; `units` counts individual robot moves,
/// so the joint weight is units * workspace move length.
struct PtsArc {
    int to;
    int units;
};

/// Synchronous product of robot transition systems with proximity pruning,
/// explicitly enumerated. Joint states are numbered in lexicographic tuple
/// order at construction; later insertions are appended.
class Pts {
public:
    Pts(std::vector<Wts> components, ProximityOptions opt);

    std::size_t robots() const { return comps_.size(); }
    const std::vector<Wts>& components() const { return comps_; }
    const Workspace& workspace() const { return comps_.front().workspace(); }
    const ProximityRule& rule() const { return rule_; }
    std::size_t size() const { return tuples_.size() / comps_.size(); }
    std::span<const int> tuple(int idx) const
    {
        return {tuples_.data() + static_cast<std::size_t>(idx) * comps_.size(), comps_.size()};
    }
    int initial() const { return initial_; }
    std::optional<int> index_of(std::span<const int> tuple) const;
    /// Outgoing joint moves, the all-stay self-loop included.
    const std::vector<PtsArc>& successors(int idx) const { return adj_[idx]; }
    std::size_t transition_count() const;
    Letter label(int idx) const;
    /// Joint weight w_PTS as the sum of component weights.
    double weight(int from, int to) const;
    /// Number of joint tuples before pruning.
    std::uint64_t unpruned_size() const;

    /// Adds a waypoint to a component system without creating joint states.
    void add_component_state(std::size_t robot, int waypoint);
    /// Inserts one joint state (components must already contain its
    /// waypoints) together with every joint move to and from existing states.
    int insert_joint_state(std::span<const int> tuple);

private:
    std::uint64_t key(std::span<const int> tuple) const;
    void link(int idx);
    bool joint_move(std::span<const int> a, std::span<const int> b, int& units) const;

    std::vector<Wts> comps_;
    ProximityRule rule_;
    std::vector<int> tuples_;
    std::unordered_map<std::uint64_t, int> index_;
    std::vector<std::vector<PtsArc>> adj_;
    int initial_ = 0;
};

Pts compose_pts(std::vector<Wts> components, ProximityOptions opt);

/// NBA guards compiled against robot indices: literal (robot, waypoint).
/// Robot -1 stands for atoms no robot state ever makes true (`obs`).
class CompiledGuards {
public:
    struct Lit {
        int robot;
        int waypoint;
        bool positive;
    };

    CompiledGuards() = default;
    CompiledGuards(const Nba& nba, const std::vector<Wts>& comps);

    bool holds(int transition, std::span<const int> tuple) const;
    /// Relaxation used by search heuristics: literals of other robots are
    /// ignored, literals of `robot` are checked against `waypoint`.
    bool may_hold(int transition, int robot, int waypoint) const;
    const std::vector<Lit>& literals(int transition) const { return lits_[transition]; }

private:
    std::vector<std::vector<Lit>> lits_;
};

/// Graph view of a product Buchi automaton shared by the materialized and
/// on-demand implementations. Node ids are pts_index * |Q_B| + q_B, where the
/// PTS index is implementation specific.
class ProductGraph {
public:
    struct Arc {
        std::uint64_t to;
        int units;
    };

    virtual ~ProductGraph() = default;

    virtual const std::vector<Wts>& components() const = 0;
    virtual const Nba& nba() const = 0;
    virtual const CompiledGuards& guards() const = 0;
    virtual const ProximityRule& rule() const = 0;
    /// Every node id is below this bound.
    virtual std::uint64_t node_bound() const = 0;
    virtual std::vector<std::uint64_t> initial_nodes() const = 0;
    /// Appends successors of `node` to `out` in deterministic order.
    virtual void successors(std::uint64_t node, std::vector<Arc>& out) const = 0;
    /// Joint waypoint tuple of the node's PTS component.
    virtual void tuple(std::uint64_t node, std::vector<int>& out) const = 0;

    int nba_state(std::uint64_t node) const { return static_cast<int>(node % nba().state_count()); }
    bool is_accepting(std::uint64_t node) const { return nba().is_accepting(nba_state(node)); }
    double move_length() const { return components().front().workspace().move_length(); }
};

/// Materialized product automaton over an explicit PTS.
class Pba : public ProductGraph {
public:
    Pba(Pts pts, std::shared_ptr<const Nba> nba);

    const Pts& pts() const { return pts_; }
    const std::vector<Wts>& components() const override { return pts_.components(); }
    const Nba& nba() const override { return *nba_; }
    const std::shared_ptr<const Nba>& nba_ptr() const { return nba_; }
    const CompiledGuards& guards() const override { return guards_; }
    const ProximityRule& rule() const override { return pts_.rule(); }
    std::uint64_t node_bound() const override { return state_count(); }
    std::vector<std::uint64_t> initial_nodes() const override;
    void successors(std::uint64_t node, std::vector<Arc>& out) const override;
    void tuple(std::uint64_t node, std::vector<int>& out) const override;

    std::uint64_t state_count() const { return pts_.size() * static_cast<std::uint64_t>(nba_->state_count()); }
    std::uint64_t accepting_count() const { return pts_.size() * nba_->accepting().size(); }
    std::uint64_t transition_count() const;
    const std::vector<Arc>& arcs(std::uint64_t node) const { return adj_[node]; }

    /// Adds a component waypoint (see Pts::add_component_state).
    void add_component_state(std::size_t robot, int waypoint);
    /// Incremental insertion of one joint state and all product transitions
    /// between it and the existing states. Returns the new PTS index.
    int insert_joint_state(std::span<const int> tuple);

    /// Order-independent text form: states and arcs listed by joint tuple.
    std::string canonical_text() const;

private:
    void expand(int pts_idx);
    void connect(int from_pts, int to_pts, int units);

    Pts pts_;
    std::shared_ptr<const Nba> nba_;
    CompiledGuards guards_;
    std::vector<std::vector<Arc>> adj_;
};

Pba build_pba(Pts pts, std::shared_ptr<const Nba> nba);
/// Functional form of Pba::insert_joint_state.
Pba update_pba(Pba p, std::span<const int> tuple);

/// Product automaton whose PTS is expanded on demand from the components,
/// for products too large to store. PTS indices are mixed-radix numbers over
/// the components' sorted state lists.
class LazyPba : public ProductGraph {
public:
    LazyPba(std::vector<Wts> components, ProximityOptions opt, std::shared_ptr<const Nba> nba);

    const std::vector<Wts>& components() const override { return comps_; }
    const Nba& nba() const override { return *nba_; }
    const CompiledGuards& guards() const override { return guards_; }
    const ProximityRule& rule() const override { return rule_; }
    std::uint64_t node_bound() const override { return bound_; }
    std::vector<std::uint64_t> initial_nodes() const override;
    void successors(std::uint64_t node, std::vector<Arc>& out) const override;
    void tuple(std::uint64_t node, std::vector<int>& out) const override;

    std::uint64_t encode(std::span<const int> tuple, int q) const;

private:
    std::vector<Wts> comps_;
    ProximityRule rule_;
    std::shared_ptr<const Nba> nba_;
    CompiledGuards guards_;
    std::vector<std::vector<int>> local_;  // waypoint -> index in comps_[i].states(), or -1
    std::vector<std::uint64_t> radix_;
    std::uint64_t bound_ = 0;
};

/// prod(component_sizes) * nba_size; throws std::overflow_error when the
/// value does not fit in 64 bits.
std::uint64_t theoretical_pba_size(std::span<const std::uint64_t> component_sizes, std::uint64_t nba_size);

struct ProductStats {
    std::vector<std::uint64_t> component_sizes;
    std::uint64_t joint_unpruned = 0;
    std::optional<std::uint64_t> joint_pruned;  // absent when not enumerated
    int nba_states = 0;
    int nba_accepting = 0;
    int nba_transitions = 0;
    std::uint64_t pba_theoretical = 0;
    std::optional<std::uint64_t> pba_states;
    std::optional<std::uint64_t> pba_accepting;
    std::optional<std::uint64_t> pba_transitions;
    std::optional<std::uint64_t> memory_bytes_estimate;

    std::string to_json() const;
};

ProductStats product_stats(const Pba& p);
/// Statistics without materializing; joint states are counted when the
/// unpruned product has at most `count_limit` tuples.
ProductStats product_stats(const std::vector<Wts>& comps, ProximityOptions opt, const Nba& nba,
                           std::uint64_t count_limit = 20'000'000);

}  // namespace tlplan
