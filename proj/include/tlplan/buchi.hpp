#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "tlplan/ltl.hpp"

namespace tlplan {

struct Literal {
    Atom atom;
    bool positive = true;

    std::string str() const { return positive ? atom.str() : "!" + atom.str(); }
    auto operator<=>(const Literal&) const = default;
    bool operator==(const Literal&) const = default;
};

/// Conjunction of atom literals; the empty conjunction is `true`.
class Guard {
public:
    Guard() = default;
    explicit Guard(std::vector<Literal> lits);

    const std::vector<Literal>& literals() const { return literals_; }
    bool is_true() const { return literals_.empty(); }
    /// False when the guard contains both `a` and `!a`.
    bool satisfiable() const;
    bool holds(const Letter& letter) const;
    /// Smallest letter satisfying the guard (its positive atoms).
    Letter witness_letter() const;
    /// Every literal of *this also appears in `other`.
    bool subsumes(const Guard& other) const;
    std::string str() const;

    auto operator<=>(const Guard&) const = default;
    bool operator==(const Guard&) const = default;

private:
    std::vector<Literal> literals_;  // sorted, unique
};

/// Nondeterministic Buchi automaton with state-based acceptance.
class Nba {
public:
    struct Transition {
        int src;
        int dst;
        Guard guard;
    };

    Nba() = default;
    Nba(int states, std::vector<int> initial, std::vector<int> accepting, std::vector<Transition> transitions);

    int state_count() const { return states_; }
    const std::vector<int>& initial() const { return initial_; }
    const std::vector<int>& accepting() const { return accepting_; }
    bool is_accepting(int q) const { return accepting_mask_[q] != 0; }
    /// Sorted by (src, dst, guard text).
    const std::vector<Transition>& transitions() const { return transitions_; }
    /// Indices into transitions() leaving state q.
    const std::vector<int>& outgoing(int q) const { return out_[q]; }
    std::set<Atom> atom_universe() const;

private:
    int states_ = 0;
    std::vector<int> initial_;
    std::vector<int> accepting_;
    std::vector<char> accepting_mask_;
    std::vector<Transition> transitions_;
    std::vector<std::vector<int>> out_;
};

/// Transition-based generalized Buchi automaton, the intermediate result of
/// the tableau. A run is accepting when every acceptance set is hit
/// infinitely often.
struct Tgba {
    struct Transition {
        int src;
        int dst;
        Guard guard;
        std::uint64_t marks;
    };

    int states = 0;
    int initial = 0;
    int acceptance_sets = 0;
    std::vector<Transition> transitions;
};

/// Tableau expansion of an NNF formula into a TGBA.
Tgba ltl_to_tgba(const Formula& nnf);

/// Counter-based degeneralization; state ids follow breadth-first
/// construction order.
Nba degeneralize(const Tgba& g);

/// LTL -> NBA. Requires an NNF formula.
Nba translate(const Formula& nnf);

bool accepts_lasso(const Nba& b, const LassoWord& w);
bool accepts_lasso(const Tgba& g, const LassoWord& w);

struct Emptiness {
    bool empty = true;
    std::optional<LassoWord> witness;
};

Emptiness is_empty(const Nba& b);

/// Canonical text form:
///   states: n
///   initial: i,...
///   accepting: i,...
///   src -> dst : guard
std::string write_nba(const Nba& b);
Nba read_nba(std::string_view text);

}  // namespace tlplan
