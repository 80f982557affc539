#pragma once

#include <compare>
#include <cstddef>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tlplan {

/// An atomic proposition. `robot@waypoint` atoms carry a positive waypoint
/// id; plain propositions (`p`, `obs`) have waypoint == 0.
struct Atom {
    std::string robot;
    int waypoint = 0;

    static Atom obs() { return Atom{"obs", 0}; }
    bool is_obs() const { return waypoint == 0 && robot == "obs"; }
    bool is_located() const { return waypoint > 0; }
    std::string str() const;

    auto operator<=>(const Atom&) const = default;
    bool operator==(const Atom&) const = default;
};

/// A letter of 2^AP: the set of atoms that hold. Atoms not listed are false.
using Letter = std::set<Atom>;

enum class Op {
    True,
    False,
    Atom,
    Not,
    And,
    Or,
    Implies,
    Next,
    Until,
    Release,
    Eventually,
    Always,
};

/// Immutable LTL syntax tree with shared structure. Cheap to copy.
class Formula {
public:
    Formula();  // true

    static Formula truth();
    static Formula falsity();
    static Formula atom(Atom a);
    static Formula negation(Formula f);
    static Formula conj(Formula l, Formula r);
    static Formula disj(Formula l, Formula r);
    static Formula implies(Formula l, Formula r);
    static Formula next(Formula f);
    static Formula until(Formula l, Formula r);
    static Formula release(Formula l, Formula r);
    static Formula eventually(Formula f);
    static Formula always(Formula f);

    Op op() const;
    const Atom& atom_value() const;  // only for Op::Atom
    const Formula& lhs() const;      // unary child or left operand
    const Formula& rhs() const;      // right operand of binary operators
    bool is_unary() const;
    bool is_binary() const;

    /// Structural equality.
    bool operator==(const Formula& other) const;

    /// Fully parenthesized canonical text; parse(str()) == *this.
    std::string str() const;

private:
    struct Node;
    explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    static Formula make(Op op, Atom a, Formula l, Formula r);
    static Formula make_leaf(Op op, Atom a);
    std::shared_ptr<const Node> node_;
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, int line, int column);
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

/// Grammar (loosest first): `->` (right assoc), `|`, `&`, `U`/`R` (right
/// assoc), then prefix `! X F G`. Atoms are `name` or `name@index`; `#`
/// starts a comment running to the end of the line.
Formula parse(std::string_view text);

/// Negation normal form: negation only on atoms, no ->, F, G.
Formula to_nnf(const Formula& f);
bool is_nnf(const Formula& f);

std::set<Atom> atoms(const Formula& f);

/// Ultimately periodic word prefix . period^omega.
struct LassoWord {
    std::vector<Letter> prefix;
    std::vector<Letter> period;

    std::size_t size() const { return prefix.size() + period.size(); }
    const Letter& at(std::size_t pos) const;
    /// Position reached after `pos` on the lasso (wraps into the period).
    std::size_t successor(std::size_t pos) const;
};

bool eval_lasso(const Formula& f, const LassoWord& w);

}  // namespace tlplan
