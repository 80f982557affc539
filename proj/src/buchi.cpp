#include "tlplan/buchi.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>
#include <stdexcept>

#include "tlplan/scc.hpp"

namespace tlplan {

// ---------------------------------------------------------------------------
// Guard

Guard::Guard(std::vector<Literal> lits) : literals_(std::move(lits))
{
    std::sort(literals_.begin(), literals_.end());
    literals_.erase(std::unique(literals_.begin(), literals_.end()), literals_.end());
}

bool Guard::satisfiable() const
{
    for (std::size_t i = 1; i < literals_.size(); ++i)
        if (literals_[i].atom == literals_[i - 1].atom)
            return false;
    return true;
}

bool Guard::holds(const Letter& letter) const
{
    for (const auto& l : literals_)
        if ((letter.count(l.atom) != 0) != l.positive)
            return false;
    return true;
}

Letter Guard::witness_letter() const
{
    Letter out;
    for (const auto& l : literals_)
        if (l.positive)
            out.insert(l.atom);
    return out;
}

bool Guard::subsumes(const Guard& other) const
{
    return std::includes(other.literals_.begin(), other.literals_.end(), literals_.begin(), literals_.end());
}

std::string Guard::str() const
{
    if (literals_.empty())
        return "true";
    std::string out;
    for (const auto& l : literals_) {
        if (!out.empty())
            out += " & ";
        out += l.str();
    }
    return out;
}

// ---------------------------------------------------------------------------
// Nba

Nba::Nba(int states, std::vector<int> initial, std::vector<int> accepting, std::vector<Transition> transitions)
    : states_(states), initial_(std::move(initial)), accepting_(std::move(accepting)), transitions_(std::move(transitions))
{
    auto check = [&](int q) {
        if (q < 0 || q >= states_)
            throw std::invalid_argument("automaton state " + std::to_string(q) + " out of range");
    };
    std::sort(initial_.begin(), initial_.end());
    initial_.erase(std::unique(initial_.begin(), initial_.end()), initial_.end());
    std::sort(accepting_.begin(), accepting_.end());
    accepting_.erase(std::unique(accepting_.begin(), accepting_.end()), accepting_.end());
    accepting_mask_.assign(states_, 0);
    for (int q : initial_)
        check(q);
    for (int q : accepting_) {
        check(q);
        accepting_mask_[q] = 1;
    }
    std::vector<std::pair<std::tuple<int, int, std::string>, Transition>> keyed;
    keyed.reserve(transitions_.size());
    for (auto& t : transitions_) {
        check(t.src);
        check(t.dst);
        keyed.emplace_back(std::make_tuple(t.src, t.dst, t.guard.str()), std::move(t));
    }
    std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    keyed.erase(std::unique(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first == b.first; }),
                keyed.end());
    transitions_.clear();
    out_.assign(states_, {});
    for (auto& [key, t] : keyed) {
        out_[t.src].push_back(static_cast<int>(transitions_.size()));
        transitions_.push_back(std::move(t));
    }
}

std::set<Atom> Nba::atom_universe() const
{
    std::set<Atom> out;
    for (const auto& t : transitions_)
        for (const auto& l : t.guard.literals())
            out.insert(l.atom);
    return out;
}

// ---------------------------------------------------------------------------
// Tableau

namespace {

constexpr int no_child = -1;

struct PoolNode {
    Op op;
    int atom;
    int lhs;
    int rhs;
    auto operator<=>(const PoolNode&) const = default;
};

/// Hash-consed NNF formulas; ids are assigned in first-visit order.
class Pool {
public:
    int intern(const Formula& f)
    {
        PoolNode n{f.op(), no_child, no_child, no_child};
        switch (f.op()) {
        case Op::Atom:
            n.atom = atom_id(f.atom_value());
            break;
        case Op::Not:
            if (f.lhs().op() != Op::Atom)
                throw std::invalid_argument("translate requires an NNF formula");
            n.lhs = intern(f.lhs());
            break;
        case Op::Next:
            n.lhs = intern(f.lhs());
            break;
        case Op::And:
        case Op::Or:
        case Op::Until:
        case Op::Release:
            n.lhs = intern(f.lhs());
            n.rhs = intern(f.rhs());
            break;
        case Op::True:
        case Op::False:
            break;
        default:
            throw std::invalid_argument("translate requires an NNF formula");
        }
        auto [it, inserted] = index_.try_emplace(n, static_cast<int>(nodes_.size()));
        if (inserted)
            nodes_.push_back(n);
        return it->second;
    }

    const PoolNode& operator[](int id) const { return nodes_[id]; }
    std::size_t size() const { return nodes_.size(); }
    const Atom& atom(int id) const { return atoms_[id]; }

private:
    int atom_id(const Atom& a)
    {
        auto [it, inserted] = atom_index_.try_emplace(a, static_cast<int>(atoms_.size()));
        if (inserted)
            atoms_.push_back(a);
        return it->second;
    }

    std::vector<PoolNode> nodes_;
    std::map<PoolNode, int> index_;
    std::vector<Atom> atoms_;
    std::map<Atom, int> atom_index_;
};

struct Term {
    std::set<std::pair<int, bool>> literals;  // (atom id, positive)
    std::set<int> next;
    std::uint64_t postponed = 0;
};

class Tableau {
public:
    explicit Tableau(const Formula& nnf)
    {
        root_ = pool_.intern(nnf);
        for (std::size_t id = 0; id < pool_.size(); ++id) {
            if (pool_[static_cast<int>(id)].op == Op::Until) {
                if (until_bit_.size() >= 64)
                    throw std::length_error("too many until subformulas for the tableau (max 64)");
                until_bit_.emplace(static_cast<int>(id), static_cast<int>(until_bit_.size()));
            }
        }
    }

    Tgba run()
    {
        Tgba g;
        g.acceptance_sets = static_cast<int>(until_bit_.size());
        const std::uint64_t all = g.acceptance_sets == 64 ? ~0ULL : ((1ULL << g.acceptance_sets) - 1);

        std::set<int> init_set;
        add_conjuncts(root_, init_set);
        std::map<std::vector<int>, int> ids;
        std::deque<std::vector<int>> queue;
        auto state_of = [&](const std::set<int>& s) {
            std::vector<int> key = simplify(s);
            auto [it, inserted] = ids.try_emplace(key, static_cast<int>(ids.size()));
            if (inserted)
                queue.push_back(key);
            return it->second;
        };
        g.initial = state_of(init_set);

        while (!queue.empty()) {
            const std::vector<int> cur = queue.front();
            queue.pop_front();
            const int src = ids.at(cur);
            std::vector<Term> terms;
            expand(Term{}, std::vector<int>(cur.begin(), cur.end()), std::set<int>{}, terms);

            std::vector<Tgba::Transition> out;
            for (const auto& t : terms) {
                std::vector<Literal> lits;
                for (const auto& [a, pos] : t.literals)
                    lits.push_back(Literal{pool_.atom(a), pos});
                out.push_back(Tgba::Transition{src, state_of(t.next), Guard(std::move(lits)), all & ~t.postponed});
            }
            // Drop transitions dominated by one with the same target, a weaker
            // guard and at least the same acceptance marks.
            std::vector<char> dead(out.size(), 0);
            for (std::size_t i = 0; i < out.size(); ++i) {
                for (std::size_t j = 0; j < out.size() && !dead[i]; ++j) {
                    if (i == j || dead[j] || out[i].dst != out[j].dst)
                        continue;
                    const bool j_covers_i = out[j].guard.subsumes(out[i].guard) && (out[j].marks & out[i].marks) == out[i].marks;
                    const bool equal = out[i].guard == out[j].guard && out[i].marks == out[j].marks;
                    if (j_covers_i && (!equal || j < i))
                        dead[i] = 1;
                }
            }
            for (std::size_t i = 0; i < out.size(); ++i)
                if (!dead[i])
                    g.transitions.push_back(std::move(out[i]));
        }
        g.states = static_cast<int>(ids.size());
        drop_trivial_marks(g);
        return g;
    }

private:
    void add_conjuncts(int f, std::set<int>& out) const
    {
        const PoolNode& n = pool_[f];
        if (n.op == Op::And) {
            add_conjuncts(n.lhs, out);
            add_conjuncts(n.rhs, out);
        } else if (n.op != Op::True) {
            out.insert(f);
        }
    }

    bool is_always(int f) const { return pool_[f].op == Op::Release && pool_[pool_[f].lhs].op == Op::False; }

    /// Conservative syntactic entailment h |= g.
    bool implies(int h, int g) const
    {
        if (h == g)
            return true;
        const PoolNode& hn = pool_[h];
        const PoolNode& gn = pool_[g];
        if (gn.op == Op::True || hn.op == Op::False)
            return true;
        if (hn.op == Op::And && (implies(hn.lhs, g) || implies(hn.rhs, g)))
            return true;
        if (hn.op == Op::Or && implies(hn.lhs, g) && implies(hn.rhs, g))
            return true;
        if (is_always(h)) {
            if (implies(hn.rhs, g))
                return true;
            if (is_always(g) && implies(hn.rhs, gn.rhs))
                return true;
        }
        if (gn.op == Op::Or && (implies(h, gn.lhs) || implies(h, gn.rhs)))
            return true;
        if (gn.op == Op::And && implies(h, gn.lhs) && implies(h, gn.rhs))
            return true;
        if (gn.op == Op::Until && implies(h, gn.rhs))
            return true;
        return false;
    }

    /// Removes obligations entailed by another member of the set.
    std::vector<int> simplify(const std::set<int>& s) const
    {
        std::vector<int> items(s.begin(), s.end());
        std::vector<char> removed(items.size(), 0);
        for (std::size_t i = 0; i < items.size(); ++i) {
            for (std::size_t j = 0; j < items.size(); ++j) {
                if (i != j && !removed[j] && implies(items[j], items[i])) {
                    removed[i] = 1;
                    break;
                }
            }
        }
        std::vector<int> out;
        for (std::size_t i = 0; i < items.size(); ++i)
            if (!removed[i])
                out.push_back(items[i]);
        return out;
    }

    void expand(Term t, std::vector<int> todo, std::set<int> done, std::vector<Term>& out)
    {
        while (!todo.empty()) {
            const int f = todo.back();
            todo.pop_back();
            if (!done.insert(f).second)
                continue;
            const PoolNode& n = pool_[f];
            switch (n.op) {
            case Op::True:
                break;
            case Op::False:
                return;
            case Op::Atom:
            case Op::Not: {
                const bool positive = n.op == Op::Atom;
                const int a = positive ? n.atom : pool_[n.lhs].atom;
                if (t.literals.count({a, !positive}))
                    return;
                t.literals.insert({a, positive});
                break;
            }
            case Op::And:
                todo.push_back(n.rhs);
                todo.push_back(n.lhs);
                break;
            case Op::Or: {
                auto left = todo;
                left.push_back(n.lhs);
                expand(t, std::move(left), done, out);
                todo.push_back(n.rhs);
                break;
            }
            case Op::Next:
                add_conjuncts(n.lhs, t.next);
                break;
            case Op::Until: {
                // fulfil now, or keep the left side and postpone
                auto now = todo;
                now.push_back(n.rhs);
                expand(t, std::move(now), done, out);
                todo.push_back(n.lhs);
                t.next.insert(f);
                t.postponed |= 1ULL << until_bit_.at(f);
                break;
            }
            case Op::Release: {
                if (pool_[n.lhs].op != Op::False) {
                    auto both = todo;
                    both.push_back(n.lhs);
                    both.push_back(n.rhs);
                    expand(t, std::move(both), done, out);
                }
                todo.push_back(n.rhs);
                t.next.insert(f);
                break;
            }
            default:
                throw std::logic_error("unexpected operator in tableau");
            }
        }
        out.push_back(std::move(t));
    }

    // Acceptance sets carried by every transition constrain nothing.
    static void drop_trivial_marks(Tgba& g)
    {
        if (g.acceptance_sets == 0)
            return;
        std::uint64_t common = ~0ULL;
        for (const auto& t : g.transitions)
            common &= t.marks;
        std::vector<int> keep;
        for (int b = 0; b < g.acceptance_sets; ++b)
            if (!(common >> b & 1ULL))
                keep.push_back(b);
        if (static_cast<int>(keep.size()) == g.acceptance_sets)
            return;
        for (auto& t : g.transitions) {
            std::uint64_t m = 0;
            for (std::size_t k = 0; k < keep.size(); ++k)
                if (t.marks >> keep[k] & 1ULL)
                    m |= 1ULL << k;
            t.marks = m;
        }
        g.acceptance_sets = static_cast<int>(keep.size());
    }

    Pool pool_;
    int root_ = 0;
    std::map<int, int> until_bit_;
};

}  // namespace

Tgba ltl_to_tgba(const Formula& nnf)
{
    if (!is_nnf(nnf))
        throw std::invalid_argument("translate requires an NNF formula");
    return Tableau(nnf).run();
}

Nba degeneralize(const Tgba& g)
{
    const int k = g.acceptance_sets;
    std::vector<std::vector<const Tgba::Transition*>> out(g.states);
    for (const auto& t : g.transitions)
        out[t.src].push_back(&t);

    // level k is the accepting copy; with no acceptance sets every state accepts.
    std::map<std::pair<int, int>, int> ids;
    std::deque<std::pair<int, int>> queue;
    auto id_of = [&](int q, int level) {
        auto [it, inserted] = ids.try_emplace({q, level}, static_cast<int>(ids.size()));
        if (inserted)
            queue.emplace_back(q, level);
        return it->second;
    };
    const int init = id_of(g.initial, k);
    std::vector<int> accepting;
    std::vector<Nba::Transition> trans;
    while (!queue.empty()) {
        const auto [q, level] = queue.front();
        queue.pop_front();
        const int src = ids.at({q, level});
        if (level == k)
            accepting.push_back(src);
        for (const auto* t : out[q]) {
            int next = level == k ? 0 : level;
            while (next < k && (t->marks >> next & 1ULL))
                ++next;
            trans.push_back(Nba::Transition{src, id_of(t->dst, next), t->guard});
        }
    }
    // Same target, weaker guard wins.
    std::vector<char> dead(trans.size(), 0);
    std::map<std::pair<int, int>, std::vector<std::size_t>> by_edge;
    for (std::size_t i = 0; i < trans.size(); ++i)
        by_edge[{trans[i].src, trans[i].dst}].push_back(i);
    for (const auto& [edge, list] : by_edge) {
        for (std::size_t a : list) {
            for (std::size_t b : list) {
                if (a == b || dead[b])
                    continue;
                if (trans[b].guard.subsumes(trans[a].guard) && (trans[a].guard != trans[b].guard || b < a)) {
                    dead[a] = 1;
                    break;
                }
            }
        }
    }
    std::vector<Nba::Transition> kept;
    for (std::size_t i = 0; i < trans.size(); ++i)
        if (!dead[i])
            kept.push_back(std::move(trans[i]));
    return Nba(static_cast<int>(ids.size()), {init}, std::move(accepting), std::move(kept));
}

Nba translate(const Formula& nnf) { return degeneralize(ltl_to_tgba(nnf)); }

// ---------------------------------------------------------------------------
// Lasso membership

namespace {

struct LassoProduct {
    std::size_t positions;
    int states;
    std::vector<std::vector<std::pair<int, std::uint64_t>>> edges;

    int node(std::size_t pos, int q) const { return static_cast<int>(pos) * states + q; }
};

template <typename Trans>
LassoProduct lasso_product(int states, const std::vector<Trans>& transitions, const LassoWord& w,
                           std::uint64_t (*marks_of)(const Trans&))
{
    if (w.period.empty())
        throw std::invalid_argument("lasso word needs a nonempty period");
    LassoProduct p{w.size(), states, {}};
    p.edges.assign(p.positions * static_cast<std::size_t>(states), {});
    for (std::size_t pos = 0; pos < p.positions; ++pos) {
        const Letter& letter = w.at(pos);
        const std::size_t nxt = w.successor(pos);
        for (const auto& t : transitions)
            if (t.guard.holds(letter))
                p.edges[p.node(pos, t.src)].emplace_back(p.node(nxt, t.dst), marks_of(t));
    }
    return p;
}

// Some reachable SCC with an internal edge collects all `required` marks and,
// when `accepting_state` is set, contains an accepting automaton state.
bool has_accepting_cycle(const LassoProduct& p, const std::vector<int>& initial, std::uint64_t required,
                         const std::vector<char>* accepting_state)
{
    std::vector<int> roots;
    for (int q : initial)
        roots.push_back(p.node(0, q));
    const auto scc = strongly_connected_components(p.edges.size(), roots, [&](int v, auto&& emit) {
        for (const auto& [w, m] : p.edges[v])
            emit(w);
    });
    std::vector<std::uint64_t> collected(scc.count, 0);
    std::vector<char> cyclic(scc.count, 0);
    std::vector<char> has_acc(scc.count, 0);
    for (std::size_t v = 0; v < p.edges.size(); ++v) {
        const int c = scc.component[v];
        if (c < 0)
            continue;
        if (accepting_state && (*accepting_state)[v % p.states])
            has_acc[c] = 1;
        for (const auto& [w, m] : p.edges[v]) {
            if (scc.component[w] == c) {
                cyclic[c] = 1;
                collected[c] |= m;
            }
        }
    }
    for (int c = 0; c < scc.count; ++c) {
        if (!cyclic[c] || (collected[c] & required) != required)
            continue;
        if (accepting_state && !has_acc[c])
            continue;
        return true;
    }
    return false;
}

}  // namespace

bool accepts_lasso(const Nba& b, const LassoWord& w)
{
    const auto p = lasso_product<Nba::Transition>(b.state_count(), b.transitions(), w,
                                                  [](const Nba::Transition&) -> std::uint64_t { return 0; });
    std::vector<char> acc(b.state_count(), 0);
    for (int q : b.accepting())
        acc[q] = 1;
    return has_accepting_cycle(p, b.initial(), 0, &acc);
}

bool accepts_lasso(const Tgba& g, const LassoWord& w)
{
    const auto p = lasso_product<Tgba::Transition>(g.states, g.transitions, w,
                                                   [](const Tgba::Transition& t) { return t.marks; });
    const std::uint64_t all = g.acceptance_sets == 64 ? ~0ULL : ((1ULL << g.acceptance_sets) - 1);
    return has_accepting_cycle(p, {g.initial}, all, nullptr);
}

// ---------------------------------------------------------------------------
// Emptiness

namespace {

// Breadth-first path of transition indices from `from` to `to`; when from ==
// to the path has at least one transition.
std::optional<std::vector<int>> bfs_path(const Nba& b, int from, int to, const std::vector<char>& allowed)
{
    std::vector<int> via(b.state_count(), -1);
    std::vector<char> seen(b.state_count(), 0);
    std::deque<int> queue;
    auto push_out = [&](int q) {
        for (int ti : b.outgoing(q)) {
            const auto& t = b.transitions()[ti];
            if (!t.guard.satisfiable() || !allowed[t.dst] || seen[t.dst])
                continue;
            seen[t.dst] = 1;
            via[t.dst] = ti;
            queue.push_back(t.dst);
        }
    };
    if (from != to) {
        seen[from] = 1;
    }
    push_out(from);
    while (!queue.empty()) {
        const int q = queue.front();
        queue.pop_front();
        if (q == to)
            break;
        push_out(q);
    }
    if (!seen[to] || via[to] < 0)
        return std::nullopt;
    std::vector<int> path;
    int q = to;
    do {
        const int ti = via[q];
        path.push_back(ti);
        q = b.transitions()[ti].src;
    } while (q != from || path.empty());
    std::reverse(path.begin(), path.end());
    return path;
}

}  // namespace

Emptiness is_empty(const Nba& b)
{
    const int n = b.state_count();
    const auto scc = strongly_connected_components(static_cast<std::size_t>(n), b.initial(), [&](int q, auto&& emit) {
        for (int ti : b.outgoing(q))
            if (b.transitions()[ti].guard.satisfiable())
                emit(b.transitions()[ti].dst);
    });
    std::vector<char> cyclic(scc.count, 0);
    for (const auto& t : b.transitions())
        if (t.guard.satisfiable() && scc.component[t.src] >= 0 && scc.component[t.src] == scc.component[t.dst])
            cyclic[scc.component[t.src]] = 1;

    for (int f : b.accepting()) {
        const int c = scc.component[f];
        if (c < 0 || !cyclic[c])
            continue;
        std::vector<char> everywhere(n, 1);
        std::vector<char> in_component(n, 0);
        for (int q = 0; q < n; ++q)
            in_component[q] = scc.component[q] == c;

        std::optional<std::vector<int>> stem;
        for (int i : b.initial()) {
            if (i == f) {
                stem = std::vector<int>{};
                break;
            }
            if (auto p = bfs_path(b, i, f, everywhere)) {
                stem = std::move(p);
                break;
            }
        }
        auto loop = bfs_path(b, f, f, in_component);
        if (!stem || !loop)
            continue;
        LassoWord w;
        for (int ti : *stem)
            w.prefix.push_back(b.transitions()[ti].guard.witness_letter());
        for (int ti : *loop)
            w.period.push_back(b.transitions()[ti].guard.witness_letter());
        return Emptiness{false, std::move(w)};
    }
    return Emptiness{true, std::nullopt};
}

// ---------------------------------------------------------------------------
// Text format

std::string write_nba(const Nba& b)
{
    std::ostringstream os;
    auto join = [](const std::vector<int>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i)
                s += ',';
            s += std::to_string(v[i]);
        }
        return s;
    };
    os << "states: " << b.state_count() << '\n';
    os << "initial: " << join(b.initial()) << '\n';
    os << "accepting: " << join(b.accepting()) << '\n';
    for (const auto& t : b.transitions())
        os << t.src << " -> " << t.dst << " : " << t.guard.str() << '\n';
    return os.str();
}

namespace {

std::string trim(std::string_view s)
{
    std::size_t a = 0, e = s.size();
    while (a < e && std::isspace(static_cast<unsigned char>(s[a])))
        ++a;
    while (e > a && std::isspace(static_cast<unsigned char>(s[e - 1])))
        --e;
    return std::string(s.substr(a, e - a));
}

std::vector<int> parse_int_list(const std::string& s, int line)
{
    std::vector<int> out;
    std::string item;
    std::istringstream is(s);
    while (std::getline(is, item, ',')) {
        item = trim(item);
        if (item.empty())
            continue;
        try {
            std::size_t used = 0;
            out.push_back(std::stoi(item, &used));
            if (used != item.size())
                throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ParseError("bad state id '" + item + "'", line, 1);
        }
    }
    return out;
}

Guard parse_guard(const std::string& s, int line)
{
    if (s == "true")
        return Guard{};
    std::vector<Literal> lits;
    std::string item;
    std::istringstream is(s);
    while (std::getline(is, item, '&')) {
        item = trim(item);
        bool positive = true;
        if (!item.empty() && item[0] == '!') {
            positive = false;
            item = trim(item.substr(1));
        }
        const Formula f = parse(item);
        if (f.op() != Op::Atom)
            throw ParseError("guard literal '" + item + "' is not an atom", line, 1);
        lits.push_back(Literal{f.atom_value(), positive});
    }
    return Guard(std::move(lits));
}

}  // namespace

Nba read_nba(std::string_view text)
{
    std::istringstream is{std::string(text)};
    std::string raw;
    int line = 0;
    std::optional<int> states;
    std::vector<int> initial, accepting;
    std::vector<Nba::Transition> trans;
    while (std::getline(is, raw)) {
        ++line;
        const std::string l = trim(raw);
        if (l.empty() || l[0] == '#')
            continue;
        auto header = [&](const char* key) -> std::optional<std::string> {
            const std::string k = key;
            if (l.rfind(k, 0) == 0)
                return trim(std::string_view(l).substr(k.size()));
            return std::nullopt;
        };
        if (auto v = header("states:")) {
            const auto n = parse_int_list(*v, line);
            if (n.size() != 1 || n[0] < 0)
                throw ParseError("bad state count", line, 1);
            states = n[0];
        } else if (auto v = header("initial:")) {
            initial = parse_int_list(*v, line);
        } else if (auto v = header("accepting:")) {
            accepting = parse_int_list(*v, line);
        } else {
            const auto arrow = l.find("->");
            const auto colon = l.find(':');
            if (arrow == std::string::npos || colon == std::string::npos || colon < arrow)
                throw ParseError("expected 'src -> dst : guard'", line, 1);
            const auto src = parse_int_list(l.substr(0, arrow), line);
            const auto dst = parse_int_list(l.substr(arrow + 2, colon - arrow - 2), line);
            if (src.size() != 1 || dst.size() != 1)
                throw ParseError("expected 'src -> dst : guard'", line, 1);
            trans.push_back(Nba::Transition{src[0], dst[0], parse_guard(trim(l.substr(colon + 1)), line)});
        }
    }
    if (!states)
        throw ParseError("missing 'states:' header", line, 1);
    return Nba(*states, std::move(initial), std::move(accepting), std::move(trans));
}

}  // namespace tlplan
