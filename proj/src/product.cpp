#include "tlplan/product.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace tlplan {

namespace {

// Calls fn(choice) for every combination of per-robot options, last robot
// varying fastest.
template <typename Fn>
void for_each_combination(const std::vector<std::vector<int>>& options, std::vector<int>& choice, Fn&& fn)
{
    const std::size_t n = options.size();
    for (const auto& o : options)
        if (o.empty())
            return;
    std::vector<std::size_t> pos(n, 0);
    choice.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        choice[i] = options[i][0];
    while (true) {
        fn(choice);
        std::size_t i = n;
        while (i > 0) {
            --i;
            if (++pos[i] < options[i].size()) {
                choice[i] = options[i][pos[i]];
                break;
            }
            pos[i] = 0;
            choice[i] = options[i][0];
            if (i == 0)
                return;
        }
        if (n == 0)
            return;
    }
}

std::vector<int> move_options(const Wts& w, int q)
{
    std::vector<int> opts = w.moves(q);
    opts.insert(std::upper_bound(opts.begin(), opts.end(), q), q);
    return opts;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b)
{
    std::uint64_t r;
    if (__builtin_mul_overflow(a, b, &r))
        throw std::overflow_error("state count exceeds 64-bit range");
    return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// ProximityRule

ProximityRule::ProximityRule(std::shared_ptr<const Workspace> ws, ProximityOptions opt)
    : ws_(std::move(ws)), opt_(opt), stride_(static_cast<std::size_t>(ws_->size()) + 1)
{
    ok_.assign(stride_ * stride_, 0);
    for (int a = 1; a <= ws_->size(); ++a)
        for (int b = 1; b <= ws_->size(); ++b)
            ok_[a * stride_ + b] = waypoint_distance(*ws_, a, b) > opt_.r_influence ? 1 : 0;
}

bool ProximityRule::state_ok(std::span<const int> t) const
{
    for (std::size_t i = 0; i < t.size(); ++i)
        for (std::size_t j = i + 1; j < t.size(); ++j)
            if (!separated(t[i], t[j]))
                return false;
    return true;
}

bool ProximityRule::move_ok(std::span<const int> from, std::span<const int> to) const
{
    if (!opt_.check_midpoints)
        return true;
    const std::size_t n = from.size();
    std::vector<Point> mid(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Point& a = ws_->position(from[i]);
        const Point& b = ws_->position(to[i]);
        mid[i] = Point{(a.x + b.x) / 2.0, (a.y + b.y) / 2.0};
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (!(std::hypot(mid[i].x - mid[j].x, mid[i].y - mid[j].y) > opt_.r_influence))
                return false;
    return true;
}

// ---------------------------------------------------------------------------
// Pts

Pts::Pts(std::vector<Wts> components, ProximityOptions opt) : comps_(std::move(components))
{
    if (comps_.empty())
        throw InputError("a product needs at least one robot");
    const auto& ws = comps_.front().workspace_ptr();
    for (const auto& c : comps_)
        if (c.workspace_ptr() != ws)
            throw InputError("all robots must share one workspace");
    std::uint64_t span = 1;
    for (std::size_t i = 0; i < comps_.size(); ++i)
        span = checked_mul(span, static_cast<std::uint64_t>(ws->size()) + 1);
    rule_ = ProximityRule(ws, opt);

    std::vector<int> init;
    for (const auto& c : comps_)
        init.push_back(c.initial());
    if (!rule_.state_ok(init))
        throw InfeasibleStartError("initial joint state violates the proximity constraint");

    std::vector<std::vector<int>> options;
    for (const auto& c : comps_)
        options.push_back(c.states());
    std::vector<int> choice;
    for_each_combination(options, choice, [&](const std::vector<int>& t) {
        if (!rule_.state_ok(t))
            return;
        index_.emplace(key(t), static_cast<int>(size()));
        tuples_.insert(tuples_.end(), t.begin(), t.end());
    });
    adj_.resize(size());
    for (int i = 0; i < static_cast<int>(size()); ++i) {
        std::vector<std::vector<int>> opts;
        const auto t = tuple(i);
        for (std::size_t r = 0; r < comps_.size(); ++r)
            opts.push_back(move_options(comps_[r], t[r]));
        std::vector<int> next;
        for_each_combination(opts, next, [&](const std::vector<int>& u) {
            auto it = index_.find(key(u));
            if (it == index_.end() || !rule_.move_ok(tuple(i), u))
                return;
            int units = 0;
            for (std::size_t r = 0; r < u.size(); ++r)
                units += (u[r] != t[r]);
            adj_[i].push_back(PtsArc{it->second, units});
        });
        std::sort(adj_[i].begin(), adj_[i].end(), [](const PtsArc& a, const PtsArc& b) { return a.to < b.to; });
    }
    initial_ = index_.at(key(init));
}

std::uint64_t Pts::key(std::span<const int> t) const
{
    const std::uint64_t base = static_cast<std::uint64_t>(workspace().size()) + 1;
    std::uint64_t k = 0;
    for (int w : t)
        k = k * base + static_cast<std::uint64_t>(w);
    return k;
}

std::optional<int> Pts::index_of(std::span<const int> t) const
{
    if (t.size() != comps_.size())
        return std::nullopt;
    for (int w : t)
        if (!workspace().valid(w))
            return std::nullopt;
    auto it = index_.find(key(t));
    if (it == index_.end())
        return std::nullopt;
    return it->second;
}

std::size_t Pts::transition_count() const
{
    std::size_t n = 0;
    for (const auto& a : adj_)
        n += a.size();
    return n;
}

Letter Pts::label(int idx) const
{
    Letter l;
    const auto t = tuple(idx);
    for (std::size_t r = 0; r < comps_.size(); ++r)
        l.insert(comps_[r].label(t[r]));
    return l;
}

double Pts::weight(int from, int to) const
{
    const auto a = tuple(from);
    const auto b = tuple(to);
    double w = 0.0;
    for (std::size_t r = 0; r < comps_.size(); ++r)
        w += comps_[r].weight(a[r], b[r]);
    return w;
}

std::uint64_t Pts::unpruned_size() const
{
    std::uint64_t n = 1;
    for (const auto& c : comps_)
        n = checked_mul(n, c.size());
    return n;
}

void Pts::add_component_state(std::size_t robot, int waypoint) { comps_.at(robot).add_state(waypoint); }

int Pts::insert_joint_state(std::span<const int> t)
{
    if (t.size() != comps_.size())
        throw InputError("joint state has the wrong number of robots");
    for (std::size_t r = 0; r < t.size(); ++r)
        if (!comps_[r].contains(t[r]))
            throw InputError("joint state uses waypoint " + std::to_string(t[r]) + " outside robot '" +
                             comps_[r].name() + "' system");
    if (index_.count(key(t)))
        throw InputError("joint state already present");
    if (!rule_.state_ok(t))
        throw InputError("joint state violates the proximity constraint");
    const int idx = static_cast<int>(size());
    index_.emplace(key(t), idx);
    tuples_.insert(tuples_.end(), t.begin(), t.end());
    adj_.emplace_back();
    link(idx);
    return idx;
}

void Pts::link(int idx)
{
    const std::vector<int> t(tuple(idx).begin(), tuple(idx).end());
    std::vector<std::vector<int>> opts;
    for (std::size_t r = 0; r < comps_.size(); ++r)
        opts.push_back(move_options(comps_[r], t[r]));
    std::vector<int> next;
    std::vector<PtsArc> out;
    for_each_combination(opts, next, [&](const std::vector<int>& u) {
        auto it = index_.find(key(u));
        if (it == index_.end() || !rule_.move_ok(t, u))
            return;
        int units = 0;
        for (std::size_t r = 0; r < u.size(); ++r)
            units += (u[r] != t[r]);
        out.push_back(PtsArc{it->second, units});
    });
    std::sort(out.begin(), out.end(), [](const PtsArc& a, const PtsArc& b) { return a.to < b.to; });
    for (const auto& a : out) {
        if (a.to == idx)
            continue;
        auto& back = adj_[a.to];
        auto pos = std::lower_bound(back.begin(), back.end(), idx,
                                    [](const PtsArc& x, int v) { return x.to < v; });
        back.insert(pos, PtsArc{idx, a.units});
    }
    adj_[idx] = std::move(out);
}

Pts compose_pts(std::vector<Wts> components, ProximityOptions opt) { return Pts(std::move(components), opt); }

// ---------------------------------------------------------------------------
// CompiledGuards

CompiledGuards::CompiledGuards(const Nba& nba, const std::vector<Wts>& comps)
{
    std::map<std::string, int> robot_index;
    for (std::size_t i = 0; i < comps.size(); ++i)
        robot_index[comps[i].name()] = static_cast<int>(i);
    const int r = comps.front().workspace().size();
    lits_.reserve(nba.transitions().size());
    for (const auto& t : nba.transitions()) {
        std::vector<Lit> out;
        for (const auto& l : t.guard.literals()) {
            if (l.atom.is_obs()) {
                out.push_back(Lit{-1, 0, l.positive});
                continue;
            }
            auto it = robot_index.find(l.atom.robot);
            if (!l.atom.is_located() || it == robot_index.end())
                throw AlphabetError("atom '" + l.atom.str() + "' does not name a robot of the team");
            if (l.atom.waypoint > r)
                throw AlphabetError("atom '" + l.atom.str() + "' refers to a waypoint outside the workspace");
            out.push_back(Lit{it->second, l.atom.waypoint, l.positive});
        }
        lits_.push_back(std::move(out));
    }
}

bool CompiledGuards::holds(int transition, std::span<const int> tuple) const
{
    for (const Lit& l : lits_[transition]) {
        const bool v = l.robot >= 0 && tuple[l.robot] == l.waypoint;
        if (v != l.positive)
            return false;
    }
    return true;
}

bool CompiledGuards::may_hold(int transition, int robot, int waypoint) const
{
    for (const Lit& l : lits_[transition]) {
        if (l.robot == -1) {
            if (l.positive)
                return false;
        } else if (l.robot == robot && (waypoint == l.waypoint) != l.positive) {
            return false;
        }
    }
    return true;
}

namespace {

// Sorted distinct NBA successor states of q under the letter of `tuple`.
void enabled_targets(const Nba& nba, const CompiledGuards& g, int q, std::span<const int> tuple,
                     std::vector<int>& out)
{
    out.clear();
    for (int ti : nba.outgoing(q)) {
        const int dst = nba.transitions()[ti].dst;
        if (!out.empty() && out.back() == dst)
            continue;
        if (g.holds(ti, tuple))
            out.push_back(dst);
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// Pba

Pba::Pba(Pts pts, std::shared_ptr<const Nba> nba) : pts_(std::move(pts)), nba_(std::move(nba))
{
    guards_ = CompiledGuards(*nba_, pts_.components());
    adj_.assign(state_count(), {});
    for (int i = 0; i < static_cast<int>(pts_.size()); ++i)
        expand(i);
}

void Pba::expand(int pts_idx)
{
    const int nq = nba_->state_count();
    const auto t = pts_.tuple(pts_idx);
    std::vector<int> dsts;
    for (int q = 0; q < nq; ++q) {
        enabled_targets(*nba_, guards_, q, t, dsts);
        auto& out = adj_[static_cast<std::uint64_t>(pts_idx) * nq + q];
        out.clear();
        for (const PtsArc& a : pts_.successors(pts_idx))
            for (int d : dsts)
                out.push_back(Arc{static_cast<std::uint64_t>(a.to) * nq + d, a.units});
        std::sort(out.begin(), out.end(), [](const Arc& x, const Arc& y) { return x.to < y.to; });
    }
}

std::vector<std::uint64_t> Pba::initial_nodes() const
{
    std::vector<std::uint64_t> out;
    for (int q : nba_->initial())
        out.push_back(static_cast<std::uint64_t>(pts_.initial()) * nba_->state_count() + q);
    std::sort(out.begin(), out.end());
    return out;
}

void Pba::successors(std::uint64_t node, std::vector<Arc>& out) const
{
    const auto& a = adj_[node];
    out.insert(out.end(), a.begin(), a.end());
}

void Pba::tuple(std::uint64_t node, std::vector<int>& out) const
{
    const auto t = pts_.tuple(static_cast<int>(node / nba_->state_count()));
    out.assign(t.begin(), t.end());
}

std::uint64_t Pba::transition_count() const
{
    std::uint64_t n = 0;
    for (const auto& a : adj_)
        n += a.size();
    return n;
}

void Pba::add_component_state(std::size_t robot, int waypoint) { pts_.add_component_state(robot, waypoint); }

int Pba::insert_joint_state(std::span<const int> t)
{
    const int idx = pts_.insert_joint_state(t);
    const int nq = nba_->state_count();
    adj_.resize(state_count());
    expand(idx);
    std::vector<int> dsts;
    for (const PtsArc& a : pts_.successors(idx)) {
        if (a.to == idx)
            continue;
        const auto src = pts_.tuple(a.to);
        for (int q = 0; q < nq; ++q) {
            enabled_targets(*nba_, guards_, q, src, dsts);
            auto& out = adj_[static_cast<std::uint64_t>(a.to) * nq + q];
            for (int d : dsts) {
                const Arc arc{static_cast<std::uint64_t>(idx) * nq + d, a.units};
                auto pos = std::lower_bound(out.begin(), out.end(), arc.to,
                                            [](const Arc& x, std::uint64_t v) { return x.to < v; });
                out.insert(pos, arc);
            }
        }
    }
    return idx;
}

std::string Pba::canonical_text() const
{
    const int nq = nba_->state_count();
    std::vector<int> order(pts_.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const auto ta = pts_.tuple(a);
        const auto tb = pts_.tuple(b);
        return std::lexicographical_compare(ta.begin(), ta.end(), tb.begin(), tb.end());
    });
    std::vector<int> rank(pts_.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        rank[order[i]] = static_cast<int>(i);

    auto name = [&](std::uint64_t node) {
        std::string s;
        const auto t = pts_.tuple(static_cast<int>(node / nq));
        for (std::size_t r = 0; r < t.size(); ++r)
            s += (r ? "," : "") + std::to_string(t[r]);
        return s + "/" + std::to_string(node % nq);
    };

    std::ostringstream os;
    os << "states " << state_count() << " transitions " << transition_count() << "\n";
    for (std::uint64_t n : initial_nodes())
        os << "initial " << name(n) << "\n";
    for (int p : order) {
        for (int q = 0; q < nq; ++q) {
            const std::uint64_t node = static_cast<std::uint64_t>(p) * nq + q;
            std::vector<std::pair<std::pair<int, int>, int>> arcs;
            for (const Arc& a : adj_[node])
                arcs.push_back({{rank[a.to / nq], static_cast<int>(a.to % nq)}, a.units});
            std::sort(arcs.begin(), arcs.end());
            os << name(node) << (nba_->is_accepting(q) ? " *" : "") << " :";
            for (const auto& [dst, units] : arcs)
                os << " " << name(static_cast<std::uint64_t>(order[dst.first]) * nq + dst.second) << "#" << units;
            os << "\n";
        }
    }
    return os.str();
}

Pba build_pba(Pts pts, std::shared_ptr<const Nba> nba) { return Pba(std::move(pts), std::move(nba)); }

Pba update_pba(Pba p, std::span<const int> tuple)
{
    p.insert_joint_state(tuple);
    return p;
}

// ---------------------------------------------------------------------------
// LazyPba

LazyPba::LazyPba(std::vector<Wts> components, ProximityOptions opt, std::shared_ptr<const Nba> nba)
    : comps_(std::move(components)), nba_(std::move(nba))
{
    if (comps_.empty())
        throw InputError("a product needs at least one robot");
    const auto& ws = comps_.front().workspace_ptr();
    for (const auto& c : comps_)
        if (c.workspace_ptr() != ws)
            throw InputError("all robots must share one workspace");
    rule_ = ProximityRule(ws, opt);
    guards_ = CompiledGuards(*nba_, comps_);

    std::vector<int> init;
    for (const auto& c : comps_)
        init.push_back(c.initial());
    if (!rule_.state_ok(init))
        throw InfeasibleStartError("initial joint state violates the proximity constraint");

    const std::size_t n = comps_.size();
    local_.assign(n, std::vector<int>(ws->size() + 1, -1));
    radix_.assign(n, 1);
    std::uint64_t total = 1;
    for (std::size_t i = n; i-- > 0;) {
        radix_[i] = total;
        const auto& st = comps_[i].states();
        for (std::size_t k = 0; k < st.size(); ++k)
            local_[i][st[k]] = static_cast<int>(k);
        total = checked_mul(total, st.size());
    }
    bound_ = checked_mul(total, static_cast<std::uint64_t>(nba_->state_count()));
}

std::uint64_t LazyPba::encode(std::span<const int> t, int q) const
{
    std::uint64_t idx = 0;
    for (std::size_t i = 0; i < t.size(); ++i)
        idx += radix_[i] * static_cast<std::uint64_t>(local_[i][t[i]]);
    return idx * nba_->state_count() + q;
}

std::vector<std::uint64_t> LazyPba::initial_nodes() const
{
    std::vector<int> init;
    for (const auto& c : comps_)
        init.push_back(c.initial());
    std::vector<std::uint64_t> out;
    for (int q : nba_->initial())
        out.push_back(encode(init, q));
    std::sort(out.begin(), out.end());
    return out;
}

void LazyPba::tuple(std::uint64_t node, std::vector<int>& out) const
{
    std::uint64_t idx = node / nba_->state_count();
    out.resize(comps_.size());
    for (std::size_t i = 0; i < comps_.size(); ++i) {
        out[i] = comps_[i].states()[idx / radix_[i]];
        idx %= radix_[i];
    }
}

void LazyPba::successors(std::uint64_t node, std::vector<Arc>& out) const
{
    const int nq = nba_->state_count();
    std::vector<int> t;
    tuple(node, t);
    std::vector<int> dsts;
    enabled_targets(*nba_, guards_, static_cast<int>(node % nq), t, dsts);
    if (dsts.empty())
        return;
    std::vector<std::vector<int>> opts;
    for (std::size_t r = 0; r < comps_.size(); ++r)
        opts.push_back(move_options(comps_[r], t[r]));
    std::vector<int> next;
    for_each_combination(opts, next, [&](const std::vector<int>& u) {
        if (!rule_.state_ok(u) || !rule_.move_ok(t, u))
            return;
        int units = 0;
        for (std::size_t r = 0; r < u.size(); ++r)
            units += (u[r] != t[r]);
        const std::uint64_t base = encode(u, 0);
        for (int d : dsts)
            out.push_back(Arc{base + static_cast<std::uint64_t>(d), units});
    });
}

// ---------------------------------------------------------------------------
// Statistics

std::uint64_t theoretical_pba_size(std::span<const std::uint64_t> component_sizes, std::uint64_t nba_size)
{
    std::uint64_t n = 1;
    for (std::uint64_t s : component_sizes)
        n = checked_mul(n, s);
    return checked_mul(n, nba_size);
}

std::string ProductStats::to_json() const
{
    nlohmann::ordered_json j;
    j["component_sizes"] = component_sizes;
    j["joint_states_unpruned"] = joint_unpruned;
    j["joint_states_pruned"] = joint_pruned ? nlohmann::ordered_json(*joint_pruned) : nullptr;
    j["nba_states"] = nba_states;
    j["nba_accepting"] = nba_accepting;
    j["nba_transitions"] = nba_transitions;
    j["pba_states_theoretical"] = pba_theoretical;
    j["pba_states"] = pba_states ? nlohmann::ordered_json(*pba_states) : nullptr;
    j["pba_accepting"] = pba_accepting ? nlohmann::ordered_json(*pba_accepting) : nullptr;
    j["pba_transitions"] = pba_transitions ? nlohmann::ordered_json(*pba_transitions) : nullptr;
    j["memory_bytes_estimate"] = memory_bytes_estimate ? nlohmann::ordered_json(*memory_bytes_estimate) : nullptr;
    return j.dump(2);
}

namespace {

void fill_nba(ProductStats& s, const Nba& nba)
{
    s.nba_states = nba.state_count();
    s.nba_accepting = static_cast<int>(nba.accepting().size());
    s.nba_transitions = static_cast<int>(nba.transitions().size());
}

}  // namespace

ProductStats product_stats(const Pba& p)
{
    ProductStats s;
    for (const auto& c : p.components())
        s.component_sizes.push_back(c.size());
    fill_nba(s, p.nba());
    s.joint_unpruned = p.pts().unpruned_size();
    s.joint_pruned = p.pts().size();
    s.pba_theoretical = theoretical_pba_size(s.component_sizes, s.nba_states);
    s.pba_states = p.state_count();
    s.pba_accepting = p.accepting_count();
    s.pba_transitions = p.transition_count();
    s.memory_bytes_estimate = *s.pba_states * sizeof(std::vector<ProductGraph::Arc>) +
                              *s.pba_transitions * sizeof(ProductGraph::Arc) +
                              p.pts().transition_count() * sizeof(PtsArc) + *s.joint_pruned * p.components().size() * 16;
    return s;
}

ProductStats product_stats(const std::vector<Wts>& comps, ProximityOptions opt, const Nba& nba,
                           std::uint64_t count_limit)
{
    ProductStats s;
    for (const auto& c : comps)
        s.component_sizes.push_back(c.size());
    fill_nba(s, nba);
    s.joint_unpruned = theoretical_pba_size(s.component_sizes, 1);
    s.pba_theoretical = theoretical_pba_size(s.component_sizes, s.nba_states);
    if (s.joint_unpruned <= count_limit && !comps.empty()) {
        ProximityRule rule(comps.front().workspace_ptr(), opt);
        std::vector<std::vector<int>> options;
        for (const auto& c : comps)
            options.push_back(c.states());
        std::uint64_t n = 0;
        std::vector<int> choice;
        for_each_combination(options, choice, [&](const std::vector<int>& t) { n += rule.state_ok(t); });
        s.joint_pruned = n;
    }
    return s;
}

}  // namespace tlplan
