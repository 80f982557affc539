#include "tlplan/reduction.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <limits>
#include <random>
#include <set>

#include "json.hpp"

namespace tlplan {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0)
{
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

void collect_literals(const Formula& f, std::vector<std::pair<Atom, bool>>& out)
{
    switch (f.op()) {
    case Op::True:
    case Op::False:
        return;
    case Op::Atom:
        out.push_back({f.atom_value(), true});
        return;
    case Op::Not:
        if (f.lhs().op() == Op::Atom) {
            out.push_back({f.lhs().atom_value(), false});
            return;
        }
        collect_literals(f.lhs(), out);
        return;
    default:
        collect_literals(f.lhs(), out);
        if (f.is_binary())
            collect_literals(f.rhs(), out);
    }
}

// Hop distances to `target` over full-system states, skipping `blocked`.
std::vector<int> bfs_distances(const Wts& full, int target, const std::vector<char>& blocked)
{
    const int r = full.workspace().size();
    std::vector<int> dist(r + 1, std::numeric_limits<int>::max());
    if (!full.contains(target) || blocked[target])
        return dist;
    std::deque<int> q{target};
    dist[target] = 0;
    while (!q.empty()) {
        const int v = q.front();
        q.pop_front();
        for (int w : full.moves(v)) {
            if (blocked[w] || dist[w] != std::numeric_limits<int>::max())
                continue;
            dist[w] = dist[v] + 1;
            q.push_back(w);
        }
    }
    return dist;
}

std::string mode_name(ExpansionMode m) { return m == ExpansionMode::FullProduct ? "full-product" : "joint-tuple-only"; }

}  // namespace

std::string to_string(ReductionOutcome o)
{
    switch (o) {
    case ReductionOutcome::Planned:
        return "planned";
    case ReductionOutcome::Infeasible:
        return "exhausted-infeasible";
    case ReductionOutcome::Unsatisfiable:
        return "unsatisfiable-over-reachable-locations";
    case ReductionOutcome::IterationLimit:
        return "iteration-limit";
    }
    return "unknown";
}

PropSets extract_prop_sets(const Formula& f, const std::vector<std::string>& robots, const std::vector<int>& initial)
{
    if (robots.size() != initial.size())
        throw InputError("robot and initial-state lists differ in length");
    std::vector<std::pair<Atom, bool>> lits;
    collect_literals(to_nnf(f), lits);
    PropSets s;
    s.pi.resize(robots.size());
    s.pi_bar.resize(robots.size());
    for (std::size_t i = 0; i < robots.size(); ++i) {
        s.pi[i].push_back(initial[i]);
        for (const auto& [a, positive] : lits) {
            if (a.robot != robots[i] || !a.is_located())
                continue;
            auto& dst = positive ? s.pi[i] : s.pi_bar[i];
            if (std::find(dst.begin(), dst.end(), a.waypoint) == dst.end())
                dst.push_back(a.waypoint);
        }
        std::sort(s.pi_bar[i].begin(), s.pi_bar[i].end());
    }
    return s;
}

Wts build_initial_wts(const Wts& full, const std::vector<int>& pi, const std::vector<int>& pi_bar,
                      bool skip_unreachable)
{
    if (pi.empty())
        throw InputError("proposition list must start with the initial waypoint");
    const int r = full.workspace().size();
    std::vector<char> blocked(r + 1, 0);
    for (int w : pi_bar)
        if (w >= 1 && w <= r && std::find(pi.begin(), pi.end(), w) == pi.end())
            blocked[w] = 1;
    std::set<int> states{pi.front()};
    int cur = pi.front();
    for (std::size_t k = 1; k < pi.size(); ++k) {
        const int target = pi[k];
        const auto dist = (target >= 1 && target <= r) ? bfs_distances(full, target, blocked)
                                                        : std::vector<int>(r + 1, std::numeric_limits<int>::max());
        if (dist[cur] == std::numeric_limits<int>::max()) {
            if (skip_unreachable)
                continue;
            throw InitializationError("waypoint " + std::to_string(target) + " is unreachable for robot '" +
                                      full.name() + "' from waypoint " + std::to_string(cur));
        }
        int x = cur;
        while (x != target) {
            for (int y : full.moves(x)) {
                if (!blocked[y] && dist[y] == dist[x] - 1) {
                    x = y;
                    break;
                }
            }
            states.insert(x);
        }
        cur = target;
    }
    return Wts(full.workspace_ptr(), full.robot(), full.name(), full.initial(),
               std::vector<int>(states.begin(), states.end()));
}

std::vector<int> compute_seed_set(const Wts& reduced, const std::vector<int>& pi_bar)
{
    std::vector<int> s;
    for (int q : reduced.states())
        if (std::binary_search(pi_bar.begin(), pi_bar.end(), q))
            s.push_back(q);
    if (s.empty())
        s = reduced.states();
    return s;
}

std::vector<int> n_hop_candidates(const Wts& full, int anchor, int n, const Wts& existing)
{
    const int r = full.workspace().size();
    std::vector<int> depth(r + 1, -1);
    std::deque<int> q;
    if (full.contains(anchor)) {
        depth[anchor] = 0;
        q.push_back(anchor);
    }
    std::vector<int> out;
    while (!q.empty()) {
        const int v = q.front();
        q.pop_front();
        if (!existing.contains(v))
            out.push_back(v);
        if (depth[v] == n)
            continue;
        for (int w : full.moves(v)) {
            if (depth[w] >= 0)
                continue;
            depth[w] = depth[v] + 1;
            q.push_back(w);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<int> reachable_states(const Wts& full)
{
    std::vector<char> blocked(full.workspace().size() + 1, 0);
    const auto dist = bfs_distances(full, full.initial(), blocked);
    std::vector<int> out;
    for (int q : full.states())
        if (dist[q] != std::numeric_limits<int>::max())
            out.push_back(q);
    return out;
}

Formula substitute_false(const Formula& f, const std::function<bool(const Atom&)>& is_false)
{
    switch (f.op()) {
    case Op::True:
    case Op::False:
        return f;
    case Op::Atom:
        return is_false(f.atom_value()) ? Formula::falsity() : f;
    case Op::Not:
        return Formula::negation(substitute_false(f.lhs(), is_false));
    case Op::Next:
        return Formula::next(substitute_false(f.lhs(), is_false));
    case Op::Eventually:
        return Formula::eventually(substitute_false(f.lhs(), is_false));
    case Op::Always:
        return Formula::always(substitute_false(f.lhs(), is_false));
    case Op::And:
        return Formula::conj(substitute_false(f.lhs(), is_false), substitute_false(f.rhs(), is_false));
    case Op::Or:
        return Formula::disj(substitute_false(f.lhs(), is_false), substitute_false(f.rhs(), is_false));
    case Op::Implies:
        return Formula::implies(substitute_false(f.lhs(), is_false), substitute_false(f.rhs(), is_false));
    case Op::Until:
        return Formula::until(substitute_false(f.lhs(), is_false), substitute_false(f.rhs(), is_false));
    case Op::Release:
        return Formula::release(substitute_false(f.lhs(), is_false), substitute_false(f.rhs(), is_false));
    }
    return f;
}

// ---------------------------------------------------------------------------

std::string ReductionReport::to_json(bool with_timing) const
{
    using J = nlohmann::ordered_json;
    J j;
    j["robots"] = robots;
    j["mode"] = mode;
    j["seed"] = seed;
    j["outcome"] = outcome;
    j["pi"] = sets.pi;
    j["pi_bar"] = sets.pi_bar;
    j["seed_sets"] = seed_sets;
    j["full_sizes"] = full_sizes;
    j["initial_sizes"] = initial_sizes;
    j["final_sizes"] = final_sizes;
    j["final_states"] = final_states;
    j["growth_iterations"] = iterations.size();
    j["initial_pba"] = {{"states", initial_pba_states}, {"transitions", initial_pba_transitions}};
    auto its = J::array();
    for (const auto& it : iterations) {
        J e;
        e["iteration"] = it.iteration;
        auto added = J::array();
        for (const auto& a : it.added)
            added.push_back(a ? J(*a) : J(nullptr));
        e["added"] = added;
        e["anchors"] = it.anchors;
        e["hops"] = it.hops;
        e["joint_states_added"] = it.joint_states_added;
        e["pba_states"] = it.pba_states;
        e["pba_transitions"] = it.pba_transitions;
        if (with_timing) {
            e["update_ms"] = it.update_ms;
            e["synthesis_ms"] = it.synthesis_ms;
        }
        its.push_back(e);
    }
    j["iterations"] = its;
    j["solver"] = {{"nodes_expanded", last_solver.nodes_expanded},
                   {"dijkstra_runs", last_solver.dijkstra_runs},
                   {"reachable_nodes", last_solver.reachable_nodes},
                   {"accepting_on_cycle", last_solver.accepting_on_cycle}};
    if (with_timing)
        j["timing_ms"] = {{"initialization", init_ms}, {"initial_synthesis", initial_synthesis_ms}};
    j["notes"] = notes;
    return j.dump(2) + "\n";
}

ReductionResult reduce_and_plan(const std::vector<Wts>& full, const Formula& f, std::shared_ptr<const Nba> b,
                                const ReductionConfig& cfg)
{
    const auto t_init = Clock::now();
    ReductionResult res;
    ReductionReport& rep = res.report;
    const std::size_t n = full.size();
    if (n == 0)
        throw InputError("no robots");
    rep.mode = mode_name(cfg.mode);
    rep.seed = cfg.seed;
    std::vector<int> initial;
    for (const auto& w : full) {
        rep.robots.push_back(w.name());
        initial.push_back(w.initial());
        rep.full_sizes.push_back(w.size());
    }

    // Component of each robot's start; saturation means all of it is included.
    std::vector<std::vector<int>> reach;
    for (const auto& w : full)
        reach.push_back(reachable_states(w));

    if (cfg.precheck) {
        const Formula g = substitute_false(f, [&](const Atom& a) {
            for (std::size_t i = 0; i < n; ++i)
                if (a.robot == full[i].name())
                    return !std::binary_search(reach[i].begin(), reach[i].end(), a.waypoint);
            return false;
        });
        if (is_empty(translate(to_nnf(g))).empty) {
            rep.notes.push_back("task is unsatisfiable when restricted to locations the robots can reach");
            rep.outcome = to_string(ReductionOutcome::Unsatisfiable);
            res.outcome = ReductionOutcome::Unsatisfiable;
            rep.init_ms = ms_since(t_init);
            return res;
        }
    }

    rep.sets = extract_prop_sets(f, rep.robots, initial);
    std::vector<Wts> reduced;
    for (std::size_t i = 0; i < n; ++i) {
        try {
            reduced.push_back(build_initial_wts(full[i], rep.sets.pi[i], rep.sets.pi_bar[i], false));
        } catch (const InitializationError& e) {
            if (!cfg.init_fallback)
                throw;
            rep.notes.push_back(std::string(e.what()) + "; unreachable locations skipped");
            reduced.push_back(build_initial_wts(full[i], rep.sets.pi[i], rep.sets.pi_bar[i], true));
        }
        rep.initial_sizes.push_back(reduced.back().size());
        rep.seed_sets.push_back(compute_seed_set(reduced.back(), rep.sets.pi_bar[i]));
    }

    Pba p(Pts(reduced, cfg.proximity), b);
    rep.initial_pba_states = p.state_count();
    rep.initial_pba_transitions = p.transition_count();
    rep.init_ms = ms_since(t_init);

    auto t_syn = Clock::now();
    SynthesisResult sr = try_synthesize(p, cfg.synthesis);
    rep.initial_synthesis_ms = ms_since(t_syn);

    std::mt19937_64 rng(cfg.seed);
    std::vector<std::size_t> kappa(n, 0);
    std::vector<int> hops(n, 1);
    auto saturated = [&](std::size_t i) {
        const Wts& cur = p.components()[i];
        return std::all_of(reach[i].begin(), reach[i].end(), [&](int q) { return cur.contains(q); });
    };

    while (!sr.plan) {
        bool all_saturated = true;
        for (std::size_t i = 0; i < n; ++i)
            all_saturated = all_saturated && saturated(i);
        if (all_saturated) {
            res.outcome = ReductionOutcome::Infeasible;
            break;
        }
        if (cfg.max_iterations && rep.iterations.size() >= cfg.max_iterations) {
            res.outcome = ReductionOutcome::IterationLimit;
            break;
        }
        const auto t_upd = Clock::now();
        IterationRecord rec;
        rec.iteration = rep.iterations.size() + 1;
        rec.added.resize(n);
        rec.anchors.resize(n);
        rec.hops.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            const auto& seeds = rep.seed_sets[i];
            const Wts& cur = p.components()[i];
            std::vector<int> cand;
            if (!saturated(i)) {
                cand = n_hop_candidates(full[i], seeds[kappa[i]], hops[i], cur);
                while (cand.empty()) {
                    if (++kappa[i] >= seeds.size()) {
                        kappa[i] = 0;
                        ++hops[i];
                    }
                    cand = n_hop_candidates(full[i], seeds[kappa[i]], hops[i], cur);
                }
            }
            rec.anchors[i] = seeds[kappa[i]];
            rec.hops[i] = hops[i];
            if (!cand.empty()) {
                const int pick = cand[rng() % cand.size()];
                rec.added[i] = pick;
                p.add_component_state(i, pick);
            }
            if (++kappa[i] >= seeds.size()) {
                kappa[i] = 0;
                ++hops[i];
            }
        }

        if (cfg.mode == ExpansionMode::FullProduct) {
            std::vector<std::vector<int>> opts;
            for (std::size_t i = 0; i < n; ++i)
                opts.push_back(p.components()[i].states());
            std::vector<int> t(n);
            std::vector<std::size_t> pos(n, 0);
            bool done = false;
            while (!done) {
                bool fresh = false;
                for (std::size_t i = 0; i < n; ++i) {
                    t[i] = opts[i][pos[i]];
                    fresh = fresh || (rec.added[i] && *rec.added[i] == t[i]);
                }
                if (fresh && p.rule().state_ok(t)) {
                    p.insert_joint_state(t);
                    ++rec.joint_states_added;
                }
                std::size_t i = n;
                done = true;
                while (i > 0) {
                    --i;
                    if (++pos[i] < opts[i].size()) {
                        done = false;
                        break;
                    }
                    pos[i] = 0;
                }
            }
        } else {
            std::vector<int> t(n);
            for (std::size_t i = 0; i < n; ++i)
                t[i] = rec.added[i] ? *rec.added[i] : rec.anchors[i];
            if (!p.pts().index_of(t) && p.rule().state_ok(t)) {
                p.insert_joint_state(t);
                ++rec.joint_states_added;
            }
        }
        if (cfg.check_rebuild && cfg.mode == ExpansionMode::FullProduct) {
            const Pba rebuilt(Pts(p.components(), cfg.proximity), b);
            if (rebuilt.canonical_text() != p.canonical_text())
                throw ConsistencyError("incremental product differs from rebuild at iteration " +
                                       std::to_string(rec.iteration));
        }
        rec.pba_states = p.state_count();
        rec.pba_transitions = p.transition_count();
        rec.update_ms = ms_since(t_upd);

        t_syn = Clock::now();
        sr = try_synthesize(p, cfg.synthesis);
        rec.synthesis_ms = ms_since(t_syn);
        rep.iterations.push_back(std::move(rec));
    }

    if (sr.plan) {
        res.outcome = ReductionOutcome::Planned;
        res.plan = std::move(sr.plan);
    }
    rep.last_solver = sr.stats;
    for (const auto& c : p.components()) {
        rep.final_sizes.push_back(c.size());
        rep.final_states.push_back(c.states());
    }
    rep.outcome = to_string(res.outcome);
    return res;
}

}  // namespace tlplan
