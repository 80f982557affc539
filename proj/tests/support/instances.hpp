#pragma once

#include <algorithm>
#include <deque>
#include <memory>
#include <regex>
#include <string>
#include <vector>

#include "tlplan/buchi.hpp"
#include "tlplan/ltl.hpp"
#include "tlplan/workspace.hpp"

namespace tlplan::testing {

inline std::shared_ptr<const Workspace> make_workspace(int m, std::vector<int> obstacles = {}, double r = 0.0)
{
    WorkspaceConfig cfg;
    cfg.grid_m = m;
    cfg.obstacles = std::move(obstacles);
    cfg.r_influence_robot = r;
    return std::make_shared<const Workspace>(cfg);
}

/// Replaces the placeholder atoms `a` and `b` of a corpus formula.
inline std::string bind_atoms(const std::string& text, const std::string& a, const std::string& b)
{
    static const std::regex ra("\\ba\\b"), rb("\\bb\\b");
    return std::regex_replace(std::regex_replace(text, ra, a), rb, b);
}

inline std::shared_ptr<const Nba> nba_for(const Formula& f) { return std::make_shared<const Nba>(translate(to_nnf(f))); }

/// Hop distances from `src` over non-obstacle waypoints; -1 when unreachable.
inline std::vector<int> bfs_hops(const Workspace& ws, int src)
{
    std::vector<int> d(ws.size() + 1, -1);
    if (ws.is_obstacle(src))
        return d;
    std::deque<int> q{src};
    d[src] = 0;
    while (!q.empty()) {
        const int v = q.front();
        q.pop_front();
        for (int w : ws.neighbors(v))
            if (!ws.is_obstacle(w) && d[w] < 0) {
                d[w] = d[v] + 1;
                q.push_back(w);
            }
    }
    return d;
}

/// Exhaustive single-robot search: the least number of moves of a lasso
/// x0..x(n-1) with loop back to x(j), n <= max_positions, consecutive
/// positions distinct except a one-state period closed by a stay. Exact for
/// stutter-invariant formulas when max_positions exceeds the optimal move
/// count. Returns -1 when no lasso within the bound satisfies f.
inline int brute_force_units(const Workspace& ws, const std::string& robot, int start, const Formula& f,
                             int max_positions)
{
    int best = -1;
    std::vector<int> path{start};
    auto letter_of = [&](int wp) { return Letter{Atom{robot, wp}}; };
    auto check = [&] {
        const int n = static_cast<int>(path.size());
        for (int j = 0; j < n; ++j) {
            int closing;
            if (j == n - 1)
                closing = 0;
            else {
                const auto& nb = ws.neighbors(path[n - 1]);
                if (std::find(nb.begin(), nb.end(), path[j]) == nb.end() || ws.is_obstacle(path[j]))
                    continue;
                closing = 1;
            }
            const int units = n - 1 + closing;
            if (best >= 0 && units >= best)
                continue;
            LassoWord w;
            for (int t = 0; t < j; ++t)
                w.prefix.push_back(letter_of(path[t]));
            for (int t = j; t < n; ++t)
                w.period.push_back(letter_of(path[t]));
            if (eval_lasso(f, w))
                best = units;
        }
    };
    auto dfs = [&](auto&& self) -> void {
        check();
        if (static_cast<int>(path.size()) >= max_positions)
            return;
        if (best >= 0 && static_cast<int>(path.size()) >= best)
            return;
        for (int w : ws.neighbors(path.back())) {
            if (ws.is_obstacle(w))
                continue;
            path.push_back(w);
            self(self);
            path.pop_back();
        }
    };
    dfs(dfs);
    return best;
}

}  // namespace tlplan::testing

#include "tlplan/product.hpp"

namespace tlplan::testing {

/// Minimum prefix-suffix cost in move units over a product built here from
/// first principles: joint moves checked robot by robot, guards evaluated on
/// the source letter, Bellman-Ford style relaxation for prefix and cycle
/// costs. Returns -1 when no accepting state lies on a reachable cycle.
inline int naive_product_units(const std::vector<Wts>& comps, double r, const Nba& b)
{
    const Workspace& ws = comps.front().workspace();
    std::vector<std::vector<int>> joint{{}};
    for (const Wts& c : comps) {
        std::vector<std::vector<int>> next;
        for (const auto& t : joint)
            for (int s : c.states()) {
                auto u = t;
                u.push_back(s);
                next.push_back(u);
            }
        joint = std::move(next);
    }
    std::erase_if(joint, [&](const std::vector<int>& t) {
        for (std::size_t i = 0; i < t.size(); ++i)
            for (std::size_t j = i + 1; j < t.size(); ++j)
                if (!(waypoint_distance(ws, t[i], t[j]) > r))
                    return true;
        return false;
    });
    const int nq = b.state_count();
    const int n = static_cast<int>(joint.size()) * nq;
    std::vector<std::vector<std::pair<int, int>>> adj(n);
    for (std::size_t a = 0; a < joint.size(); ++a) {
        Letter l;
        for (std::size_t i = 0; i < comps.size(); ++i)
            l.insert(comps[i].label(joint[a][i]));
        for (std::size_t c = 0; c < joint.size(); ++c) {
            int units = 0;
            bool ok = true;
            for (std::size_t i = 0; i < comps.size() && ok; ++i) {
                ok = comps[i].has_transition(joint[a][i], joint[c][i]);
                units += joint[a][i] != joint[c][i];
            }
            if (!ok)
                continue;
            for (const auto& t : b.transitions())
                if (t.guard.holds(l))
                    adj[static_cast<int>(a) * nq + t.src].push_back({static_cast<int>(c) * nq + t.dst, units});
        }
    }
    const int inf = 1 << 28;
    auto relax_from = [&](std::vector<int> d) {
        for (bool changed = true; changed;) {
            changed = false;
            for (int v = 0; v < n; ++v)
                if (d[v] < inf)
                    for (auto [w, c] : adj[v])
                        if (d[v] + c < d[w]) {
                            d[w] = d[v] + c;
                            changed = true;
                        }
        }
        return d;
    };
    std::vector<int> init(n, inf);
    std::size_t start = 0;
    while (true) {
        bool same = true;
        for (std::size_t i = 0; i < comps.size(); ++i)
            same &= joint[start][i] == comps[i].initial();
        if (same)
            break;
        ++start;
    }
    for (int q : b.initial())
        init[static_cast<int>(start) * nq + q] = 0;
    const auto pre = relax_from(init);
    int best = -1;
    for (int f = 0; f < n; ++f) {
        if (pre[f] >= inf || !b.is_accepting(f % nq))
            continue;
        std::vector<int> d(n, inf);
        for (auto [w, c] : adj[f])
            d[w] = std::min(d[w], c);
        d = relax_from(d);
        if (d[f] < inf && (best < 0 || pre[f] + d[f] < best))
            best = pre[f] + d[f];
    }
    return best;
}

}  // namespace tlplan::testing
