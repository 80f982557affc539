#include "tlplan/synthesis.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <deque>
#include <limits>
#include <map>
#include <queue>
#include <thread>
#include <tuple>
#include <unordered_map>

#include "json.hpp"
#include "tlplan/scc.hpp"

namespace tlplan {

namespace {

constexpr int kInf = std::numeric_limits<int>::max() / 4;
constexpr std::uint64_t kNone = std::numeric_limits<std::uint64_t>::max();
constexpr std::uint64_t kDenseLimit = std::uint64_t{1} << 24;

struct Entry {
    int g = kInf;
    int hops = 0;
    std::uint64_t parent = kNone;
    int h = -1;  // cached heuristic value, -1 when not computed
    std::uint32_t local = 0;
    bool closed = false;
};

// Per-search node storage indexed directly by node id; entries are
// invalidated in O(1) by bumping a generation stamp.
class DenseTable {
public:
    explicit DenseTable(std::uint64_t bound) : entries_(bound), stamp_(bound, 0) {}

    void reset()
    {
        if (++gen_ == 0) {
            std::fill(stamp_.begin(), stamp_.end(), 0);
            gen_ = 1;
        }
    }
    Entry* find(std::uint64_t n) { return stamp_[n] == gen_ ? &entries_[n] : nullptr; }
    Entry& get(std::uint64_t n)
    {
        if (stamp_[n] != gen_) {
            stamp_[n] = gen_;
            entries_[n] = Entry{};
        }
        return entries_[n];
    }

private:
    std::vector<Entry> entries_;
    std::vector<std::uint32_t> stamp_;
    std::uint32_t gen_ = 0;
};

class HashTable {
public:
    explicit HashTable(std::uint64_t) {}
    void reset() { map_.clear(); }
    Entry* find(std::uint64_t n)
    {
        auto it = map_.find(n);
        return it == map_.end() ? nullptr : &it->second;
    }
    Entry& get(std::uint64_t n) { return map_[n]; }

private:
    std::unordered_map<std::uint64_t, Entry> map_;
};

using Key = std::tuple<int, int, std::uint64_t>;
using MinHeap = std::priority_queue<Key, std::vector<Key>, std::greater<>>;

// Lower bounds from single-robot projections of the product: the projection
// for robot i keeps its waypoint and the automaton state, and admits an
// automaton move whenever the guard can hold for robot i alone. Every product
// path projects onto a path of equal robot-i cost, so sums over robots of
// projection distances never overestimate product distances.
class ProjectionBounds {
public:
    explicit ProjectionBounds(const ProductGraph& g) : g_(g), nq_(g.nba().state_count())
    {
        const auto& comps = g.components();
        for (std::size_t i = 0; i < comps.size(); ++i) {
            const auto& st = comps[i].states();
            std::vector<int> local(comps[i].workspace().size() + 1, -1);
            for (std::size_t k = 0; k < st.size(); ++k)
                local[st[k]] = static_cast<int>(k);
            const std::size_t nodes = st.size() * nq_;
            std::vector<std::vector<std::pair<int, int>>> fwd(nodes), rev(nodes);
            for (std::size_t k = 0; k < st.size(); ++k) {
                std::vector<int> opts = comps[i].moves(st[k]);
                opts.push_back(st[k]);
                for (int q = 0; q < nq_; ++q) {
                    const int from = static_cast<int>(k) * nq_ + q;
                    std::vector<int> dsts;
                    for (int ti : g.nba().outgoing(q))
                        if (g.guards().may_hold(ti, static_cast<int>(i), st[k]))
                            dsts.push_back(g.nba().transitions()[ti].dst);
                    std::sort(dsts.begin(), dsts.end());
                    dsts.erase(std::unique(dsts.begin(), dsts.end()), dsts.end());
                    for (int x : opts)
                        for (int d : dsts) {
                            const int to = local[x] * nq_ + d;
                            const int w = x != st[k];
                            fwd[from].push_back({to, w});
                            rev[to].push_back({from, w});
                        }
                }
            }
            local_.push_back(std::move(local));
            fwd_.push_back(std::move(fwd));
            rev_.push_back(std::move(rev));
        }
    }

    int node(std::size_t robot, int waypoint, int q) const { return local_[robot][waypoint] * nq_ + q; }

    // Distances to (waypoint, q) in robot's projection; computed on demand.
    // Not thread safe: tables used by workers are created up front.
    const std::vector<int>& table(std::size_t robot, int waypoint, int q)
    {
        const auto key = std::make_tuple(robot, waypoint, q);
        auto it = tables_.find(key);
        if (it != tables_.end())
            return it->second;
        const auto& rev = rev_[robot];
        std::vector<int> dist(rev.size(), kInf);
        std::deque<int> dq;
        const int target = node(robot, waypoint, q);
        dist[target] = 0;
        dq.push_back(target);
        while (!dq.empty()) {
            const int v = dq.front();
            dq.pop_front();
            for (auto [u, w] : rev[v]) {
                if (dist[v] + w < dist[u]) {
                    dist[u] = dist[v] + w;
                    if (w == 0)
                        dq.push_front(u);
                    else
                        dq.push_back(u);
                }
            }
        }
        return tables_.emplace(key, std::move(dist)).first->second;
    }

    const std::vector<int>* find(std::size_t robot, int waypoint, int q) const
    {
        auto it = tables_.find(std::make_tuple(robot, waypoint, q));
        return it == tables_.end() ? nullptr : &it->second;
    }

    // Lower bound on the cost of a nonempty cycle through (tuple, q).
    int cycle_bound(const std::vector<int>& tuple, int q)
    {
        int total = 0;
        for (std::size_t i = 0; i < tuple.size(); ++i) {
            const auto& t = table(i, tuple[i], q);
            int best = kInf;
            for (auto [to, w] : fwd_[i][node(i, tuple[i], q)])
                best = std::min(best, w + t[to]);
            if (best >= kInf)
                return kInf;
            total += best;
        }
        return total;
    }

private:
    const ProductGraph& g_;
    int nq_;
    std::vector<std::vector<int>> local_;
    std::vector<std::vector<std::vector<std::pair<int, int>>>> fwd_, rev_;
    std::map<std::tuple<std::size_t, int, int>, std::vector<int>> tables_;
};

struct Candidate {
    std::uint64_t node;
    int prefix_units;
    int prefix_hops;
    int bound;
};

struct CycleResult {
    bool found = false;
    int units = 0;
    std::vector<std::uint64_t> path;  // f, ..., f
    std::uint64_t expanded = 0;
};

template <typename Table>
class Searcher {
public:
    Searcher(const ProductGraph& g, const ProjectionBounds* pb) : g_(g), pb_(pb), table_(g.node_bound()) {}

    // Cheapest nonempty cycle through f whose cost is at most `budget`.
    CycleResult cycle(std::uint64_t f, int budget)
    {
        CycleResult res;
        table_.reset();
        const int nq = g_.nba().state_count();
        std::vector<int> ftuple;
        g_.tuple(f, ftuple);
        const int fq = static_cast<int>(f % nq);
        std::vector<const std::vector<int>*> tabs;
        if (pb_)
            for (std::size_t i = 0; i < ftuple.size(); ++i)
                tabs.push_back(pb_->find(i, ftuple[i], fq));

        std::vector<int> tup;
        auto h = [&](std::uint64_t n) {
            if (!pb_)
                return 0;
            g_.tuple(n, tup);
            const int q = static_cast<int>(n % nq);
            int sum = 0;
            for (std::size_t i = 0; i < tup.size(); ++i) {
                const int d = (*tabs[i])[pb_->node(i, tup[i], q)];
                if (d >= kInf)
                    return kInf;
                sum += d;
            }
            return sum;
        };

        MinHeap heap;
        int goal_g = kInf;
        std::uint64_t goal_parent = kNone;
        auto relax = [&](std::uint64_t from, const ProductGraph::Arc& a, int g_from) {
            const int ng = g_from + a.units;
            if (a.to == f) {
                if (ng < goal_g && ng <= budget) {
                    goal_g = ng;
                    goal_parent = from;
                    heap.emplace(ng, ng, f);
                }
                return;
            }
            Entry& e = table_.get(a.to);
            if (e.closed || ng >= e.g)
                return;
            if (e.h < 0)
                e.h = h(a.to);
            if (e.h >= kInf || ng + e.h > budget)
                return;
            e.g = ng;
            e.parent = from;
            heap.emplace(ng + e.h, ng, a.to);
        };

        buf_.clear();
        g_.successors(f, buf_);
        for (const auto& a : buf_)
            relax(kNone, a, 0);
        while (!heap.empty()) {
            const auto [fv, gv, n] = heap.top();
            heap.pop();
            (void)fv;
            if (n == f) {
                if (gv != goal_g)
                    continue;
                res.found = true;
                res.units = goal_g;
                std::vector<std::uint64_t> rpath{f};
                for (std::uint64_t p = goal_parent; p != kNone; p = table_.find(p)->parent)
                    rpath.push_back(p);
                rpath.push_back(f);
                res.path.assign(rpath.rbegin(), rpath.rend());
                return res;
            }
            Entry& e = table_.get(n);
            if (e.closed || gv != e.g)
                continue;
            e.closed = true;
            ++res.expanded;
            ++expanded_total;
            buf_.clear();
            g_.successors(n, buf_);
            for (const auto& a : buf_)
                relax(n, a, gv);
        }
        return res;
    }

    std::uint64_t expanded_total = 0;

private:
    const ProductGraph& g_;
    const ProjectionBounds* pb_;
    Table table_;
    std::vector<ProductGraph::Arc> buf_;
};

template <typename Table>
SynthesisResult run(const ProductGraph& g, const SynthesisOptions& opt)
{
    const auto t0 = std::chrono::steady_clock::now();
    SynthesisResult out;
    SolverStats& st = out.stats;
    const int nq = g.nba().state_count();

    // Prefix search: multi-source Dijkstra ordered by (cost, hops, node).
    Table dtab(g.node_bound());
    dtab.reset();
    std::vector<std::uint64_t> settled;
    MinHeap heap;
    for (std::uint64_t s : g.initial_nodes()) {
        Entry& e = dtab.get(s);
        e.g = 0;
        e.hops = 0;
        heap.emplace(0, 0, s);
    }
    std::vector<ProductGraph::Arc> buf;
    while (!heap.empty()) {
        auto [gv, hv, n] = heap.top();
        heap.pop();
        Entry& e = dtab.get(n);
        if (e.closed || gv != e.g || hv != e.hops)
            continue;
        e.closed = true;
        e.local = static_cast<std::uint32_t>(settled.size());
        settled.push_back(n);
        buf.clear();
        g.successors(n, buf);
        for (const auto& a : buf) {
            Entry& x = dtab.get(a.to);
            if (x.closed)
                continue;
            const int ng = gv + a.units;
            const int nh = hv + 1;
            if (ng < x.g || (ng == x.g && nh < x.hops)) {
                x.g = ng;
                x.hops = nh;
                x.parent = n;
                heap.emplace(ng, nh, a.to);
            }
        }
    }
    st.nodes_expanded = settled.size();
    st.dijkstra_runs = 1;
    st.reachable_nodes = settled.size();

    // Accepting nodes that can lie on a cycle at all.
    std::vector<int> all_roots;
    for (std::uint64_t s : g.initial_nodes())
        all_roots.push_back(static_cast<int>(dtab.find(s)->local));
    const auto scc_all = strongly_connected_components(settled.size(), all_roots, [&](int v, auto&& emit) {
        std::vector<ProductGraph::Arc> b;
        g.successors(settled[v], b);
        for (const auto& a : b)
            emit(static_cast<int>(dtab.find(a.to)->local));
    });
    std::vector<int> size_all(scc_all.count, 0);
    for (int c : scc_all.component)
        if (c >= 0)
            ++size_all[c];

    std::vector<Candidate> cands;
    for (std::uint32_t v = 0; v < settled.size(); ++v) {
        const std::uint64_t n = settled[v];
        if (!g.is_accepting(n))
            continue;
        ++st.accepting_reachable;
        bool cyclic = size_all[scc_all.component[v]] > 1;
        if (!cyclic) {
            buf.clear();
            g.successors(n, buf);
            cyclic = std::any_of(buf.begin(), buf.end(), [&](const auto& a) { return a.to == n; });
        }
        if (!cyclic)
            continue;
        const Entry* e = dtab.find(n);
        cands.push_back(Candidate{n, e->g, e->hops, 0});
    }
    st.accepting_on_cycle = cands.size();

    std::unique_ptr<ProjectionBounds> pb;
    if (opt.goal_directed && !cands.empty()) {
        pb = std::make_unique<ProjectionBounds>(g);
        std::vector<int> tup;
        for (auto& c : cands) {
            g.tuple(c.node, tup);
            c.bound = pb->cycle_bound(tup, static_cast<int>(c.node % nq));
        }
        // Nodes whose projections cannot cycle are dropped.
        std::erase_if(cands, [](const Candidate& c) { return c.bound >= kInf; });
    }
    std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
        return std::make_tuple(a.prefix_units + a.bound, a.prefix_units, a.prefix_hops, a.node) <
               std::make_tuple(b.prefix_units + b.bound, b.prefix_units, b.prefix_hops, b.node);
    });

    const int nthreads = std::max(1, resolve_threads(opt.threads));
    std::vector<std::unique_ptr<Searcher<Table>>> workers;
    for (int i = 0; i < nthreads; ++i)
        workers.push_back(std::make_unique<Searcher<Table>>(g, pb.get()));

    bool have_best = false;
    std::tuple<int, int, std::uint64_t> best_key{kInf, 0, 0};
    CycleResult best_cycle;
    std::size_t next = 0;
    while (next < cands.size()) {
        const int best_total = std::get<0>(best_key);
        std::vector<std::size_t> chunk;
        while (next < cands.size() && chunk.size() < opt.chunk_size) {
            const auto& c = cands[next];
            if (have_best && c.prefix_units + c.bound > best_total)
                break;
            chunk.push_back(next++);
        }
        if (chunk.empty())
            break;
        std::vector<int> ftuple;
        if (pb)
            for (std::size_t ci : chunk) {
                g.tuple(cands[ci].node, ftuple);
                for (std::size_t i = 0; i < ftuple.size(); ++i)
                    pb->table(i, ftuple[i], static_cast<int>(cands[ci].node % nq));
            }
        std::vector<CycleResult> results(chunk.size());
        auto work = [&](int w) {
            for (std::size_t k = static_cast<std::size_t>(w); k < chunk.size(); k += nthreads) {
                const auto& c = cands[chunk[k]];
                const int budget = have_best ? best_total - c.prefix_units : kInf;
                results[k] = workers[w]->cycle(c.node, budget);
            }
        };
        if (nthreads == 1) {
            work(0);
        } else {
            std::vector<std::thread> pool;
            for (int w = 0; w < nthreads; ++w)
                pool.emplace_back(work, w);
            for (auto& t : pool)
                t.join();
        }
        for (std::size_t k = 0; k < chunk.size(); ++k) {
            ++st.dijkstra_runs;
            st.nodes_expanded += results[k].expanded;
            if (!results[k].found)
                continue;
            const auto& c = cands[chunk[k]];
            const auto key = std::make_tuple(c.prefix_units + results[k].units, c.prefix_hops, c.node);
            if (!have_best || key < best_key) {
                have_best = true;
                best_key = key;
                best_cycle = std::move(results[k]);
            }
        }
    }
    st.cycle_searches_skipped = cands.size() - next;

    if (have_best) {
        Plan pl;
        for (const auto& c : g.components())
            pl.robots.push_back(c.name());
        const std::uint64_t f = std::get<2>(best_key);
        std::vector<std::uint64_t> pre;
        for (std::uint64_t n = f; n != kNone; n = dtab.find(n)->parent)
            pre.push_back(n);
        std::reverse(pre.begin(), pre.end());
        std::vector<int> tup;
        for (std::uint64_t n : pre) {
            g.tuple(n, tup);
            pl.prefix.push_back(tup);
            pl.prefix_nba.push_back(static_cast<int>(n % nq));
        }
        for (std::uint64_t n : best_cycle.path) {
            g.tuple(n, tup);
            pl.suffix.push_back(tup);
            pl.suffix_nba.push_back(static_cast<int>(n % nq));
        }
        pl.accepting_node = f;
        const CostTriple c = plan_cost(pl, g.components().front().workspace());
        pl.prefix_cost = c.prefix;
        pl.suffix_cost = c.suffix;
        pl.total_cost = c.total;
        out.plan = std::move(pl);
    }
    st.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    if (out.plan)
        out.plan->stats = st;
    return out;
}

}  // namespace

int resolve_threads(int requested)
{
    if (requested > 0)
        return requested;
    if (const char* env = std::getenv("TSP_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0)
            return static_cast<int>(std::min<long>(v, 256));
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

SynthesisResult try_synthesize(const ProductGraph& p, const SynthesisOptions& opt)
{
    if (p.node_bound() <= kDenseLimit)
        return run<DenseTable>(p, opt);
    return run<HashTable>(p, opt);
}

Plan synthesize(const ProductGraph& p, const SynthesisOptions& opt)
{
    auto r = try_synthesize(p, opt);
    if (!r.plan)
        throw InfeasibleError("no reachable accepting product state lies on a cycle");
    return std::move(*r.plan);
}

// ---------------------------------------------------------------------------

double joint_step_weight(const Workspace& ws, const JointState& from, const JointState& to)
{
    if (from.size() != to.size())
        throw InputError("joint states of different arity");
    double w = 0.0;
    for (std::size_t i = 0; i < from.size(); ++i) {
        const int a = from[i];
        const int b = to[i];
        if (!ws.valid(a) || !ws.valid(b))
            throw InputError("waypoint id out of range in plan");
        if (ws.is_obstacle(a) || ws.is_obstacle(b))
            throw InputError("plan visits obstacle waypoint");
        if (a == b)
            continue;
        const auto& n = ws.neighbors(a);
        if (!std::binary_search(n.begin(), n.end(), b))
            throw InputError("plan step " + std::to_string(a) + " -> " + std::to_string(b) + " is not a move");
        w += ws.move_length();
    }
    return w;
}

CostTriple plan_cost(const Plan& pl, const Workspace& ws)
{
    if (pl.prefix.empty() || pl.suffix.size() < 2)
        throw InputError("plan needs a nonempty prefix and a suffix with at least one transition");
    CostTriple c;
    for (std::size_t k = 0; k + 1 < pl.prefix.size(); ++k)
        c.prefix += joint_step_weight(ws, pl.prefix[k], pl.prefix[k + 1]);
    for (std::size_t k = 0; k + 1 < pl.suffix.size(); ++k)
        c.suffix += joint_step_weight(ws, pl.suffix[k], pl.suffix[k + 1]);
    c.total = c.prefix + c.suffix;
    return c;
}

std::vector<std::string> plan_violations(const Plan& pl, const Workspace& ws, const ProximityRule& rule)
{
    std::vector<std::string> v;
    const std::size_t n = pl.robots.size();
    if (n == 0)
        v.push_back("plan names no robots");
    if (pl.prefix.empty())
        v.push_back("empty prefix");
    if (pl.suffix.size() < 2)
        v.push_back("suffix has no transition");
    if (!v.empty())
        return v;
    auto check_shape = [&](const std::vector<JointState>& seq, const char* part) {
        for (const auto& t : seq) {
            if (t.size() != n) {
                v.push_back(std::string(part) + " tuple arity differs from robot count");
                return false;
            }
            for (int w : t)
                if (!ws.valid(w)) {
                    v.push_back(std::string(part) + " waypoint " + std::to_string(w) + " out of range");
                    return false;
                }
        }
        return true;
    };
    if (!check_shape(pl.prefix, "prefix") || !check_shape(pl.suffix, "suffix"))
        return v;
    if (pl.suffix.front() != pl.suffix.back())
        v.push_back("suffix does not return to its first state");
    if (pl.suffix.front() != pl.prefix.back())
        v.push_back("suffix does not start at the last prefix state");
    try {
        const CostTriple c = plan_cost(pl, ws);
        if (c.prefix != pl.prefix_cost || c.suffix != pl.suffix_cost || c.total != pl.total_cost)
            v.push_back("stored costs differ from recomputed costs");
    } catch (const InputError& e) {
        v.push_back(e.what());
    }
    auto check_rule = [&](const std::vector<JointState>& seq, const char* part) {
        for (std::size_t k = 0; k < seq.size(); ++k) {
            if (!rule.state_ok(seq[k]))
                v.push_back(std::string(part) + " step " + std::to_string(k) + " violates the proximity constraint");
            if (k + 1 < seq.size() && !rule.move_ok(seq[k], seq[k + 1]))
                v.push_back(std::string(part) + " move " + std::to_string(k) + " violates the midpoint check");
        }
    };
    check_rule(pl.prefix, "prefix");
    check_rule(pl.suffix, "suffix");
    return v;
}

LassoWord plan_word(const Plan& pl)
{
    auto letter = [&](const JointState& t) {
        if (t.size() != pl.robots.size())
            throw InputError("plan tuple arity differs from robot count");
        Letter l;
        for (std::size_t i = 0; i < t.size(); ++i)
            l.insert(Atom{pl.robots[i], t[i]});
        return l;
    };
    if (pl.prefix.empty() || pl.suffix.size() < 2)
        throw InputError("plan needs a nonempty prefix and a suffix with at least one transition");
    LassoWord w;
    for (std::size_t k = 0; k + 1 < pl.prefix.size(); ++k)
        w.prefix.push_back(letter(pl.prefix[k]));
    for (std::size_t k = 0; k + 1 < pl.suffix.size(); ++k)
        w.period.push_back(letter(pl.suffix[k]));
    return w;
}

bool verify(const Plan& pl, const Formula& f, const Nba& b)
{
    const LassoWord w = plan_word(pl);
    const bool by_automaton = accepts_lasso(b, w);
    const bool by_formula = eval_lasso(f, w);
    if (by_automaton != by_formula)
        throw ConsistencyError(std::string("automaton and formula disagree on the plan trace (automaton ") +
                               (by_automaton ? "accepts" : "rejects") + ")");
    return by_automaton;
}

// ---------------------------------------------------------------------------

std::string plan_to_json(const Plan& pl)
{
    nlohmann::ordered_json j;
    j["robots"] = pl.robots;
    j["prefix"] = pl.prefix;
    j["suffix"] = pl.suffix;
    j["prefix_nba"] = pl.prefix_nba;
    j["suffix_nba"] = pl.suffix_nba;
    j["prefix_cost"] = pl.prefix_cost;
    j["suffix_cost"] = pl.suffix_cost;
    j["total_cost"] = pl.total_cost;
    j["accepting_state"] = pl.accepting_node;
    j["stats"] = {
        {"nodes_expanded", pl.stats.nodes_expanded},
        {"dijkstra_runs", pl.stats.dijkstra_runs},
        {"reachable_nodes", pl.stats.reachable_nodes},
        {"accepting_reachable", pl.stats.accepting_reachable},
        {"accepting_on_cycle", pl.stats.accepting_on_cycle},
        {"cycle_searches_skipped", pl.stats.cycle_searches_skipped},
    };
    return j.dump(2) + "\n";
}

Plan plan_from_json(const std::string& text)
{
    Plan pl;
    try {
        const auto j = nlohmann::json::parse(text);
        pl.robots = j.at("robots").get<std::vector<std::string>>();
        pl.prefix = j.at("prefix").get<std::vector<JointState>>();
        pl.suffix = j.at("suffix").get<std::vector<JointState>>();
        pl.prefix_nba = j.value("prefix_nba", std::vector<int>{});
        pl.suffix_nba = j.value("suffix_nba", std::vector<int>{});
        pl.prefix_cost = j.at("prefix_cost").get<double>();
        pl.suffix_cost = j.at("suffix_cost").get<double>();
        pl.total_cost = j.at("total_cost").get<double>();
        pl.accepting_node = j.value("accepting_state", std::uint64_t{0});
        if (j.contains("stats")) {
            const auto& s = j["stats"];
            pl.stats.nodes_expanded = s.value("nodes_expanded", std::uint64_t{0});
            pl.stats.dijkstra_runs = s.value("dijkstra_runs", std::uint64_t{0});
            pl.stats.reachable_nodes = s.value("reachable_nodes", std::uint64_t{0});
            pl.stats.accepting_reachable = s.value("accepting_reachable", std::uint64_t{0});
            pl.stats.accepting_on_cycle = s.value("accepting_on_cycle", std::uint64_t{0});
            pl.stats.cycle_searches_skipped = s.value("cycle_searches_skipped", std::uint64_t{0});
        }
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("plan file: ") + e.what());
    }
    return pl;
}

}  // namespace tlplan
