#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace tlplan {

/// Strongly connected components of the part of a graph reachable from
/// `roots`, computed with an iterative Tarjan search. `succ(v, emit)` must
/// call `emit(w)` for every successor w of v. Unreached nodes keep component
/// id -1; component ids are in reverse topological order.
struct SccResult {
    std::vector<int> component;
    int count = 0;
};

template <typename Successors>
SccResult strongly_connected_components(std::size_t num_nodes, std::span<const int> roots, Successors&& succ)
{
    constexpr int unvisited = -1;
    SccResult res;
    res.component.assign(num_nodes, -1);
    std::vector<int> index(num_nodes, unvisited);
    std::vector<int> low(num_nodes, 0);
    std::vector<char> on_stack(num_nodes, 0);
    std::vector<int> stack;
    int next_index = 0;

    struct Frame {
        int node;
        std::vector<int> succs;
        std::size_t pos;
    };
    std::vector<Frame> call;

    auto open = [&](int v) {
        index[v] = low[v] = next_index++;
        stack.push_back(v);
        on_stack[v] = 1;
        Frame fr{v, {}, 0};
        succ(v, [&](int w) { fr.succs.push_back(w); });
        call.push_back(std::move(fr));
    };

    for (int root : roots) {
        if (index[root] != unvisited)
            continue;
        open(root);
        while (!call.empty()) {
            Frame& fr = call.back();
            if (fr.pos < fr.succs.size()) {
                const int w = fr.succs[fr.pos++];
                if (index[w] == unvisited) {
                    open(w);
                } else if (on_stack[w]) {
                    low[fr.node] = std::min(low[fr.node], index[w]);
                }
                continue;
            }
            const int v = fr.node;
            if (low[v] == index[v]) {
                int w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = 0;
                    res.component[w] = res.count;
                } while (w != v);
                ++res.count;
            }
            call.pop_back();
            if (!call.empty()) {
                const int parent = call.back().node;
                low[parent] = std::min(low[parent], low[v]);
            }
        }
    }
    return res;
}

}  // namespace tlplan
