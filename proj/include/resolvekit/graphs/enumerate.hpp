#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "resolvekit/errors.hpp"
#include "resolvekit/graphs/graph.hpp"

namespace resolvekit::graphs {

/// Vertex pairs in graph6 bit order: (0,1),(0,2),(1,2),(0,3),...
inline std::vector<std::pair<int, int>> pair_order(int q) {
    std::vector<std::pair<int, int>> out;
    for (int j = 1; j < q; ++j)
        for (int i = 0; i < j; ++i) out.emplace_back(i, j);
    return out;
}

/// Every labeled connected simple graph on q vertices, 2 <= q <= 7, in
/// increasing order of edge mask (bit e set means pair_order(q)[e] is an
/// edge). Calls sink(graph, mask).
template <typename Sink>
std::uint64_t enumerate_connected_labeled(int q, Sink&& sink) {
    if (q < 2 || q > 7) throw InvalidArgument("enumerate_connected_labeled: q must be in [2, 7]");
    const auto pairs = pair_order(q);
    const std::uint64_t limit = std::uint64_t{1} << pairs.size();
    std::uint64_t yielded = 0;
    std::vector<std::uint64_t> adj(q);
    for (std::uint64_t mask = 0; mask < limit; ++mask) {
        std::fill(adj.begin(), adj.end(), 0);
        for (std::uint64_t m = mask; m != 0; m &= m - 1) {
            const auto [u, v] = pairs[std::countr_zero(m)];
            adj[u] |= std::uint64_t{1} << v;
            adj[v] |= std::uint64_t{1} << u;
        }
        std::uint64_t seen = 1;
        std::uint64_t frontier = 1;
        while (frontier != 0) {
            std::uint64_t next = 0;
            for (std::uint64_t f = frontier; f != 0; f &= f - 1) next |= adj[std::countr_zero(f)];
            frontier = next & ~seen;
            seen |= next;
        }
        if (seen != (std::uint64_t{1} << q) - 1) continue;
        Graph g(q);
        for (std::uint64_t m = mask; m != 0; m &= m - 1) {
            const auto [u, v] = pairs[std::countr_zero(m)];
            g.add_edge(u, v);
        }
        sink(g, mask);
        ++yielded;
    }
    return yielded;
}

}  // namespace resolvekit::graphs
