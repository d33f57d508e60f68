#pragma once

// Canonical labeling by individualization-refinement, used to generate
// isomorph-free corpora when no external graph6 collection is available.
//
// The ordered partition is refined to an equitable one by splitting cells on
// neighbour counts; the first non-singleton cell is then branched on, one
// vertex per twin class (swapping two twins in the same cell is an
// automorphism that fixes the partition, so their subtrees agree). The
// canonical code is the smallest adjacency code over all leaves.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <unordered_set>
#include <vector>

#include "resolvekit/errors.hpp"
#include "resolvekit/graphs/enumerate.hpp"
#include "resolvekit/graphs/graph.hpp"

namespace resolvekit::graphs {

inline constexpr int kMaxCanonicalOrder = 11;

/// Adjacency code of g under the labeling vertex v -> label[v]: the graph6
/// bit string of the relabeled graph read as a binary number.
inline std::uint64_t adjacency_code(const std::vector<std::uint64_t>& adj, const std::vector<int>& label) {
    const int q = static_cast<int>(adj.size());
    std::vector<int> vertex_at(q);
    for (int v = 0; v < q; ++v) vertex_at[label[v]] = v;
    std::uint64_t code = 0;
    for (int j = 1; j < q; ++j) {
        const std::uint64_t row = adj[vertex_at[j]];
        for (int i = 0; i < j; ++i) code = (code << 1) | ((row >> vertex_at[i]) & 1u);
    }
    return code;
}

inline Graph graph_from_code(int q, std::uint64_t code) {
    Graph g(q);
    const auto pairs = pair_order(q);
    const std::size_t k = pairs.size();
    for (std::size_t e = 0; e < k; ++e) {
        if ((code >> (k - 1 - e)) & 1u) g.add_edge(pairs[e].first, pairs[e].second);
    }
    return g;
}

namespace detail {

using Cells = std::vector<std::vector<int>>;

inline void refine(const std::vector<std::uint64_t>& adj, Cells& cells) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t s = 0; s < cells.size() && !changed; ++s) {
            std::uint64_t splitter = 0;
            for (int v : cells[s]) splitter |= std::uint64_t{1} << v;
            for (std::size_t c = 0; c < cells.size(); ++c) {
                if (cells[c].size() < 2) continue;
                auto count = [&](int v) { return std::popcount(adj[v] & splitter); };
                const int first = count(cells[c][0]);
                bool uniform = true;
                for (int v : cells[c]) uniform = uniform && count(v) == first;
                if (uniform) continue;
                std::vector<int> members = cells[c];
                std::stable_sort(members.begin(), members.end(), [&](int a, int b) { return count(a) < count(b); });
                Cells pieces;
                for (int v : members) {
                    if (pieces.empty() || count(pieces.back().front()) != count(v)) pieces.emplace_back();
                    pieces.back().push_back(v);
                }
                cells.erase(cells.begin() + static_cast<std::ptrdiff_t>(c));
                cells.insert(cells.begin() + static_cast<std::ptrdiff_t>(c), pieces.begin(), pieces.end());
                changed = true;
                break;
            }
        }
    }
}

inline void search(const std::vector<std::uint64_t>& adj, Cells cells, std::uint64_t& best, bool& have_best) {
    refine(adj, cells);
    std::size_t target = cells.size();
    for (std::size_t c = 0; c < cells.size(); ++c) {
        if (cells[c].size() > 1) {
            target = c;
            break;
        }
    }
    if (target == cells.size()) {
        std::vector<int> label(adj.size());
        for (std::size_t c = 0; c < cells.size(); ++c) label[cells[c][0]] = static_cast<int>(c);
        const std::uint64_t code = adjacency_code(adj, label);
        if (!have_best || code < best) {
            best = code;
            have_best = true;
        }
        return;
    }
    const std::vector<int>& cell = cells[target];
    std::vector<int> representatives;
    for (int v : cell) {
        bool twin_seen = false;
        for (int u : representatives) {
            const std::uint64_t bu = std::uint64_t{1} << u;
            const std::uint64_t bv = std::uint64_t{1} << v;
            if ((adj[u] & ~bv) == (adj[v] & ~bu)) {
                twin_seen = true;
                break;
            }
        }
        if (!twin_seen) representatives.push_back(v);
    }
    for (int v : representatives) {
        Cells next;
        next.reserve(cells.size() + 1);
        for (std::size_t c = 0; c < cells.size(); ++c) {
            if (c != target) {
                next.push_back(cells[c]);
                continue;
            }
            next.push_back({v});
            std::vector<int> rest;
            for (int u : cell)
                if (u != v) rest.push_back(u);
            next.push_back(std::move(rest));
        }
        search(adj, std::move(next), best, have_best);
    }
}

}  // namespace detail

/// Isomorphism-invariant code: two graphs of the same order get the same
/// code iff they are isomorphic.
inline std::uint64_t canonical_code(const Graph& g) {
    const int q = g.order();
    if (q > kMaxCanonicalOrder) throw InvalidArgument("canonical_code supports at most 11 vertices");
    std::vector<std::uint64_t> adj(q);
    for (int v = 0; v < q; ++v) adj[v] = g.neighbours(v);
    detail::Cells cells;
    if (q > 0) {
        cells.emplace_back(q);
        std::iota(cells[0].begin(), cells[0].end(), 0);
    }
    std::uint64_t best = 0;
    bool have_best = false;
    detail::search(adj, std::move(cells), best, have_best);
    return best;
}

/// One representative per isomorphism class of graphs on q vertices
/// (1 <= q <= 11), built by extending every class on q-1 vertices with a new
/// vertex in all possible ways. Representatives are returned as canonical
/// codes in increasing order.
inline std::vector<std::uint64_t> nonisomorphic_codes(int q, bool connected_only) {
    if (q < 1 || q > kMaxCanonicalOrder) throw InvalidArgument("nonisomorphic_codes: q must be in [1, 11]");
    std::vector<std::uint64_t> level{0};
    for (int order = 2; order <= q; ++order) {
        const bool last = order == q;
        std::unordered_set<std::uint64_t> seen;
        for (std::uint64_t code : level) {
            const Graph base = graph_from_code(order - 1, code);
            for (std::uint64_t nbrs = 0; nbrs < (std::uint64_t{1} << (order - 1)); ++nbrs) {
                Graph g(order);
                for (auto [u, v] : base.edges()) g.add_edge(u, v);
                for (std::uint64_t m = nbrs; m != 0; m &= m - 1) g.add_edge(std::countr_zero(m), order - 1);
                if (last && connected_only && !g.connected()) continue;
                seen.insert(canonical_code(g));
            }
        }
        level.assign(seen.begin(), seen.end());
        std::sort(level.begin(), level.end());
    }
    return level;
}

}  // namespace resolvekit::graphs
