#pragma once

#include <bit>
#include <cstdint>
#include <utility>
#include <vector>

#include "resolvekit/errors.hpp"

namespace resolvekit::graphs {

/// Finite simple undirected graph on vertices 0..q-1 (q <= 64), stored as
/// one adjacency bitmask per vertex.
class Graph {
public:
    static constexpr int kMaxVertices = 64;

    Graph() = default;
    explicit Graph(int q) : adj_(check_order(q), 0) {}

    int order() const noexcept { return static_cast<int>(adj_.size()); }

    void add_edge(int u, int v) {
        check_vertex(u);
        check_vertex(v);
        if (u == v) throw InvalidArgument("self-loops are not allowed");
        adj_[u] |= bit(v);
        adj_[v] |= bit(u);
    }

    bool adjacent(int u, int v) const { return (adj_[u] >> v) & 1u; }
    std::uint64_t neighbours(int v) const { return adj_[v]; }
    int degree(int v) const { return std::popcount(adj_[v]); }

    int edge_count() const {
        int total = 0;
        for (auto m : adj_) total += std::popcount(m);
        return total / 2;
    }

    std::vector<std::pair<int, int>> edges() const {
        std::vector<std::pair<int, int>> out;
        for (int u = 0; u < order(); ++u)
            for (int v = u + 1; v < order(); ++v)
                if (adjacent(u, v)) out.emplace_back(u, v);
        return out;
    }

    bool connected() const {
        if (adj_.empty()) return true;
        std::uint64_t seen = 1;
        std::uint64_t frontier = 1;
        while (frontier != 0) {
            std::uint64_t next = 0;
            for (std::uint64_t f = frontier; f != 0; f &= f - 1) next |= adj_[std::countr_zero(f)];
            frontier = next & ~seen;
            seen |= next;
        }
        return seen == all_vertices();
    }

    std::uint64_t all_vertices() const noexcept {
        return order() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << order()) - 1;
    }

    /// The graph with vertex v renamed to perm[v].
    Graph relabeled(const std::vector<int>& perm) const {
        if (static_cast<int>(perm.size()) != order()) throw InvalidArgument("relabel: permutation size mismatch");
        Graph out(order());
        for (auto [u, v] : edges()) out.add_edge(perm[u], perm[v]);
        return out;
    }

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    std::vector<std::uint64_t> adj_;

    static std::uint64_t bit(int v) { return std::uint64_t{1} << v; }

    static std::size_t check_order(int q) {
        if (q < 0 || q > kMaxVertices) throw InvalidArgument("graph order must be in [0, 64]");
        return static_cast<std::size_t>(q);
    }

    void check_vertex(int v) const {
        if (v < 0 || v >= order()) throw InvalidArgument("vertex index out of range");
    }
};

}  // namespace resolvekit::graphs
