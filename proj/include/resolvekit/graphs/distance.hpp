#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>

#include "resolvekit/errors.hpp"
#include "resolvekit/exactmath/matrix.hpp"
#include "resolvekit/graphs/graph.hpp"

namespace resolvekit::graphs {

/// All-pairs shortest path lengths of a connected graph.
struct DistMatrix {
    exactmath::IntMatrix m;
    int diam = 0;
};

/// BFS from every vertex. Throws NotConnected for disconnected graphs.
inline DistMatrix distance_matrix(const Graph& g) {
    const int q = g.order();
    DistMatrix out{exactmath::IntMatrix(q, q, 0), 0};
    for (int s = 0; s < q; ++s) {
        std::uint64_t seen = std::uint64_t{1} << s;
        std::uint64_t frontier = seen;
        int depth = 0;
        while (frontier != 0) {
            for (std::uint64_t f = frontier; f != 0; f &= f - 1) out.m(s, std::countr_zero(f)) = depth;
            std::uint64_t next = 0;
            for (std::uint64_t f = frontier; f != 0; f &= f - 1) next |= g.neighbours(std::countr_zero(f));
            frontier = next & ~seen;
            seen |= next;
            ++depth;
        }
        if (seen != g.all_vertices()) throw NotConnected();
        out.diam = std::max(out.diam, depth - 1);
    }
    return out;
}

}  // namespace resolvekit::graphs
