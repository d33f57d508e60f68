#pragma once

#include <string>
#include <string_view>

#include "resolvekit/errors.hpp"
#include "resolvekit/graphs/graph.hpp"

namespace resolvekit::graphs {

inline Graph complete(int q) {
    if (q < 2) throw InvalidArgument("complete graph needs q >= 2");
    Graph g(q);
    for (int u = 0; u < q; ++u)
        for (int v = u + 1; v < q; ++v) g.add_edge(u, v);
    return g;
}

/// Path 0 - 1 - ... - (q-1).
inline Graph path(int q) {
    if (q < 2) throw InvalidArgument("path needs q >= 2");
    Graph g(q);
    for (int v = 0; v + 1 < q; ++v) g.add_edge(v, v + 1);
    return g;
}

/// Cycle 0 - 1 - ... - (q-1) - 0.
inline Graph cycle(int q) {
    if (q < 3) throw InvalidArgument("cycle needs q >= 3");
    Graph g = path(q);
    g.add_edge(q - 1, 0);
    return g;
}

/// K_{a,b} with parts {0..a-1} and {a..a+b-1}.
inline Graph complete_bipartite(int a, int b) {
    if (a < 1 || b < 1 || a + b < 2) throw InvalidArgument("complete bipartite graph needs parts of size >= 1");
    Graph g(a + b);
    for (int u = 0; u < a; ++u)
        for (int v = a; v < a + b; ++v) g.add_edge(u, v);
    return g;
}

/// K_q with the edges of a clique on the first c vertices removed, so the
/// c vertices of degree q-c come first.
inline Graph complete_minus_clique(int q, int c) {
    if (q < 2 || c < 2 || c >= q) throw InvalidArgument("complete_minus_clique needs 2 <= c < q");
    Graph g(q);
    for (int u = 0; u < q; ++u)
        for (int v = u + 1; v < q; ++v)
            if (v >= c) g.add_edge(u, v);
    return g;
}

/// Family lookup by CLI name: complete, path, cycle, complete-bipartite
/// (q1, q2), k-minus-clique (q, clique).
inline Graph by_family(std::string_view family, int q, int second = 0) {
    if (family == "complete") return complete(q);
    if (family == "path") return path(q);
    if (family == "cycle") return cycle(q);
    if (family == "complete-bipartite") return complete_bipartite(q, second);
    if (family == "k-minus-clique") return complete_minus_clique(q, second);
    throw InvalidArgument("unknown graph family '" + std::string(family) + "'");
}

}  // namespace resolvekit::graphs
