#pragma once

// graph6: byte 0 is n + 63, followed by the upper triangle of the adjacency
// matrix in column order (0,1),(0,2),(1,2),(0,3),... packed six bits per
// byte (most significant first), each byte offset by 63.

#include <cstddef>
#include <istream>
#include <string>
#include <string_view>

#include "resolvekit/errors.hpp"
#include "resolvekit/graphs/graph.hpp"

namespace resolvekit::graphs {

inline constexpr int kGraph6MaxOrder = 62;
inline constexpr std::string_view kGraph6Header = ">>graph6<<";

inline Graph parse_graph6(std::string_view line) {
    while (!line.empty() && (line.back() == '\n' || line.back() == '\r')) line.remove_suffix(1);
    if (line.empty()) throw ParseError("empty graph6 record", 0);
    for (std::size_t i = 0; i < line.size(); ++i) {
        const auto c = static_cast<unsigned char>(line[i]);
        if (c < 63 || c > 126) throw ParseError("graph6 byte out of range", i);
    }
    const int n = static_cast<unsigned char>(line[0]) - 63;
    if (n > kGraph6MaxOrder) throw ParseError("graph6 multi-byte order is not supported", 0);
    const std::size_t bits = static_cast<std::size_t>(n) * (n - 1) / 2;
    const std::size_t expected = 1 + (bits + 5) / 6;
    if (line.size() < expected) throw ParseError("truncated graph6 record", line.size());
    if (line.size() > expected) throw ParseError("trailing bytes after graph6 record", expected);

    Graph g(n);
    std::size_t k = 0;
    for (int j = 1; j < n; ++j) {
        for (int i = 0; i < j; ++i, ++k) {
            const int value = static_cast<unsigned char>(line[1 + k / 6]) - 63;
            if ((value >> (5 - k % 6)) & 1) g.add_edge(i, j);
        }
    }
    return g;
}

inline std::string to_graph6(const Graph& g) {
    const int n = g.order();
    if (n > kGraph6MaxOrder) throw InvalidArgument("graph6 output supports at most 62 vertices");
    const std::size_t bits = static_cast<std::size_t>(n) * (n - 1) / 2;
    std::string out(1 + (bits + 5) / 6, '\0');
    out[0] = static_cast<char>(n + 63);
    std::size_t k = 0;
    for (int j = 1; j < n; ++j) {
        for (int i = 0; i < j; ++i, ++k) {
            if (g.adjacent(i, j)) out[1 + k / 6] = static_cast<char>(out[1 + k / 6] | (1 << (5 - k % 6)));
        }
    }
    for (std::size_t b = 1; b < out.size(); ++b) out[b] = static_cast<char>(out[b] + 63);
    return out;
}

/// Reads one graph6 record per line, skipping blank lines and an optional
/// ">>graph6<<" header. Calls sink(graph, line_number) for each record.
template <typename Sink>
std::size_t read_graph6_stream(std::istream& in, Sink&& sink) {
    std::string line;
    std::size_t count = 0;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view(line);
        if (line_no == 1 && view.starts_with(kGraph6Header)) view.remove_prefix(kGraph6Header.size());
        while (!view.empty() && (view.back() == '\r' || view.back() == ' ')) view.remove_suffix(1);
        if (view.empty()) continue;
        sink(parse_graph6(view), line_no);
        ++count;
    }
    return count;
}

}  // namespace resolvekit::graphs
