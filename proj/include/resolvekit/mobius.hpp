#pragma once

// The meet-semilattice of natural numbers ordered by bitwise containment:
// x <= y iff (x & y) == x, with meet x & y. Its Mobius function is
// mu(x, y) = (-1)^(popcount(y) - popcount(x)) on comparable pairs.

#include <bit>
#include <cstdint>
#include <functional>
#include <vector>

#include "resolvekit/errors.hpp"
#include "resolvekit/exactmath/bigint.hpp"

namespace resolvekit::mobius {

using Index = std::uint64_t;

inline int popcount(Index x) noexcept { return std::popcount(x); }

inline bool precedes(Index x, Index y) noexcept { return (x & y) == x; }

inline Index meet(Index x, Index y) noexcept { return x & y; }

inline int mu(Index x, Index y) noexcept {
    if (!precedes(x, y)) return 0;
    return ((popcount(y) - popcount(x)) & 1) ? -1 : 1;
}

/// All submasks of j in increasing order.
inline std::vector<Index> downset(Index j) {
    std::vector<Index> out;
    out.reserve(std::size_t{1} << popcount(j));
    // Decreasing submask walk, then reversed.
    for (Index s = j;; s = (s - 1) & j) {
        out.push_back(s);
        if (s == 0) break;
    }
    return {out.rbegin(), out.rend()};
}

/// Calls f(i) for every i <= j in increasing order without allocating.
template <typename F>
void for_each_submask(Index j, F&& f) {
    // Increasing order: next submask after s is ((s | ~j) + 1) & j.
    Index s = 0;
    while (true) {
        f(s);
        if (s == j) break;
        s = ((s | ~j) + 1) & j;
    }
}

/// Exact value of popcount(0) + popcount(1) + ... + popcount(x).
inline exactmath::BigInt popcount_prefix_sum(Index x) {
    // Bit b is set in (t mod 2^(b+1)) >= 2^b for t in [0, x]; count per bit.
    using exactmath::BigInt;
    if (x == UINT64_MAX) throw InvalidArgument("popcount_prefix_sum: argument too large");
    const unsigned __int128 count = static_cast<unsigned __int128>(x) + 1;
    BigInt total;
    for (int b = 0; b < 64; ++b) {
        const unsigned __int128 block = static_cast<unsigned __int128>(1) << (b + 1);
        const unsigned __int128 half = block >> 1;
        if (half > count) break;
        const unsigned __int128 full = count / block;
        const unsigned __int128 rest = count % block;
        const unsigned __int128 ones = full * half + (rest > half ? rest - half : 0);
        total += BigInt(static_cast<std::uint64_t>(ones));
    }
    return total;
}

/// Evaluates sum_{x <= b} f(x & a) mu(x, b). By Lindstrom's lemma this is
/// zero whenever b is not below a.
inline exactmath::BigInt lindstrom_check(Index a, Index b, const std::function<exactmath::BigInt(Index)>& f) {
    if (precedes(b, a)) throw InvalidArgument("lindstrom_check: requires b not below a");
    exactmath::BigInt total;
    for_each_submask(b, [&](Index x) {
        const exactmath::BigInt v = f(meet(x, a));
        if (mu(x, b) > 0) {
            total += v;
        } else {
            total -= v;
        }
    });
    return total;
}

}  // namespace resolvekit::mobius
