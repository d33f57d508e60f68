#pragma once

// Witness vectors w (integer, zero-sum, with Mw injective) and the radix
//
//   r(M) = 1 + min over witnesses of (max Mw - min Mw) / gcd_{i<j}((Mw)_i - (Mw)_j).
//
// r(M) = p exactly when some witness makes sorted Mw an arithmetic
// progression, which in turn holds iff some permutation target
// (pi(1), ..., pi(p), 0) lies in the column space of M' = ((M, 1), (1^T, 0)).

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "resolvekit/errors.hpp"
#include "resolvekit/exactmath/linalg.hpp"
#include "resolvekit/exactmath/matrix.hpp"

namespace resolvekit::witness {

using exactmath::IntMatrix;
using exactmath::IntVector;

inline constexpr std::uint64_t kDefaultBoxCap = std::uint64_t{1} << 27;

struct WitnessInfo {
    IntVector w;
    IntVector mw;
    std::int64_t g = 0;       // gcd of pairwise differences of Mw
    std::int64_t ratio = 0;   // (max Mw - min Mw) / g
    std::int64_t r_w = 0;     // ratio + 1
    std::int64_t l1 = 0;      // sum |w_i|
    std::int64_t min_mw = 0;
    std::int64_t max_mw = 0;

    /// Distinct labels ((Mw)_i - min Mw) / g in [0, ratio].
    IntVector normalized() const {
        IntVector out(mw.size());
        for (std::size_t i = 0; i < mw.size(); ++i) out[i] = (mw[i] - min_mw) / g;
        return out;
    }
};

struct RBound {
    std::optional<std::int64_t> exact;
    std::int64_t lower = 0;
    std::int64_t upper = 0;
    std::optional<WitnessInfo> best;  // witness achieving `upper`
};

struct Statement3Result {
    std::vector<int> permutation;  // permutation[i] = pi(i + 1), values 1..p
    WitnessInfo info;
};

namespace detail {

inline std::int64_t abs64(std::int64_t v) { return v < 0 ? -v : v; }

// Fills the derived fields from Mw; returns false if Mw has a repeated value.
inline bool summarize(WitnessInfo& info, IntVector sorted) {
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 1; i < sorted.size(); ++i)
        if (sorted[i] == sorted[i - 1]) return false;
    std::int64_t g = 0;
    for (std::size_t i = 1; i < sorted.size(); ++i) g = std::gcd(g, sorted[i] - sorted[0]);
    info.g = g;
    info.min_mw = sorted.front();
    info.max_mw = sorted.back();
    info.ratio = (info.max_mw - info.min_mw) / g;
    info.r_w = info.ratio + 1;
    return true;
}

}  // namespace detail

/// Checks that w is a witness for M and computes Mw, g, ratio and r_w.
inline WitnessInfo validate(const IntMatrix& m, std::span<const std::int64_t> w) {
    if (m.rows() < 2) throw InvalidArgument("witness: matrix needs at least two rows");
    if (w.size() != m.cols()) throw InvalidArgument("witness: length does not match column count");
    std::int64_t sum = 0;
    std::int64_t l1 = 0;
    for (std::int64_t v : w) {
        sum += v;
        l1 += detail::abs64(v);
    }
    if (sum != 0) throw InvalidArgument("not zero-sum");
    WitnessInfo info;
    info.w.assign(w.begin(), w.end());
    info.mw = exactmath::multiply(m, w);
    info.l1 = l1;
    if (!detail::summarize(info, info.mw)) throw InvalidArgument("degenerate witness");
    return info;
}

/// Sorted Mw is an arithmetic progression with nonzero difference.
inline bool ap_check(const WitnessInfo& info) {
    return info.ratio == static_cast<std::int64_t>(info.mw.size()) - 1;
}

enum class Family { complete, path, even_cycle, odd_cycle };

/// Closed-form witnesses whose image is an arithmetic progression, for the
/// vertex orderings produced by graphs::complete / path / cycle.
inline IntVector named_witness(Family family, int q) {
    IntVector w(static_cast<std::size_t>(q < 0 ? 0 : q), 0);
    switch (family) {
        case Family::complete:
            if (q < 2) throw InvalidArgument("complete witness needs q >= 2");
            for (int i = 1; i <= q; ++i) w[i - 1] = 2 * i - (q + 1);
            break;
        case Family::path:
            if (q < 2) throw InvalidArgument("path witness needs q >= 2");
            w[0] = -1;
            w[q - 1] = 1;
            break;
        case Family::even_cycle:
            if (q < 4 || q % 2 != 0) throw InvalidArgument("even cycle witness needs even q >= 4");
            w[0] = 1;
            w[q / 2 - 1] = -(q + 2) / 2;
            w[(q + 2) / 2 - 1] = q / 2;
            break;
        case Family::odd_cycle:
            if (q < 3 || q % 2 != 1) throw InvalidArgument("odd cycle witness needs odd q >= 3");
            std::fill(w.begin(), w.end(), -1);
            w[(q + 1) / 2 - 1] = (q - 3) / 2;
            w[q - 1] = (q - 1) / 2;
            break;
    }
    return w;
}

namespace detail {

// Backtracking over permutations pi of 1..p subject to sum_i y_i pi(i) = 0
// for every constraint row y. Positions are filled in order; at each node
// the rearrangement inequality bounds what the unfilled suffix can add.
class PermutationSearch {
public:
    PermutationSearch(int p, std::vector<IntVector> constraints)
        : p_(p), ys_(std::move(constraints)), perm_(p, 0), partial_(ys_.size(), 0) {
        suffix_sorted_.resize(ys_.size());
        for (std::size_t c = 0; c < ys_.size(); ++c) {
            suffix_sorted_[c].resize(p + 1);
            for (int pos = 0; pos <= p; ++pos) {
                IntVector coeffs(ys_[c].begin() + pos, ys_[c].end());
                std::sort(coeffs.begin(), coeffs.end());
                suffix_sorted_[c][pos] = std::move(coeffs);
            }
        }
    }

    std::optional<std::vector<int>> run() {
        if (!feasible(0)) return std::nullopt;
        if (dfs(0)) return perm_;
        return std::nullopt;
    }

private:
    int p_;
    std::vector<IntVector> ys_;
    std::vector<std::vector<IntVector>> suffix_sorted_;
    std::vector<int> perm_;
    IntVector partial_;
    std::uint64_t used_ = 0;

    bool feasible(int pos) const {
        std::int64_t values[64];
        int count = 0;
        for (int v = 1; v <= p_; ++v)
            if (!((used_ >> v) & 1u)) values[count++] = v;
        for (std::size_t c = 0; c < ys_.size(); ++c) {
            const IntVector& coeffs = suffix_sorted_[c][pos];
            std::int64_t lo = 0;
            std::int64_t hi = 0;
            for (int i = 0; i < count; ++i) {
                lo += coeffs[i] * values[count - 1 - i];
                hi += coeffs[i] * values[i];
            }
            if (partial_[c] + lo > 0 || partial_[c] + hi < 0) return false;
        }
        return true;
    }

    bool dfs(int pos) {
        if (pos == p_) return true;
        for (int v = 1; v <= p_; ++v) {
            if ((used_ >> v) & 1u) continue;
            used_ |= std::uint64_t{1} << v;
            perm_[pos] = v;
            for (std::size_t c = 0; c < ys_.size(); ++c) partial_[c] += ys_[c][pos] * v;
            const bool ok = feasible(pos + 1) && dfs(pos + 1);
            if (ok) return true;
            for (std::size_t c = 0; c < ys_.size(); ++c) partial_[c] -= ys_[c][pos] * v;
            used_ &= ~(std::uint64_t{1} << v);
        }
        return false;
    }
};

}  // namespace detail

/// A permutation pi, as values 1..p, with (pi(1), ..., pi(p), 0) in the
/// column space of M', or nullopt if there is none. An invertible M' admits
/// the identity, so the kernel is only computed for singular M'.
inline std::optional<std::vector<int>> statement3_permutation(const IntMatrix& m) {
    const std::size_t p = m.rows();
    if (p < 2) throw InvalidArgument("statement3: matrix needs at least two rows");
    if (p > 62) throw InvalidArgument("statement3: at most 62 rows supported");
    const IntMatrix bordered = exactmath::bordered(m);
    std::vector<int> perm(p);
    std::iota(perm.begin(), perm.end(), 1);
    if (bordered.is_square() && !exactmath::determinant(bordered).is_zero()) return perm;

    const auto kernel = exactmath::left_kernel(exactmath::to_rational(bordered));
    std::vector<IntVector> constraints;
    for (const auto& y : kernel) {
        IntVector row(p);
        bool any = false;
        for (std::size_t i = 0; i < p; ++i) {
            row[i] = y[i].num().to_int64();
            any = any || row[i] != 0;
        }
        if (any) constraints.push_back(std::move(row));
    }
    if (constraints.empty()) return perm;
    return detail::PermutationSearch(static_cast<int>(p), std::move(constraints)).run();
}

/// Searches for a permutation pi with (pi(1), ..., pi(p), 0) in the column
/// space of M'. On success also returns an integer witness extracted from
/// the solution, which always satisfies ap_check. nullopt means r(M) > p.
inline std::optional<Statement3Result> statement3(const IntMatrix& m) {
    auto perm = statement3_permutation(m);
    if (!perm) return std::nullopt;
    const std::size_t p = m.rows();
    const exactmath::RatMatrix bordered = exactmath::to_rational(exactmath::bordered(m));
    exactmath::RatVector target(p + 1);
    for (std::size_t i = 0; i < p; ++i) target[i] = exactmath::Rat((*perm)[i]);
    const auto x = exactmath::solve(bordered, target);
    if (!x) throw InconsistentData("statement3: permutation target not in column space");
    const std::span<const exactmath::Rat> u(x->data(), m.cols());
    const auto scaled = exactmath::integerize(u);
    IntVector w(m.cols());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = scaled[i].to_int64();
    return Statement3Result{std::move(*perm), validate(m, w)};
}

/// Number of vectors scanned by search_witness for a given box.
inline std::uint64_t box_size(std::size_t q, std::int64_t bound) {
    std::uint64_t total = 1;
    const auto side = static_cast<std::uint64_t>(2 * bound + 1);
    for (std::size_t i = 0; i + 1 < q; ++i) {
        if (total > UINT64_MAX / side) return UINT64_MAX;
        total *= side;
    }
    return total;
}

/// Exhaustive search over zero-sum w with entries in [-bound, bound] whose
/// first nonzero entry is positive. Returns the witness of smallest ratio,
/// ties broken by lexicographically smallest w.
inline std::optional<WitnessInfo> search_witness(const IntMatrix& m, std::int64_t bound,
                                                 std::uint64_t cap = kDefaultBoxCap) {
    const std::size_t p = m.rows();
    const std::size_t q = m.cols();
    if (p < 2) throw InvalidArgument("search_witness: matrix needs at least two rows");
    if (bound < 0) throw InvalidArgument("search_witness: bound must be nonnegative");
    if (q < 2 || bound == 0) return std::nullopt;
    if (box_size(q, bound) > cap) {
        throw ResourceError("search_witness: box of " + std::to_string(box_size(q, bound)) +
                            " vectors exceeds cap " + std::to_string(cap));
    }

    const std::size_t free = q - 1;
    IntVector w(q, -bound);
    w[0] = 0;
    IntVector partial(p, 0);  // M restricted to the first q-1 coordinates times w
    for (std::size_t r = 0; r < p; ++r)
        for (std::size_t c = 0; c < free; ++c) partial[r] += m(r, c) * w[c];

    std::optional<WitnessInfo> best;
    IntVector mw(p);
    const auto lower_bound_ratio = static_cast<std::int64_t>(p) - 1;
    while (true) {
        std::int64_t sum = 0;
        for (std::size_t c = 0; c < free; ++c) sum += w[c];
        const std::int64_t last = -sum;
        bool canonical = false;
        for (std::size_t c = 0; c < free; ++c) {
            if (w[c] != 0) {
                canonical = w[c] > 0;
                break;
            }
            if (c + 1 == free) canonical = last > 0;
        }
        if (canonical && detail::abs64(last) <= bound) {
            for (std::size_t r = 0; r < p; ++r) mw[r] = partial[r] + m(r, q - 1) * last;
            WitnessInfo info;
            if (detail::summarize(info, mw) && (!best || info.ratio < best->ratio)) {
                w[q - 1] = last;
                info.w = w;
                info.mw = mw;
                info.l1 = 0;
                for (std::int64_t v : w) info.l1 += detail::abs64(v);
                best = std::move(info);
                if (best->ratio == lower_bound_ratio) return best;
            }
        }
        // Odometer step over the first q-1 coordinates, last one fastest.
        std::size_t c = free;
        while (c-- > 0) {
            if (w[c] < bound) {
                ++w[c];
                for (std::size_t r = 0; r < p; ++r) partial[r] += m(r, c);
                break;
            }
            for (std::size_t r = 0; r < p; ++r) partial[r] -= m(r, c) * (w[c] - (c == 0 ? 0 : -bound));
            w[c] = c == 0 ? 0 : -bound;
            if (c == 0) return best;
        }
    }
}

/// True if two rows of M differ by a multiple of the all-ones vector, in
/// which case no finite resolving set exists (for n >= 2).
inline bool has_parallel_rows(const IntMatrix& m) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = i + 1; j < m.rows(); ++j) {
            const std::int64_t d = m(i, 0) - m(j, 0);
            bool parallel = true;
            for (std::size_t c = 1; c < m.cols() && parallel; ++c) parallel = m(i, c) - m(j, c) == d;
            if (parallel) return true;
        }
    }
    return false;
}

/// Bounds on r(M). Exact p when statement3 succeeds; otherwise lower = p+1
/// and the upper bound comes from box searches of growing size 1, 2, 4, ...
/// up to `bound`, skipping boxes beyond `cap`.
inline RBound r_bound(const IntMatrix& m, std::int64_t bound, std::uint64_t cap = kDefaultBoxCap) {
    if (has_parallel_rows(m)) throw InvalidArgument("infinite metric dimension");
    const auto p = static_cast<std::int64_t>(m.rows());
    RBound out;
    if (auto s3 = statement3(m)) {
        out.exact = p;
        out.lower = out.upper = p;
        out.best = std::move(s3->info);
        return out;
    }
    out.lower = p + 1;
    std::vector<std::int64_t> schedule;
    for (std::int64_t b = 1; b < bound; b *= 2) schedule.push_back(b);
    if (bound >= 1) schedule.push_back(bound);
    for (std::int64_t b : schedule) {
        if (box_size(m.cols(), b) > cap) break;
        auto found = search_witness(m, b, cap);
        if (found && (!out.best || found->ratio < out.best->ratio)) out.best = std::move(found);
        if (out.best && out.best->r_w == out.lower) break;
    }
    if (!out.best) throw ResourceError("r_bound: no witness found within the search box");
    out.upper = out.best->r_w;
    if (out.upper == out.lower) out.exact = out.upper;
    return out;
}

/// A witness for building codes: an arithmetic-progression witness from
/// statement3 when one exists, otherwise the best one found by r_bound.
inline WitnessInfo default_witness(const IntMatrix& m, std::int64_t bound = 6, std::uint64_t cap = kDefaultBoxCap) {
    if (auto s3 = statement3(m)) return std::move(s3->info);
    return *r_bound(m, bound, cap).best;
}

}  // namespace resolvekit::witness
