#pragma once

// Brute-force oracles and reproductions: resolving-set checks, minimum
// resolving sets of small powers, the counting lower bound on the size of a
// resolving set, the census of graphs with r(G) > q, and the exhaustive
// arithmetic-progression test on a box of witnesses.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "resolvekit/errors.hpp"
#include "resolvekit/exactmath/bigint.hpp"
#include "resolvekit/exactmath/matrix.hpp"
#include "resolvekit/graphs/distance.hpp"
#include "resolvekit/graphs/graph.hpp"
#include "resolvekit/graphs/graph6.hpp"
#include "resolvekit/witness.hpp"

namespace resolvekit::analysis {

using exactmath::BigInt;
using exactmath::IntMatrix;
using exactmath::IntVector;
using Word = std::vector<int>;

inline constexpr std::uint64_t kDefaultWordCap = std::uint64_t{1} << 20;
inline constexpr std::uint64_t kDefaultSubsetCap = std::uint64_t{1} << 24;

namespace detail {

struct VectorHash {
    std::size_t operator()(const IntVector& v) const noexcept {
        std::uint64_t h = 1469598103934665603ull;
        for (std::int64_t x : v) {
            h ^= static_cast<std::uint64_t>(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
        return static_cast<std::size_t>(h);
    }
};

inline std::uint64_t checked_power(std::uint64_t base, std::size_t exp, std::uint64_t cap, const char* what) {
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < exp; ++i) {
        if (base != 0 && total > cap / base) throw ResourceError(std::string(what) + ": enumeration exceeds cap");
        total *= base;
    }
    if (total > cap) throw ResourceError(std::string(what) + ": enumeration exceeds cap");
    return total;
}

// Advances an odometer over [0, base)^len; returns false after the last word.
inline bool next_word(Word& x, int base) {
    for (std::size_t i = x.size(); i-- > 0;) {
        if (++x[i] < base) return true;
        x[i] = 0;
    }
    return false;
}

}  // namespace detail

/// True iff X -> (sum_i M[X_i][s_i])_{s in queries} is injective on [p]^n.
inline bool is_resolving(const IntMatrix& m, const std::vector<Word>& queries, std::size_t n,
                         std::uint64_t cap = kDefaultWordCap) {
    for (const Word& s : queries) {
        if (s.size() != n) throw InvalidArgument("is_resolving: query length does not match n");
        for (int v : s)
            if (v < 0 || static_cast<std::size_t>(v) >= m.cols()) throw InvalidArgument("is_resolving: query symbol out of range");
    }
    const std::uint64_t total = detail::checked_power(m.rows(), n, cap, "is_resolving");
    std::unordered_set<IntVector, detail::VectorHash> seen;
    seen.reserve(static_cast<std::size_t>(total));
    Word x(n, 0);
    IntVector image(queries.size());
    do {
        for (std::size_t s = 0; s < queries.size(); ++s) {
            std::int64_t acc = 0;
            for (std::size_t i = 0; i < n; ++i) acc += m(static_cast<std::size_t>(x[i]), static_cast<std::size_t>(queries[s][i]));
            image[s] = acc;
        }
        if (!seen.insert(image).second) return false;
    } while (detail::next_word(x, static_cast<int>(m.rows())));
    return true;
}

/// Size of a smallest resolving subset of [q]^n, by exhaustive search over
/// subsets of increasing size.
inline std::size_t min_resolving(const IntMatrix& m, std::size_t n, std::uint64_t cap = kDefaultSubsetCap) {
    const int p = static_cast<int>(m.rows());
    const int q = static_cast<int>(m.cols());
    const auto targets = static_cast<std::size_t>(detail::checked_power(p, n, kDefaultWordCap, "min_resolving"));
    const auto words = static_cast<std::size_t>(detail::checked_power(q, n, 64, "min_resolving"));

    // dist[s][x]: distance between target word x and query word s.
    std::vector<std::vector<std::int64_t>> dist(words, std::vector<std::int64_t>(targets, 0));
    {
        Word s(n, 0);
        for (std::size_t si = 0; si < words; ++si, detail::next_word(s, q)) {
            Word x(n, 0);
            for (std::size_t xi = 0; xi < targets; ++xi, detail::next_word(x, p)) {
                for (std::size_t i = 0; i < n; ++i) dist[si][xi] += m(x[i], s[i]);
            }
        }
    }
    auto resolves = [&](const std::vector<std::size_t>& subset) {
        std::unordered_set<IntVector, detail::VectorHash> seen;
        IntVector image(subset.size());
        for (std::size_t xi = 0; xi < targets; ++xi) {
            for (std::size_t k = 0; k < subset.size(); ++k) image[k] = dist[subset[k]][xi];
            if (!seen.insert(image).second) return false;
        }
        return true;
    };

    std::vector<std::size_t> everything(words);
    std::iota(everything.begin(), everything.end(), 0);
    if (!resolves(everything)) throw InvalidArgument("infinite metric dimension");
    if (targets <= 1) return 0;

    std::uint64_t examined = 0;
    for (std::size_t size = 1; size <= words; ++size) {
        std::vector<std::size_t> subset(size);
        std::iota(subset.begin(), subset.end(), 0);
        while (true) {
            if (++examined > cap) throw ResourceError("min_resolving: subset enumeration exceeds cap");
            if (resolves(subset)) return size;
            std::size_t i = size;
            while (i-- > 0 && subset[i] == words - size + i) {}
            if (i == static_cast<std::size_t>(-1)) break;
            ++subset[i];
            for (std::size_t k = i + 1; k < size; ++k) subset[k] = subset[k - 1] + 1;
        }
    }
    return words;
}

/// floor(2(2q - 1) / 3), the metric dimension of K_q x K_q.
inline std::int64_t caceres_formula(std::int64_t q) {
    if (q < 2) throw InvalidArgument("caceres_formula: q must be at least 2");
    return 2 * (2 * q - 1) / 3;
}

/// An integer s >= sqrt(n ln n); slightly generous so the bound stays valid
/// under floating-point rounding.
inline std::int64_t sqrt_n_log_n_ceiling(std::int64_t n) {
    const long double x = static_cast<long double>(n) * std::log(static_cast<long double>(n));
    return static_cast<std::int64_t>(std::floor(std::sqrt(x) + 1e-9L)) + 1;
}

/// Smallest m >= 1 with (2 s diam + 1)^m >= q^n (1 - 2m / n^2), where
/// s >= sqrt(n ln n). Any resolving set of a power G^n with q vertices and
/// diameter diam has at least this many elements.
inline std::int64_t lower_bound(std::int64_t q, std::int64_t diam, std::int64_t n) {
    if (q < 2 || diam < 1 || n < 2) throw InvalidArgument("lower_bound: needs q >= 2, diam >= 1, n >= 2");
    const std::int64_t side = 2 * sqrt_n_log_n_ceiling(n) * diam + 1;
    const BigInt n2 = BigInt(n) * BigInt(n);
    const BigInt qn = BigInt(q).pow(static_cast<unsigned>(n));
    BigInt lhs(side);
    for (std::int64_t m = 1;; ++m) {
        // side^m * n^2 >= q^n * (n^2 - 2m)
        const BigInt slack = n2 - BigInt(2 * m);
        if (slack.sign() <= 0 || lhs * n2 >= qn * slack) return m;
        lhs *= BigInt(side);
    }
}

/// True iff no zero-sum w with entries in [-bound, bound] makes sorted Mw an
/// arithmetic progression with nonzero difference. Scans the whole box.
inline bool appendix_oracle(const IntMatrix& m, std::int64_t bound, std::uint64_t cap = witness::kDefaultBoxCap) {
    const std::size_t p = m.rows();
    const std::size_t q = m.cols();
    if (bound < 1) throw InvalidArgument("appendix_oracle: bound must be at least 1");
    if (p < 2 || q < 2) throw InvalidArgument("appendix_oracle: matrix too small");
    const auto side = static_cast<int>(2 * bound + 1);
    detail::checked_power(static_cast<std::uint64_t>(side), q - 1, cap, "appendix_oracle");
    Word digits(q - 1, 0);
    IntVector w(q);
    IntVector mw(p);
    do {
        std::int64_t sum = 0;
        for (std::size_t i = 0; i + 1 < q; ++i) {
            w[i] = digits[i] - bound;
            sum += w[i];
        }
        w[q - 1] = -sum;
        if (w[q - 1] < -bound || w[q - 1] > bound) continue;
        for (std::size_t r = 0; r < p; ++r) {
            std::int64_t acc = 0;
            for (std::size_t c = 0; c < q; ++c) acc += m(r, c) * w[c];
            mw[r] = acc;
        }
        std::sort(mw.begin(), mw.end());
        const std::int64_t diff = mw[1] - mw[0];
        if (diff == 0) continue;
        bool progression = true;
        for (std::size_t i = 2; i < p && progression; ++i) progression = mw[i] - mw[i - 1] == diff;
        if (progression) return false;
    } while (detail::next_word(digits, side));
    return true;
}

/// Brute-force canonical form: the smallest graph6-order adjacency code over
/// all q! relabelings. Only meant for the handful of graphs a census flags.
inline std::uint64_t brute_force_canonical(const graphs::Graph& g) {
    const int q = g.order();
    if (q > 11) throw InvalidArgument("brute_force_canonical supports at most 11 vertices");
    std::vector<int> perm(q);
    std::iota(perm.begin(), perm.end(), 0);
    std::uint64_t best = UINT64_MAX;
    do {
        // perm[label] = original vertex
        std::uint64_t code = 0;
        for (int j = 1; j < q; ++j)
            for (int i = 0; i < j; ++i) code = (code << 1) | (g.adjacent(perm[i], perm[j]) ? 1u : 0u);
        best = std::min(best, code);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

struct CensusRecord {
    std::size_t index = 0;
    int q = 0;
    std::string graph6;
    bool flagged = false;
    std::optional<IntVector> witness;   // from statement3 when not flagged
    std::int64_t r_lower = 0;
    std::optional<std::int64_t> r_upper;
    std::uint64_t class_code = 0;       // brute-force canonical code, flagged graphs only
};

struct CensusSummary {
    int q = 0;
    std::size_t scanned = 0;
    std::size_t flagged = 0;
    std::size_t flagged_classes = 0;
};

struct SearchReport {
    std::vector<CensusRecord> records;
    std::vector<CensusSummary> summaries;  // ascending q
    std::size_t skipped_disconnected = 0;

    const CensusSummary* summary(int q) const {
        for (const auto& s : summaries)
            if (s.q == q) return &s;
        return nullptr;
    }
};

struct CensusOptions {
    bool keep_all_records = false;   // otherwise only flagged graphs are recorded
    std::int64_t box = 3;            // witness search box for upper bounds on r
    std::uint64_t cap = witness::kDefaultBoxCap;
};

/// Streaming census: feed graphs in input order with add(), then report().
class Census {
public:
    explicit Census(CensusOptions options = {}) : options_(options) {}

    void add(const graphs::Graph& g, std::size_t index) {
        if (g.order() < 2 || !g.connected()) {
            ++report_.skipped_disconnected;
            return;
        }
        const auto dist = graphs::distance_matrix(g);
        Tally& tally = tallies_[g.order()];
        ++tally.scanned;
        // The witness itself is only needed when unflagged graphs are recorded.
        if (!options_.keep_all_records && witness::statement3_permutation(dist.m)) return;
        auto s3 = witness::statement3(dist.m);

        CensusRecord rec;
        rec.index = index;
        rec.q = g.order();
        rec.graph6 = graphs::to_graph6(g);
        rec.flagged = !s3;
        if (s3) {
            rec.witness = s3->info.w;
            rec.r_lower = rec.q;
            rec.r_upper = rec.q;
        } else {
            ++tally.flagged;
            rec.class_code = brute_force_canonical(g);
            auto [it, inserted] = tally.classes.try_emplace(rec.class_code);
            if (inserted) it->second = upper_bound_for(dist.m);
            rec.r_lower = rec.q + 1;
            rec.r_upper = it->second;
        }
        report_.records.push_back(std::move(rec));
    }

    SearchReport report() const {
        SearchReport out = report_;
        for (const auto& [q, tally] : tallies_) out.summaries.push_back({q, tally.scanned, tally.flagged, tally.classes.size()});
        return out;
    }

private:
    struct Tally {
        std::size_t scanned = 0;
        std::size_t flagged = 0;
        std::map<std::uint64_t, std::optional<std::int64_t>> classes;
    };

    CensusOptions options_;
    SearchReport report_;
    std::map<int, Tally> tallies_;

    std::optional<std::int64_t> upper_bound_for(const IntMatrix& m) const {
        try {
            return witness::r_bound(m, options_.box, options_.cap).upper;
        } catch (const ResourceError&) {
            return std::nullopt;
        }
    }
};

template <typename Range>
SearchReport corpus_census(const Range& graphs, CensusOptions options = {}) {
    Census census(options);
    std::size_t index = 0;
    for (const auto& g : graphs) census.add(g, index++);
    return census.report();
}

/// One line per flagged graph "index q graph6 r_lower r_upper" ('-' when no
/// upper bound was found), then "q=<q> scanned=<N> flagged_classes=<k>".
inline std::string format_census(const SearchReport& report) {
    std::ostringstream os;
    for (const auto& rec : report.records) {
        if (!rec.flagged) continue;
        os << rec.index << ' ' << rec.q << ' ' << rec.graph6 << ' ' << rec.r_lower << ' ';
        if (rec.r_upper) {
            os << *rec.r_upper;
        } else {
            os << '-';
        }
        os << '\n';
    }
    for (const auto& s : report.summaries)
        os << "q=" << s.q << " scanned=" << s.scanned << " flagged_classes=" << s.flagged_classes << '\n';
    return os.str();
}

}  // namespace resolvekit::analysis
