#pragma once

// Resolving sets for n-fold sums over an integer matrix M (the distance
// matrix of G for Cartesian powers G^n).
//
// Columns of the code are the pairs J = first n elements of
// {(j, k) : 0 <= k <= b(j)} in lexicographic order, where b(j) is the largest
// b with r^b |w|_1 <= 2^popcount(j). Row i of the code matrix S is one query.
// Each column satisfies, with mu the Mobius function of the bitwise order,
//
//   sum_{i <= j} mu(i, j) [S(i,j,k) = t] = r^k w_t                (3a)
//   sum_{i <= j} mu(i, j) [S(i,j',k) = t] = 0   for j' < j <= m   (3b)
//
// so the Mobius transform of the distance vector at row j0 isolates
// sum_k r^k (Mw)_{X(j0,k)}, a base-r number whose digits identify X(j0,k).

#include <algorithm>
#include <cstdint>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "resolvekit/errors.hpp"
#include "resolvekit/exactmath/matrix.hpp"
#include "resolvekit/mobius.hpp"
#include "resolvekit/witness.hpp"

namespace resolvekit::codec {

using exactmath::IntMatrix;
using exactmath::IntVector;
using witness::WitnessInfo;
using Word = std::vector<int>;
using Symbol = std::uint16_t;

struct Column {
    std::uint64_t j = 0;
    int k = 0;
    friend bool operator==(const Column&, const Column&) = default;
};

struct CodePlan {
    IntMatrix m;
    WitnessInfo info;
    std::int64_t r = 0;
    std::size_t n = 0;
    std::vector<Column> columns;   // J, in lexicographic order
    std::vector<int> b;            // b(j) for j = 0..max_j, negative when j has no column
    std::vector<std::size_t> first_column;  // columns of row j are [first_column[j], first_column[j+1])
    std::uint64_t max_j = 0;       // m

    std::size_t rows() const noexcept { return static_cast<std::size_t>(max_j) + 1; }
    std::size_t p() const noexcept { return m.rows(); }
    std::size_t q() const noexcept { return m.cols(); }

    /// r^k as used for column weights; fits int64 because r^k |w|_1 <= 2^63.
    std::int64_t radix_power(int k) const {
        std::int64_t v = 1;
        for (int i = 0; i < k; ++i) v *= r;
        return v;
    }
};

/// Largest b with r^b * l1 <= 2^bits, or -1 if l1 > 2^bits.
inline int digit_capacity(int bits, std::int64_t r, std::int64_t l1) {
    const unsigned __int128 limit = static_cast<unsigned __int128>(1) << bits;
    unsigned __int128 value = static_cast<unsigned __int128>(l1);
    int b = -1;
    while (value <= limit) {
        ++b;
        value *= static_cast<unsigned __int128>(r);
    }
    return b;
}

inline CodePlan plan(const IntMatrix& m, const WitnessInfo& info, std::int64_t r, std::size_t n) {
    if (n < 1) throw InvalidArgument("plan: n must be at least 1");
    if (info.w.size() != m.cols() || info.mw.size() != m.rows()) throw InvalidArgument("plan: witness does not match matrix");
    if (r <= info.ratio) throw InvalidArgument("radix too small");
    if (m.cols() > 65535) throw InvalidArgument("plan: too many column symbols");
    CodePlan out;
    out.m = m;
    out.info = info;
    out.r = r;
    out.n = n;
    for (std::uint64_t j = 0; out.columns.size() < n; ++j) {
        if (j >= (std::uint64_t{1} << 62)) throw ResourceError("plan: index overflow");
        const int bj = digit_capacity(mobius::popcount(j), r, info.l1);
        out.b.push_back(bj);
        out.first_column.push_back(out.columns.size());
        for (int k = 0; k <= bj && out.columns.size() < n; ++k) out.columns.push_back({j, k});
        out.max_j = j;
    }
    out.first_column.push_back(out.columns.size());
    return out;
}

/// The code matrix S, stored column by column.
class Code {
public:
    Code(CodePlan plan, std::vector<Symbol> symbols) : plan_(std::move(plan)), symbols_(std::move(symbols)) {
        if (symbols_.size() != plan_.columns.size() * plan_.rows()) throw InvalidArgument("code: symbol table has wrong size");
        for (Symbol s : symbols_)
            if (s >= plan_.q()) throw InvalidArgument("code: symbol out of range");
    }

    const CodePlan& plan() const noexcept { return plan_; }
    std::size_t rows() const noexcept { return plan_.rows(); }
    std::size_t columns() const noexcept { return plan_.columns.size(); }

    Symbol at(std::size_t row, std::size_t col) const { return symbols_[col * rows() + row]; }
    std::span<const Symbol> column(std::size_t col) const { return {symbols_.data() + col * rows(), rows()}; }
    const std::vector<Symbol>& symbols() const noexcept { return symbols_; }

    friend bool operator==(const Code& a, const Code& b) {
        return a.symbols_ == b.symbols_ && a.plan_.columns == b.plan_.columns && a.plan_.m == b.plan_.m &&
               a.plan_.info.w == b.plan_.info.w && a.plan_.r == b.plan_.r;
    }

private:
    CodePlan plan_;
    std::vector<Symbol> symbols_;
};

/// Greedy construction: for column (j, k), r^k w_t copies of symbol t go to
/// the mu = +1 slots below j when w_t > 0 and to the mu = -1 slots when
/// w_t < 0 (in increasing symbol and slot order); leftover slots get symbol
/// 0. Rows not below j copy S(i & j, j, k).
inline Code build(const CodePlan& plan) {
    const std::size_t rows = plan.rows();
    std::vector<Symbol> symbols(plan.columns.size() * rows, 0);
    std::vector<std::uint64_t> plus;
    std::vector<std::uint64_t> minus;
    for (std::size_t c = 0; c < plan.columns.size(); ++c) {
        const auto [j, k] = plan.columns[c];
        Symbol* col = symbols.data() + c * rows;
        plus.clear();
        minus.clear();
        mobius::for_each_submask(j, [&](std::uint64_t i) { (mobius::mu(i, j) > 0 ? plus : minus).push_back(i); });
        const std::int64_t weight = plan.radix_power(k);
        std::size_t next_plus = 0;
        std::size_t next_minus = 0;
        for (std::size_t t = 0; t < plan.q(); ++t) {
            const std::int64_t copies = weight * plan.info.w[t];
            for (std::int64_t x = 0; x < copies; ++x) col[plus[next_plus++]] = static_cast<Symbol>(t);
            for (std::int64_t x = 0; x < -copies; ++x) col[minus[next_minus++]] = static_cast<Symbol>(t);
        }
        for (std::uint64_t i = 0; i < rows; ++i) col[i] = col[i & j];
    }
    return Code(plan, std::move(symbols));
}

/// Exact check of (3a) for every column and (3b) for every column against
/// every larger row index.
inline bool verify_identities(const Code& code) {
    const CodePlan& plan = code.plan();
    std::vector<std::int64_t> counts(plan.q());
    for (std::size_t c = 0; c < code.columns(); ++c) {
        const auto [j, k] = plan.columns[c];
        const auto col = code.column(c);
        auto signed_counts = [&](std::uint64_t top) {
            std::fill(counts.begin(), counts.end(), 0);
            mobius::for_each_submask(top, [&](std::uint64_t i) { counts[col[i]] += mobius::mu(i, top); });
        };
        signed_counts(j);
        const std::int64_t weight = plan.radix_power(k);
        for (std::size_t t = 0; t < plan.q(); ++t)
            if (counts[t] != weight * plan.info.w[t]) return false;
        for (std::uint64_t top = j + 1; top <= plan.max_j; ++top) {
            signed_counts(top);
            for (std::int64_t v : counts)
                if (v != 0) return false;
        }
    }
    return true;
}

/// D_i = sum over columns of M[X(col)][S(i, col)].
inline IntVector encode(const Code& code, std::span<const int> word) {
    const CodePlan& plan = code.plan();
    if (word.size() != code.columns()) throw InvalidArgument("encode: word length does not match n");
    IntVector d(code.rows(), 0);
    for (std::size_t c = 0; c < code.columns(); ++c) {
        const int x = word[c];
        if (x < 0 || static_cast<std::size_t>(x) >= plan.p()) throw InvalidArgument("encode: symbol out of range");
        const auto col = code.column(c);
        const auto row = plan.m.row(static_cast<std::size_t>(x));
        for (std::size_t i = 0; i < code.rows(); ++i) d[i] += row[col[i]];
    }
    return d;
}

/// Recovers X from D = encode(X). Rows are processed from m down to 0; the
/// distances of already decoded columns are accumulated and subtracted, which
/// by linearity equals subtracting their bilinear contributions.
inline Word decode(const Code& code, std::span<const std::int64_t> d) {
    const CodePlan& plan = code.plan();
    const WitnessInfo& info = plan.info;
    if (d.size() != code.rows()) throw InvalidArgument("decode: distance vector length does not match row count");

    std::vector<int> row_of_label(static_cast<std::size_t>(info.ratio) + 1, -1);
    const IntVector labels = info.normalized();
    for (std::size_t x = 0; x < labels.size(); ++x) row_of_label[static_cast<std::size_t>(labels[x])] = static_cast<int>(x);

    Word word(code.columns(), 0);
    IntVector known(code.rows(), 0);
    auto fail = [] { throw InconsistentData("inconsistent distance vector"); };

    for (std::uint64_t j0 = plan.max_j + 1; j0-- > 0;) {
        __int128 t = 0;
        mobius::for_each_submask(j0, [&](std::uint64_t i) {
            const __int128 v = d[i] - known[i];
            t += mobius::mu(i, j0) > 0 ? v : -v;
        });
        const std::size_t begin = plan.first_column[j0];
        const std::size_t end = plan.first_column[j0 + 1];
        if (begin == end) {
            if (t != 0) fail();
            continue;
        }
        __int128 radix_sum = 0;
        __int128 power = 1;
        for (std::size_t c = begin; c < end; ++c) {
            radix_sum += power;
            power *= plan.r;
        }
        t -= radix_sum * info.min_mw;
        if (t < 0 || t % info.g != 0) fail();
        t /= info.g;
        for (std::size_t c = begin; c < end; ++c) {
            const auto digit = static_cast<std::int64_t>(t % plan.r);
            t /= plan.r;
            if (digit > info.ratio || row_of_label[static_cast<std::size_t>(digit)] < 0) fail();
            word[c] = row_of_label[static_cast<std::size_t>(digit)];
        }
        if (t != 0) fail();
        for (std::size_t c = begin; c < end; ++c) {
            const auto col = code.column(c);
            const auto row = plan.m.row(static_cast<std::size_t>(word[c]));
            for (std::size_t i = 0; i < code.rows(); ++i) known[i] += row[col[i]];
        }
    }
    // `known` is now encode(word); anything else means D had no preimage.
    for (std::size_t i = 0; i < code.rows(); ++i)
        if (known[i] != d[i]) fail();
    return word;
}

/// Row i of S as a query word in [q]^n, for i = 0..m.
inline std::vector<Word> row_queries(const Code& code) {
    std::vector<Word> out(code.rows(), Word(code.columns()));
    for (std::size_t c = 0; c < code.columns(); ++c) {
        const auto col = code.column(c);
        for (std::size_t i = 0; i < code.rows(); ++i) out[i][c] = col[i];
    }
    return out;
}

// Text dump:
//   p q n m r g
//   w_0 ... w_{q-1}
//   j k s_0 ... s_m        (one line per column, in J order)

struct CodeDump {
    std::size_t p = 0;
    std::size_t q = 0;
    std::size_t n = 0;
    std::uint64_t m = 0;
    std::int64_t r = 0;
    std::int64_t g = 0;
    IntVector w;
    std::vector<Column> columns;
    std::vector<std::vector<Symbol>> entries;

    friend bool operator==(const CodeDump&, const CodeDump&) = default;
};

inline CodeDump to_dump(const Code& code) {
    const CodePlan& plan = code.plan();
    CodeDump out{plan.p(), plan.q(), plan.n, plan.max_j, plan.r, plan.info.g, plan.info.w, plan.columns, {}};
    for (std::size_t c = 0; c < code.columns(); ++c) {
        const auto col = code.column(c);
        out.entries.emplace_back(col.begin(), col.end());
    }
    return out;
}

inline std::string format_dump(const CodeDump& dump) {
    std::ostringstream os;
    os << dump.p << ' ' << dump.q << ' ' << dump.n << ' ' << dump.m << ' ' << dump.r << ' ' << dump.g << '\n';
    for (std::size_t i = 0; i < dump.w.size(); ++i) os << (i ? " " : "") << dump.w[i];
    os << '\n';
    for (std::size_t c = 0; c < dump.columns.size(); ++c) {
        os << dump.columns[c].j << ' ' << dump.columns[c].k;
        for (Symbol s : dump.entries[c]) os << ' ' << s;
        os << '\n';
    }
    return os.str();
}

inline CodeDump parse_dump(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    auto next_line = [&]() -> std::istringstream {
        if (!std::getline(in, line)) throw ParseError("code dump ended early", line_no);
        ++line_no;
        return std::istringstream(line);
    };
    auto expect_end = [&](std::istringstream& ls) {
        std::string extra;
        if (ls >> extra) throw ParseError("unexpected token '" + extra + "' in code dump line", line_no);
    };

    CodeDump out;
    {
        auto ls = next_line();
        if (!(ls >> out.p >> out.q >> out.n >> out.m >> out.r >> out.g)) throw ParseError("bad code dump header", line_no);
        expect_end(ls);
    }
    {
        auto ls = next_line();
        out.w.resize(out.q);
        for (auto& v : out.w)
            if (!(ls >> v)) throw ParseError("bad witness line in code dump", line_no);
        expect_end(ls);
    }
    for (std::size_t c = 0; c < out.n; ++c) {
        auto ls = next_line();
        Column col;
        if (!(ls >> col.j >> col.k)) throw ParseError("bad column header in code dump", line_no);
        std::vector<Symbol> entries(out.m + 1);
        for (auto& s : entries) {
            unsigned v = 0;
            if (!(ls >> v) || v >= out.q) throw ParseError("bad symbol in code dump", line_no);
            s = static_cast<Symbol>(v);
        }
        expect_end(ls);
        out.columns.push_back(col);
        out.entries.push_back(std::move(entries));
    }
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") != std::string::npos) throw ParseError("trailing data after code dump", line_no);
    }
    return out;
}

/// Rebuilds a Code from a dump and the matrix it was built for; the plan is
/// recomputed and must agree with the dump.
inline Code from_dump(const CodeDump& dump, const IntMatrix& m) {
    if (dump.p != m.rows() || dump.q != m.cols()) throw InvalidArgument("code dump does not match matrix shape");
    const WitnessInfo info = witness::validate(m, dump.w);
    CodePlan p = plan(m, info, dump.r, dump.n);
    if (p.max_j != dump.m || info.g != dump.g || p.columns != dump.columns)
        throw InvalidArgument("code dump is inconsistent with its matrix and witness");
    std::vector<Symbol> symbols;
    symbols.reserve(p.columns.size() * p.rows());
    for (const auto& e : dump.entries) symbols.insert(symbols.end(), e.begin(), e.end());
    return Code(std::move(p), std::move(symbols));
}

}  // namespace resolvekit::codec
