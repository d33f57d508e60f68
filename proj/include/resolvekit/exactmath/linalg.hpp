#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "resolvekit/errors.hpp"
#include "resolvekit/exactmath/matrix.hpp"

namespace resolvekit::exactmath {

/// Reduced row echelon form with the pivot column of each nonzero row.
struct Echelon {
    RatMatrix reduced;
    std::vector<std::size_t> pivot_cols;

    std::size_t rank() const noexcept { return pivot_cols.size(); }
};

/// Gauss-Jordan elimination. Pivots are chosen as the first nonzero entry
/// at or below the current row, so the result is fully deterministic.
inline Echelon rref(RatMatrix a) {
    Echelon out;
    std::size_t row = 0;
    for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
        std::size_t pivot = row;
        while (pivot < a.rows() && a(pivot, col).is_zero()) ++pivot;
        if (pivot == a.rows()) continue;
        if (pivot != row) {
            for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a(pivot, c), a(row, c));
        }
        if (a(row, col) != Rat(1)) {
            const Rat inv = Rat(1) / a(row, col);
            for (std::size_t c = col; c < a.cols(); ++c) {
                if (!a(row, c).is_zero()) a(row, c) *= inv;
            }
        }
        for (std::size_t r = 0; r < a.rows(); ++r) {
            if (r == row || a(r, col).is_zero()) continue;
            const Rat factor = a(r, col);
            for (std::size_t c = col; c < a.cols(); ++c) {
                if (!a(row, c).is_zero()) a(r, c) -= factor * a(row, c);
            }
        }
        out.pivot_cols.push_back(col);
        ++row;
    }
    out.reduced = std::move(a);
    return out;
}

inline std::size_t rank(const RatMatrix& a) { return rref(a).rank(); }

namespace detail {

// Fraction-free Bareiss elimination; every intermediate is a minor of the
// input. Returns false if an __int128 product overflows.
inline bool bareiss_int128(const IntMatrix& m, __int128& det) {
    const std::size_t n = m.rows();
    std::vector<__int128> a(m.data().begin(), m.data().end());
    auto at = [&](std::size_t r, std::size_t c) -> __int128& { return a[r * n + c]; };
    __int128 previous = 1;
    int sign = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        while (pivot < n && at(pivot, k) == 0) ++pivot;
        if (pivot == n) {
            det = 0;
            return true;
        }
        if (pivot != k) {
            for (std::size_t c = 0; c < n; ++c) std::swap(at(pivot, c), at(k, c));
            sign = -sign;
        }
        for (std::size_t r = k + 1; r < n; ++r) {
            for (std::size_t c = k + 1; c < n; ++c) {
                __int128 x = 0;
                __int128 y = 0;
                if (__builtin_mul_overflow(at(r, c), at(k, k), &x) || __builtin_mul_overflow(at(r, k), at(k, c), &y) ||
                    __builtin_sub_overflow(x, y, &x))
                    return false;
                at(r, c) = x / previous;
            }
            at(r, k) = 0;
        }
        previous = at(k, k);
    }
    det = sign * at(n - 1, n - 1);
    return true;
}

inline BigInt from_int128(__int128 v) {
    if (v >= INT64_MIN && v <= INT64_MAX) return BigInt(static_cast<std::int64_t>(v));
    const bool neg = v < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
    const BigInt low(static_cast<std::uint64_t>(u));
    const BigInt high(static_cast<std::uint64_t>(u >> 64));
    BigInt out = high * BigInt(std::uint64_t{1} << 32) * BigInt(std::uint64_t{1} << 32) + low;
    return neg ? -out : out;
}

}  // namespace detail

/// Exact determinant of a square integer matrix.
inline BigInt determinant(const IntMatrix& m) {
    if (!m.is_square()) throw InvalidArgument("determinant: matrix is not square");
    if (m.rows() == 0) return BigInt(1);
    __int128 det = 0;
    if (detail::bareiss_int128(m, det)) return detail::from_int128(det);
    // Rational fallback for entries too large for the fast path.
    RatMatrix a = to_rational(m);
    Rat product(1);
    for (std::size_t k = 0; k < a.rows(); ++k) {
        std::size_t pivot = k;
        while (pivot < a.rows() && a(pivot, k).is_zero()) ++pivot;
        if (pivot == a.rows()) return BigInt(0);
        if (pivot != k) {
            for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a(pivot, c), a(k, c));
            product = -product;
        }
        product *= a(k, k);
        for (std::size_t r = k + 1; r < a.rows(); ++r) {
            if (a(r, k).is_zero()) continue;
            const Rat factor = a(r, k) / a(k, k);
            for (std::size_t c = k; c < a.cols(); ++c) a(r, c) -= factor * a(k, c);
        }
    }
    return product.num();
}

/// Some x with A x = b, or nullopt when the system is inconsistent.
/// Free variables are set to zero.
inline std::optional<RatVector> solve(const RatMatrix& a, std::span<const Rat> b) {
    if (b.size() != a.rows()) throw InvalidArgument("solve: right-hand side length does not match row count");
    RatMatrix aug(a.rows(), a.cols() + 1);
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) aug(r, c) = a(r, c);
        aug(r, a.cols()) = b[r];
    }
    const Echelon e = rref(std::move(aug));
    if (!e.pivot_cols.empty() && e.pivot_cols.back() == a.cols()) return std::nullopt;
    RatVector x(a.cols());
    for (std::size_t i = 0; i < e.pivot_cols.size(); ++i) x[e.pivot_cols[i]] = e.reduced(i, a.cols());
    return x;
}

/// Scales a nonzero rational vector by a positive factor so that it becomes
/// an integer vector whose entries have gcd 1.
inline std::vector<BigInt> integerize(std::span<const Rat> v) {
    BigInt denominators(1);
    bool nonzero = false;
    for (const Rat& x : v) {
        if (x.is_zero()) continue;
        nonzero = true;
        denominators = lcm(denominators, x.den());
    }
    if (!nonzero) throw InvalidArgument("integerize: zero vector");
    std::vector<BigInt> out;
    out.reserve(v.size());
    BigInt content;
    for (const Rat& x : v) {
        out.push_back(x.num() * (denominators / x.den()));
        content = gcd(content, out.back());
    }
    for (BigInt& x : out) x /= content;
    return out;
}

/// Integer basis of { y : y^T A = 0 }, each vector integerized with its first
/// nonzero entry positive. Empty exactly when A has full row rank.
inline std::vector<RatVector> left_kernel(const RatMatrix& a) {
    const Echelon e = rref(a.transposed());
    std::vector<bool> is_pivot(a.rows(), false);
    for (std::size_t pc : e.pivot_cols) is_pivot[pc] = true;

    std::vector<RatVector> basis;
    for (std::size_t f = 0; f < a.rows(); ++f) {
        if (is_pivot[f]) continue;
        RatVector y(a.rows());
        y[f] = Rat(1);
        for (std::size_t i = 0; i < e.pivot_cols.size(); ++i) y[e.pivot_cols[i]] = -e.reduced(i, f);
        std::vector<BigInt> ints = integerize(y);
        int lead = 0;
        for (const BigInt& v : ints) {
            if (!v.is_zero()) {
                lead = v.sign();
                break;
            }
        }
        RatVector normalized;
        normalized.reserve(ints.size());
        for (BigInt& v : ints) normalized.emplace_back(lead < 0 ? -v : std::move(v));
        basis.push_back(std::move(normalized));
    }
    return basis;
}

inline bool is_invertible(const RatMatrix& a) {
    if (!a.is_square()) throw InvalidArgument("is_invertible: matrix is not square");
    return rank(a) == a.rows();
}

}  // namespace resolvekit::exactmath
