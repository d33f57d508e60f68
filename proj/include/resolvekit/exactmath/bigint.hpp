#pragma once

#include <algorithm>
#include <compare>
#include <concepts>
#include <cstdint>
#include <limits>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "resolvekit/errors.hpp"

namespace resolvekit::exactmath {

/// Arbitrary-precision signed integer.
///
/// Values that fit in an int64 are held inline and use overflow-checked
/// machine arithmetic; anything larger lives in a little-endian base-2^32
/// magnitude with a separate sign. The representation is kept normalized:
/// a value that fits in int64 is always stored inline, so zero has exactly
/// one representation.
class BigInt {
public:
    BigInt() = default;

    template <std::signed_integral I>
    BigInt(I v) : small_(static_cast<std::int64_t>(v)) {}  // NOLINT(google-explicit-constructor)

    template <std::unsigned_integral U>
    BigInt(U v) {  // NOLINT(google-explicit-constructor)
        const auto u = static_cast<std::uint64_t>(v);
        if (u <= static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
            small_ = static_cast<std::int64_t>(u);
        } else {
            *this = from_mag(false, mag_from_u64(u));
        }
    }

    static BigInt from_string(std::string_view text) {
        std::size_t pos = 0;
        bool neg = false;
        if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
            neg = text[pos] == '-';
            ++pos;
        }
        if (pos == text.size()) throw ParseError("empty integer literal", pos);
        Mag mag;
        for (; pos < text.size(); ++pos) {
            const char c = text[pos];
            if (c < '0' || c > '9') throw ParseError("bad digit in integer literal", pos);
            mag_mul_small_add(mag, 10, static_cast<std::uint32_t>(c - '0'));
        }
        return from_mag(neg, std::move(mag));
    }

    bool is_small() const noexcept { return limbs_.empty(); }
    bool is_zero() const noexcept { return is_small() && small_ == 0; }
    int sign() const noexcept {
        if (!is_small()) return neg_ ? -1 : 1;
        return (small_ > 0) - (small_ < 0);
    }
    bool fits_int64() const noexcept { return is_small(); }

    std::int64_t to_int64() const {
        if (!is_small()) throw ResourceError("integer does not fit in 64 bits");
        return small_;
    }

    std::string to_string() const {
        if (is_small()) return std::to_string(small_);
        Mag mag = limbs_;
        std::string digits;
        while (!mag.empty()) {
            std::uint32_t rem = mag_divmod_small(mag, 1000000000u);
            for (int i = 0; i < 9; ++i) {
                digits.push_back(static_cast<char>('0' + rem % 10));
                rem /= 10;
                if (mag.empty() && rem == 0) break;
            }
        }
        while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
        if (neg_) digits.push_back('-');
        std::reverse(digits.begin(), digits.end());
        return digits;
    }

    BigInt abs() const { return sign() < 0 ? -*this : *this; }

    BigInt operator-() const {
        if (is_small() && small_ != std::numeric_limits<std::int64_t>::min()) return BigInt(-small_);
        return from_mag(sign() > 0, magnitude());
    }

    friend BigInt operator+(const BigInt& a, const BigInt& b) {
        if (a.is_small() && b.is_small()) {
            std::int64_t out;
            if (!__builtin_add_overflow(a.small_, b.small_, &out)) return BigInt(out);
        }
        return add_signed(a.sign() < 0, a.magnitude(), b.sign() < 0, b.magnitude());
    }

    friend BigInt operator-(const BigInt& a, const BigInt& b) {
        if (a.is_small() && b.is_small()) {
            std::int64_t out;
            if (!__builtin_sub_overflow(a.small_, b.small_, &out)) return BigInt(out);
        }
        return add_signed(a.sign() < 0, a.magnitude(), !(b.sign() < 0) && !b.is_zero(), b.magnitude());
    }

    friend BigInt operator*(const BigInt& a, const BigInt& b) {
        if (a.is_small() && b.is_small()) {
            std::int64_t out;
            if (!__builtin_mul_overflow(a.small_, b.small_, &out)) return BigInt(out);
        }
        if (a.is_zero() || b.is_zero()) return BigInt();
        return from_mag((a.sign() < 0) != (b.sign() < 0), mag_mul(a.magnitude(), b.magnitude()));
    }

    /// Truncating division (quotient rounds toward zero, remainder takes the
    /// sign of the dividend), matching built-in integer semantics.
    static void divmod(const BigInt& a, const BigInt& b, BigInt& quot, BigInt& rem) {
        if (b.is_zero()) throw InvalidArgument("division by zero");
        if (a.is_small() && b.is_small() &&
            !(a.small_ == std::numeric_limits<std::int64_t>::min() && b.small_ == -1)) {
            quot = BigInt(a.small_ / b.small_);
            rem = BigInt(a.small_ % b.small_);
            return;
        }
        Mag q;
        Mag r;
        mag_divmod(a.magnitude(), b.magnitude(), q, r);
        quot = from_mag((a.sign() < 0) != (b.sign() < 0), std::move(q));
        rem = from_mag(a.sign() < 0, std::move(r));
    }

    friend BigInt operator/(const BigInt& a, const BigInt& b) {
        BigInt q, r;
        divmod(a, b, q, r);
        return q;
    }

    friend BigInt operator%(const BigInt& a, const BigInt& b) {
        BigInt q, r;
        divmod(a, b, q, r);
        return r;
    }

    BigInt& operator+=(const BigInt& o) { return *this = *this + o; }
    BigInt& operator-=(const BigInt& o) { return *this = *this - o; }
    BigInt& operator*=(const BigInt& o) { return *this = *this * o; }
    BigInt& operator/=(const BigInt& o) { return *this = *this / o; }
    BigInt& operator%=(const BigInt& o) { return *this = *this % o; }

    friend bool operator==(const BigInt& a, const BigInt& b) noexcept {
        if (a.is_small() != b.is_small()) return false;
        if (a.is_small()) return a.small_ == b.small_;
        return a.neg_ == b.neg_ && a.limbs_ == b.limbs_;
    }

    friend std::strong_ordering operator<=>(const BigInt& a, const BigInt& b) {
        if (a.is_small() && b.is_small()) return a.small_ <=> b.small_;
        const int sa = a.sign();
        const int sb = b.sign();
        if (sa != sb) return sa <=> sb;
        const int c = mag_cmp(a.magnitude(), b.magnitude());
        const int oriented = sa < 0 ? -c : c;
        return oriented <=> 0;
    }

    friend BigInt gcd(BigInt a, BigInt b) {
        a = a.abs();
        b = b.abs();
        while (!b.is_zero()) {
            if (a.is_small() && b.is_small()) {
                auto x = static_cast<std::uint64_t>(a.small_);
                auto y = static_cast<std::uint64_t>(b.small_);
                while (y != 0) {
                    const auto t = x % y;
                    x = y;
                    y = t;
                }
                return BigInt(x);
            }
            BigInt r = a % b;
            a = std::move(b);
            b = std::move(r);
        }
        return a;
    }

    BigInt pow(unsigned exponent) const {
        BigInt result(1);
        BigInt base = *this;
        while (exponent != 0) {
            if (exponent & 1u) result *= base;
            exponent >>= 1;
            if (exponent != 0) base *= base;
        }
        return result;
    }

    friend std::ostream& operator<<(std::ostream& os, const BigInt& v) { return os << v.to_string(); }

private:
    using Mag = std::vector<std::uint32_t>;

    std::int64_t small_ = 0;
    bool neg_ = false;
    Mag limbs_;

    static Mag mag_from_u64(std::uint64_t u) {
        Mag m;
        while (u != 0) {
            m.push_back(static_cast<std::uint32_t>(u));
            u >>= 32;
        }
        return m;
    }

    Mag magnitude() const {
        if (!is_small()) return limbs_;
        const std::uint64_t u = small_ < 0 ? ~static_cast<std::uint64_t>(small_) + 1 : static_cast<std::uint64_t>(small_);
        return mag_from_u64(u);
    }

    static void trim(Mag& m) {
        while (!m.empty() && m.back() == 0) m.pop_back();
    }

    static BigInt from_mag(bool neg, Mag m) {
        trim(m);
        BigInt out;
        if (m.size() <= 2) {
            std::uint64_t u = 0;
            if (!m.empty()) u = m[0];
            if (m.size() == 2) u |= static_cast<std::uint64_t>(m[1]) << 32;
            constexpr auto kMax = static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max());
            if (u <= kMax) {
                out.small_ = neg ? -static_cast<std::int64_t>(u) : static_cast<std::int64_t>(u);
                return out;
            }
            if (neg && u == kMax + 1) {
                out.small_ = std::numeric_limits<std::int64_t>::min();
                return out;
            }
        }
        out.neg_ = neg;
        out.limbs_ = std::move(m);
        return out;
    }

    static int mag_cmp(const Mag& a, const Mag& b) {
        if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
        for (std::size_t i = a.size(); i-- > 0;) {
            if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
        }
        return 0;
    }

    static Mag mag_add(const Mag& a, const Mag& b) {
        const Mag& lo = a.size() < b.size() ? a : b;
        const Mag& hi = a.size() < b.size() ? b : a;
        Mag out(hi.size() + 1, 0);
        std::uint64_t carry = 0;
        for (std::size_t i = 0; i < hi.size(); ++i) {
            carry += static_cast<std::uint64_t>(hi[i]) + (i < lo.size() ? lo[i] : 0u);
            out[i] = static_cast<std::uint32_t>(carry);
            carry >>= 32;
        }
        out[hi.size()] = static_cast<std::uint32_t>(carry);
        trim(out);
        return out;
    }

    // Requires a >= b.
    static Mag mag_sub(const Mag& a, const Mag& b) {
        Mag out(a.size(), 0);
        std::int64_t borrow = 0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            std::int64_t d = static_cast<std::int64_t>(a[i]) - borrow - (i < b.size() ? static_cast<std::int64_t>(b[i]) : 0);
            borrow = d < 0 ? 1 : 0;
            if (d < 0) d += (std::int64_t{1} << 32);
            out[i] = static_cast<std::uint32_t>(d);
        }
        trim(out);
        return out;
    }

    static Mag mag_mul(const Mag& a, const Mag& b) {
        Mag out(a.size() + b.size(), 0);
        for (std::size_t i = 0; i < a.size(); ++i) {
            std::uint64_t carry = 0;
            for (std::size_t j = 0; j < b.size(); ++j) {
                const std::uint64_t cur = static_cast<std::uint64_t>(a[i]) * b[j] + out[i + j] + carry;
                out[i + j] = static_cast<std::uint32_t>(cur);
                carry = cur >> 32;
            }
            std::size_t k = i + b.size();
            while (carry != 0) {
                const std::uint64_t cur = static_cast<std::uint64_t>(out[k]) + carry;
                out[k] = static_cast<std::uint32_t>(cur);
                carry = cur >> 32;
                ++k;
            }
        }
        trim(out);
        return out;
    }

    static void mag_mul_small_add(Mag& m, std::uint32_t mul, std::uint32_t add) {
        std::uint64_t carry = add;
        for (auto& limb : m) {
            const std::uint64_t cur = static_cast<std::uint64_t>(limb) * mul + carry;
            limb = static_cast<std::uint32_t>(cur);
            carry = cur >> 32;
        }
        if (carry != 0) m.push_back(static_cast<std::uint32_t>(carry));
    }

    // Divides m in place, returns the remainder.
    static std::uint32_t mag_divmod_small(Mag& m, std::uint32_t d) {
        std::uint64_t rem = 0;
        for (std::size_t i = m.size(); i-- > 0;) {
            const std::uint64_t cur = (rem << 32) | m[i];
            m[i] = static_cast<std::uint32_t>(cur / d);
            rem = cur % d;
        }
        trim(m);
        return static_cast<std::uint32_t>(rem);
    }

    static void mag_divmod(const Mag& a, const Mag& b, Mag& q, Mag& r) {
        if (b.size() == 1) {
            q = a;
            const std::uint32_t rem = mag_divmod_small(q, b[0]);
            r = rem == 0 ? Mag{} : Mag{rem};
            return;
        }
        q.assign(a.size(), 0);
        r.clear();
        if (mag_cmp(a, b) < 0) {
            q.clear();
            r = a;
            return;
        }
        // Shift-subtract long division; multi-limb divisors are rare here.
        for (std::size_t bit = a.size() * 32; bit-- > 0;) {
            std::uint32_t carry = (a[bit / 32] >> (bit % 32)) & 1u;
            for (auto& limb : r) {
                const std::uint32_t next = limb >> 31;
                limb = (limb << 1) | carry;
                carry = next;
            }
            if (carry != 0) r.push_back(carry);
            if (mag_cmp(r, b) >= 0) {
                r = mag_sub(r, b);
                q[bit / 32] |= 1u << (bit % 32);
            }
        }
        trim(q);
        trim(r);
    }

    static BigInt add_signed(bool neg_a, const Mag& a, bool neg_b, const Mag& b) {
        if (neg_a == neg_b) return from_mag(neg_a, mag_add(a, b));
        const int c = mag_cmp(a, b);
        if (c == 0) return BigInt();
        if (c > 0) return from_mag(neg_a, mag_sub(a, b));
        return from_mag(neg_b, mag_sub(b, a));
    }
};

inline BigInt lcm(const BigInt& a, const BigInt& b) {
    if (a.is_zero() || b.is_zero()) return BigInt();
    return (a / gcd(a, b) * b).abs();
}

}  // namespace resolvekit::exactmath
