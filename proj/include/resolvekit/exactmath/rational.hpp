#pragma once

#include <compare>
#include <ostream>
#include <string>
#include <utility>

#include "resolvekit/exactmath/bigint.hpp"

namespace resolvekit::exactmath {

/// Exact rational number, always reduced with a positive denominator.
class Rat {
public:
    Rat() = default;
    Rat(BigInt n) : num_(std::move(n)) {}  // NOLINT(google-explicit-constructor)
    template <std::integral I>
    Rat(I n) : num_(n) {}  // NOLINT(google-explicit-constructor)
    Rat(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) {
        if (den_.is_zero()) throw InvalidArgument("zero denominator");
        reduce();
    }

    const BigInt& num() const noexcept { return num_; }
    const BigInt& den() const noexcept { return den_; }
    bool is_zero() const noexcept { return num_.is_zero(); }
    bool is_integer() const noexcept { return den_ == BigInt(1); }
    int sign() const noexcept { return num_.sign(); }

    Rat operator-() const { return from_reduced(-num_, den_); }

    friend Rat operator+(const Rat& a, const Rat& b) {
        if (a.is_integer() && b.is_integer()) return Rat(a.num_ + b.num_);
        if (a.den_ == b.den_) return Rat(a.num_ + b.num_, a.den_);
        return Rat(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }

    friend Rat operator-(const Rat& a, const Rat& b) { return a + (-b); }

    friend Rat operator*(const Rat& a, const Rat& b) {
        if (a.is_zero() || b.is_zero()) return Rat();
        if (a.is_integer() && b.is_integer()) return Rat(a.num_ * b.num_);
        // Cross-cancel first so intermediate products stay small.
        const BigInt g1 = gcd(a.num_, b.den_);
        const BigInt g2 = gcd(b.num_, a.den_);
        return from_reduced((a.num_ / g1) * (b.num_ / g2), (a.den_ / g2) * (b.den_ / g1));
    }

    friend Rat operator/(const Rat& a, const Rat& b) {
        if (b.is_zero()) throw InvalidArgument("division by zero");
        const Rat inv = b.num_.sign() < 0 ? from_reduced(-b.den_, -b.num_) : from_reduced(b.den_, b.num_);
        return a * inv;
    }

    Rat& operator+=(const Rat& o) { return *this = *this + o; }
    Rat& operator-=(const Rat& o) { return *this = *this - o; }
    Rat& operator*=(const Rat& o) { return *this = *this * o; }
    Rat& operator/=(const Rat& o) { return *this = *this / o; }

    friend bool operator==(const Rat& a, const Rat& b) noexcept { return a.num_ == b.num_ && a.den_ == b.den_; }

    friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
        if (a.den_ == b.den_) return a.num_ <=> b.num_;
        return a.num_ * b.den_ <=> b.num_ * a.den_;
    }

    std::string to_string() const {
        if (is_integer()) return num_.to_string();
        return num_.to_string() + "/" + den_.to_string();
    }

    friend std::ostream& operator<<(std::ostream& os, const Rat& v) { return os << v.to_string(); }

private:
    BigInt num_;
    BigInt den_{1};

    static Rat from_reduced(BigInt n, BigInt d) {
        Rat r;
        r.num_ = std::move(n);
        r.den_ = std::move(d);
        return r;
    }

    void reduce() {
        if (num_.is_zero()) {
            den_ = BigInt(1);
            return;
        }
        if (den_.sign() < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        const BigInt g = gcd(num_, den_);
        if (g != BigInt(1)) {
            num_ /= g;
            den_ /= g;
        }
    }
};

}  // namespace resolvekit::exactmath
