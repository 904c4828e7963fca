#pragma once

#include <charconv>
#include <compare>
#include <cstdint>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "tileasm/errors.hpp"

namespace tileasm {

/// Exact rational number over 64-bit integers, always kept in lowest terms
/// with a positive denominator. Intermediate products use 128-bit integers;
/// a result that does not fit back into 64 bits throws std::overflow_error
/// rather than wrapping.
class Rational {
public:
    using int_type = std::int64_t;

    constexpr Rational() = default;
    constexpr Rational(int_type n) : num_(n), den_(1) {}  // NOLINT(google-explicit-constructor)

    Rational(int_type n, int_type d) {
        if (d == 0) throw std::domain_error("Rational: zero denominator");
        assign(static_cast<wide>(n), static_cast<wide>(d));
    }

    constexpr int_type num() const noexcept { return num_; }
    constexpr int_type den() const noexcept { return den_; }

    constexpr bool is_integer() const noexcept { return den_ == 1; }
    constexpr bool is_zero() const noexcept { return num_ == 0; }
    constexpr int sign() const noexcept { return (num_ > 0) - (num_ < 0); }

    /// Largest integer not above the value.
    int_type floor() const noexcept {
        int_type q = num_ / den_;
        if (num_ % den_ != 0 && num_ < 0) --q;
        return q;
    }

    int_type ceil() const noexcept {
        int_type q = num_ / den_;
        if (num_ % den_ != 0 && num_ > 0) ++q;
        return q;
    }

    double to_double() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        if (a.den_ == b.den_) return from_wide(static_cast<wide>(a.num_) + b.num_, a.den_);
        return from_wide(static_cast<wide>(a.num_) * b.den_ + static_cast<wide>(b.num_) * a.den_,
                         static_cast<wide>(a.den_) * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        if (a.den_ == b.den_) return from_wide(static_cast<wide>(a.num_) - b.num_, a.den_);
        return from_wide(static_cast<wide>(a.num_) * b.den_ - static_cast<wide>(b.num_) * a.den_,
                         static_cast<wide>(a.den_) * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return from_wide(static_cast<wide>(a.num_) * b.num_, static_cast<wide>(a.den_) * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
        return from_wide(static_cast<wide>(a.num_) * b.den_, static_cast<wide>(a.den_) * b.num_);
    }
    Rational operator-() const { return from_wide(-static_cast<wide>(num_), den_); }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) noexcept {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) noexcept {
        return static_cast<wide>(a.num_) * b.den_ <=> static_cast<wide>(b.num_) * a.den_;
    }

    /// `n` or `n/d`.
    std::string str() const {
        return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
    }

    /// Parses `n` or `n/d` (optional leading sign on `n`). Throws InvalidInput.
    static Rational parse(std::string_view text) {
        auto read = [&](std::string_view part) {
            int_type value = 0;
            if (!part.empty() && part.front() == '+') part.remove_prefix(1);
            auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
            if (part.empty() || ec != std::errc() || ptr != part.data() + part.size())
                throw InvalidInput("not a rational number: '" + std::string(text) + "'");
            return value;
        };
        auto slash = text.find('/');
        if (slash == std::string_view::npos) return Rational(read(text));
        int_type d = read(text.substr(slash + 1));
        if (d == 0) throw InvalidInput("zero denominator in '" + std::string(text) + "'");
        return Rational(read(text.substr(0, slash)), d);
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    __extension__ typedef __int128 wide;

    static Rational from_wide(wide n, wide d) {
        Rational r;
        r.assign(n, d);
        return r;
    }

    void assign(wide n, wide d) {
        if (d < 0) {
            n = -n;
            d = -d;
        }
        wide g = gcd_wide(n < 0 ? -n : n, d);
        if (g > 1) {
            n /= g;
            d /= g;
        }
        constexpr wide lo = std::numeric_limits<int_type>::min();
        constexpr wide hi = std::numeric_limits<int_type>::max();
        if (n < lo || n > hi || d > hi) throw std::overflow_error("Rational: 64-bit overflow");
        num_ = static_cast<int_type>(n);
        den_ = static_cast<int_type>(d);
    }

    static wide gcd_wide(wide a, wide b) {
        while (b != 0) {
            wide t = a % b;
            a = b;
            b = t;
        }
        return a == 0 ? 1 : a;
    }

    int_type num_ = 0;
    int_type den_ = 1;
};

}  // namespace tileasm
