#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hubbard {

/// Exact rational number p/q with q > 0, always stored reduced.
class Rational {
public:
    constexpr Rational() = default;
    constexpr Rational(std::int64_t n) : num_(n), den_(1) {}
    Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) {
        if (d == 0)
            throw std::domain_error("zero denominator");
        normalize();
    }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    Rational operator-() const { return Rational(-num_, den_); }

    friend Rational operator+(Rational a, Rational b) {
        std::int64_t g = std::gcd(a.den_, b.den_);
        return Rational(a.num_ * (b.den_ / g) + b.num_ * (a.den_ / g), a.den_ / g * b.den_);
    }
    friend Rational operator-(Rational a, Rational b) { return a + (-b); }
    friend Rational operator*(Rational a, Rational b) {
        std::int64_t g1 = std::gcd(a.num_, b.den_), g2 = std::gcd(b.num_, a.den_);
        if (g1 == 0) g1 = 1;
        if (g2 == 0) g2 = 1;
        return Rational((a.num_ / g1) * (b.num_ / g2), (a.den_ / g2) * (b.den_ / g1));
    }
    friend Rational operator/(Rational a, Rational b) {
        if (b.num_ == 0)
            throw std::domain_error("division by zero");
        return a * Rational(b.den_, b.num_);
    }

    Rational &operator+=(Rational o) { return *this = *this + o; }
    Rational &operator-=(Rational o) { return *this = *this - o; }

    friend bool operator==(const Rational &, const Rational &) = default;
    friend std::strong_ordering operator<=>(const Rational &a, const Rational &b) {
        // Denominators stay small in this domain; 128-bit cross products are exact.
        __int128 l = static_cast<__int128>(a.num_) * b.den_;
        __int128 r = static_cast<__int128>(b.num_) * a.den_;
        return l <=> r;
    }

    /// Largest integer <= value.
    std::int64_t floor() const {
        std::int64_t q = num_ / den_;
        if (num_ % den_ != 0 && num_ < 0)
            --q;
        return q;
    }

    bool is_integer() const { return den_ == 1; }

    std::string str() const {
        return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
    }

private:
    void normalize() {
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        std::int64_t g = std::gcd(num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

inline std::ostream &operator<<(std::ostream &os, const Rational &r) { return os << r.str(); }

/// An angle measured in full turns, taken modulo 1 and kept in [0, 1).
class Angle {
public:
    Angle() = default;
    Angle(Rational r) : value_(wrap(r)) {}
    Angle(std::int64_t n, std::int64_t d) : value_(wrap(Rational(n, d))) {}

    const Rational &value() const { return value_; }
    bool is_zero() const { return value_.num() == 0; }

    friend Angle operator+(Angle a, Angle b) { return Angle(a.value_ + b.value_); }
    friend Angle operator-(Angle a, Angle b) { return Angle(a.value_ - b.value_); }
    friend Angle operator*(std::int64_t k, Angle a) { return Angle(Rational(k) * a.value_); }

    /// True when the angle is an integer multiple of 1/q.
    bool multiple_of_inverse(std::int64_t q) const { return (value_ * Rational(q)).is_integer(); }

    friend bool operator==(const Angle &, const Angle &) = default;
    friend auto operator<=>(const Angle &a, const Angle &b) { return a.value_ <=> b.value_; }

    std::string str() const { return value_.str(); }

    /// Parses "p/q" or "p". Rejects unreduced fractions and values outside [0, 1].
    /// A gap of exactly 1 is accepted since a single germ spans the full turn.
    static Rational parse_gap(std::string_view text);

private:
    static Rational wrap(Rational r) { return r - Rational(r.floor()); }

    Rational value_;
};

inline std::ostream &operator<<(std::ostream &os, const Angle &a) { return os << a.str(); }

} // namespace hubbard
