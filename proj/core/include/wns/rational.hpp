#pragma once

#include <array>
#include <cstdint>
#include <numeric>
#include <stdexcept>

namespace wns {

/// Small exact rational on int64; enough for the direction-set algebra where
/// all numerators and denominators stay tiny.
struct Rat {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rat() = default;
    Rat(std::int64_t n) : num(n), den(1) {}
    Rat(std::int64_t n, std::int64_t d) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den == 0) throw std::domain_error("Rat: zero denominator");
        if (den < 0) { num = -num; den = -den; }
        const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
    }

    friend Rat operator+(Rat a, Rat b) { return Rat(a.num * b.den + b.num * a.den, a.den * b.den); }
    friend Rat operator-(Rat a, Rat b) { return Rat(a.num * b.den - b.num * a.den, a.den * b.den); }
    friend Rat operator*(Rat a, Rat b) { return Rat(a.num * b.num, a.den * b.den); }
    friend Rat operator/(Rat a, Rat b) { return Rat(a.num * b.den, a.den * b.num); }
    friend Rat operator-(Rat a) { return Rat(-a.num, a.den); }
    friend bool operator==(Rat a, Rat b) { return a.num == b.num && a.den == b.den; }
    friend bool operator!=(Rat a, Rat b) { return !(a == b); }
    bool is_zero() const { return num == 0; }
    bool is_integer() const { return den == 1; }
    double to_double() const { return double(num) / double(den); }
};

using RatVec3 = std::array<Rat, 3>;

inline Rat dot(const RatVec3& a, const RatVec3& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline RatVec3 cross(const RatVec3& a, const RatVec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

}  // namespace wns
