#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "ghostvac/rat.hpp"

namespace gv {

// A half-integer nu in Z + 1/2, stored as twice its value (an odd integer).
// All mode indices of the fermion algebra live here.
struct HalfInt {
    std::int64_t twice = 1;  // 2*nu, odd

    HalfInt() = default;
    explicit HalfInt(std::int64_t twice_value) : twice(twice_value) {
        if ((twice % 2) == 0) throw std::invalid_argument("HalfInt: twice-value must be odd");
    }

    static HalfInt from_twice(std::int64_t t) { return HalfInt(t); }
    // n + 1/2
    static HalfInt half_more(std::int64_t n) { return HalfInt(2 * n + 1); }

    auto operator<=>(const HalfInt&) const = default;

    HalfInt operator-() const { return HalfInt(-twice); }
    HalfInt operator+(std::int64_t n) const { return HalfInt(twice + 2 * n); }
    HalfInt operator-(std::int64_t n) const { return HalfInt(twice - 2 * n); }

    bool positive() const { return twice > 0; }
    bool negative() const { return twice < 0; }

    // nu - 1/2, an integer.
    std::int64_t floor() const { return (twice - 1) / 2; }

    Rat value() const { return Rat(twice, 2); }
    std::string str() const { return std::to_string(twice) + "/2"; }
};

inline HalfInt operator+(const HalfInt& a, const HalfInt& b) = delete;  // sum of two half-ints is not a half-int

}  // namespace gv
