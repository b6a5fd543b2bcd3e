#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace gv {

// Exact rational scalar used everywhere. No floating point in the engine.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rat: zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

// Parses "num", "num/den" or "-num/den". Used by all JSON readers.
inline Rat rat_from_string(const std::string& s) {
    Rat r;
    if (r.set_str(s, 10) != 0) throw std::invalid_argument("rat_from_string: bad rational '" + s + "'");
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rat& r) { return r.get_str(); }

inline Rat abs(const Rat& r) { return r < 0 ? Rat(-r) : r; }

// r^e for integer e (e < 0 requires r != 0).
inline Rat pow_rat(const Rat& r, long e) {
    if (e == 0) return Rat(1);
    if (r == 0) {
        if (e < 0) throw std::domain_error("pow_rat: 0 to negative power");
        return Rat(0);
    }
    Rat base = e > 0 ? r : Rat(1) / r;
    unsigned long k = static_cast<unsigned long>(e > 0 ? e : -e);
    Rat acc(1);
    while (k) {
        if (k & 1) acc *= base;
        base *= base;
        k >>= 1;
    }
    return acc;
}

inline Rat factorial(long n) {
    Rat acc(1);
    for (long i = 2; i <= n; ++i) acc *= i;
    return acc;
}

}  // namespace gv
