#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "ghostvac/rat.hpp"

namespace gv {

// Raised whenever a result would depend on coefficients at or above a
// truncation bound. Callers escalate the working order and retry.
struct TruncationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Truncated formal Laurent series with exact rational coefficients.
//
// Coefficients at exponents >= trunc are unknown; everything stored is exact.
// An exactly known series (e.g. a polynomial built from literals) carries
// trunc = kExact. Every operation propagates the tightest provable trunc and
// never fabricates a coefficient it cannot certify.
class LaurentSeries {
  public:
    static constexpr std::int64_t kExact = std::numeric_limits<std::int64_t>::max();

    LaurentSeries() : trunc_(kExact) {}
    explicit LaurentSeries(std::int64_t trunc) : trunc_(trunc) {}
    LaurentSeries(std::map<std::int64_t, Rat> coeffs, std::int64_t trunc);

    static LaurentSeries zero(std::int64_t trunc = kExact) { return LaurentSeries(trunc); }
    static LaurentSeries constant(const Rat& c, std::int64_t trunc = kExact);
    static LaurentSeries monomial(const Rat& c, std::int64_t exp, std::int64_t trunc = kExact);
    static LaurentSeries identity(std::int64_t trunc = kExact) { return monomial(Rat(1), 1, trunc); }

    std::int64_t trunc() const { return trunc_; }
    bool exactly_known() const { return trunc_ == kExact; }
    // Minimum stored exponent; for an (apparently) zero series returns trunc.
    std::int64_t ord() const { return coeffs_.empty() ? trunc_ : coeffs_.begin()->first; }
    bool known_zero() const { return coeffs_.empty() && exactly_known(); }
    bool zero_below_trunc() const { return coeffs_.empty(); }

    const std::map<std::int64_t, Rat>& coeffs() const { return coeffs_; }

    // Exact coefficient access; throws TruncationError at or above trunc.
    Rat coeff(std::int64_t exp) const;
    // Coefficient if stored, else zero -- no truncation check (internal use).
    Rat coeff_or_zero(std::int64_t exp) const;

    LaurentSeries truncated(std::int64_t new_trunc) const;

    LaurentSeries operator-() const;
    LaurentSeries operator+(const LaurentSeries& o) const;
    LaurentSeries operator-(const LaurentSeries& o) const;
    LaurentSeries operator*(const LaurentSeries& o) const;
    LaurentSeries operator*(const Rat& c) const;

    LaurentSeries derivative() const;
    // Multiplicative inverse; requires the lowest coefficient to be known nonzero.
    LaurentSeries inverse() const;
    LaurentSeries pow(std::int64_t e) const;
    // Substitute exp -> exp + shift.
    LaurentSeries shifted(std::int64_t shift) const;

    bool operator==(const LaurentSeries& o) const { return coeffs_ == o.coeffs_ && trunc_ == o.trunc_; }

    std::string str(const std::string& var = "x") const;

  private:
    void insert(std::int64_t exp, Rat value);
    std::map<std::int64_t, Rat> coeffs_;
    std::int64_t trunc_;
    friend LaurentSeries compose(const LaurentSeries&, const LaurentSeries&);
};

// residue = coefficient at exponent -1 (checked against trunc).
Rat residue(const LaurentSeries& s);

// f(h(xi)) for h with h(0) = 0; Laurent f additionally needs h'(0) != 0.
LaurentSeries compose(const LaurentSeries& f, const LaurentSeries& h);

// Compositional inverse of h = a0*xi + ..., a0 != 0, exact below `order`.
LaurentSeries comp_inverse(const LaurentSeries& h, std::int64_t order);

// exp(l)(f) = sum l^k(f)/k! for the derivation l(xi) d/dxi with ord(l) >= 2
// (a linear part would make the sum non-terminating; factor it out first).
LaurentSeries exp_derivation(const LaurentSeries& l, const LaurentSeries& f, std::int64_t order);

// h'''/h' - (3/2)(h''/h')^2, truncated at `order`.
LaurentSeries schwarzian(const LaurentSeries& h, std::int64_t order);

// Local data of a symmetric bidifferential near the diagonal:
// omega(w,z) = dw dz/(w-z)^2 + (sum c_ij w^i z^j) dw dz, i,j >= 0.
struct BiDiffLocal {
    std::map<std::pair<std::int64_t, std::int64_t>, Rat> regular;
    std::int64_t trunc;  // coefficients with i + j >= trunc are unknown

    Rat c(std::int64_t i, std::int64_t j) const {
        auto it = regular.find({i, j});
        return it == regular.end() ? Rat(0) : it->second;
    }
};

// Projective connection S_omega(z) = 6 * sum_k (sum_{i+j=k} c_ij) z^k.
LaurentSeries projective_connection(const BiDiffLocal& b, std::int64_t order);

// b_omega contribution of a single point: Res(l(xi) S(xi) dxi).
Rat b_omega_term(const LaurentSeries& vector_field, const LaurentSeries& projective);

// Functional-valued (or any V-valued) truncated power series in the sewing
// parameter q. Exponents below trunc are exact.
template <typename V>
struct QSeries {
    std::map<std::int64_t, V> coeffs;
    std::int64_t trunc = 0;

    const V* at(std::int64_t k) const {
        auto it = coeffs.find(k);
        return it == coeffs.end() ? nullptr : &it->second;
    }
};

}  // namespace gv
