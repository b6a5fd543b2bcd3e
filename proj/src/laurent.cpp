#include "ghostvac/laurent.hpp"

#include <algorithm>
#include <sstream>

namespace gv {

namespace {

// min with kExact acting as +infinity under addition of finite offsets.
std::int64_t add_clamped(std::int64_t a, std::int64_t b) {
    if (a == LaurentSeries::kExact || b == LaurentSeries::kExact) return LaurentSeries::kExact;
    return a + b;
}

}  // namespace

LaurentSeries::LaurentSeries(std::map<std::int64_t, Rat> coeffs, std::int64_t trunc) : trunc_(trunc) {
    for (auto& [e, c] : coeffs) {
        if (e >= trunc_) continue;
        if (c != 0) coeffs_.emplace(e, std::move(c));
    }
}

LaurentSeries LaurentSeries::constant(const Rat& c, std::int64_t trunc) { return monomial(c, 0, trunc); }

LaurentSeries LaurentSeries::monomial(const Rat& c, std::int64_t exp, std::int64_t trunc) {
    LaurentSeries s(trunc);
    if (exp < trunc && c != 0) s.coeffs_.emplace(exp, c);
    return s;
}

Rat LaurentSeries::coeff(std::int64_t exp) const {
    if (exp >= trunc_) throw TruncationError("LaurentSeries::coeff: exponent " + std::to_string(exp) +
                                             " at or above trunc " + std::to_string(trunc_));
    auto it = coeffs_.find(exp);
    return it == coeffs_.end() ? Rat(0) : it->second;
}

Rat LaurentSeries::coeff_or_zero(std::int64_t exp) const {
    auto it = coeffs_.find(exp);
    return it == coeffs_.end() ? Rat(0) : it->second;
}

LaurentSeries LaurentSeries::truncated(std::int64_t new_trunc) const {
    LaurentSeries s(std::min(trunc_, new_trunc));
    for (const auto& [e, c] : coeffs_)
        if (e < s.trunc_) s.coeffs_.emplace(e, c);
    return s;
}

void LaurentSeries::insert(std::int64_t exp, Rat value) {
    if (exp >= trunc_ || value == 0) return;
    auto [it, fresh] = coeffs_.emplace(exp, std::move(value));
    if (!fresh) throw std::logic_error("LaurentSeries::insert: duplicate exponent");
}

LaurentSeries LaurentSeries::operator-() const {
    LaurentSeries s(trunc_);
    for (const auto& [e, c] : coeffs_) s.coeffs_.emplace(e, Rat(-c));
    return s;
}

LaurentSeries LaurentSeries::operator+(const LaurentSeries& o) const {
    LaurentSeries s(std::min(trunc_, o.trunc_));
    for (const auto& [e, c] : coeffs_)
        if (e < s.trunc_) s.coeffs_[e] = c;
    for (const auto& [e, c] : o.coeffs_) {
        if (e >= s.trunc_) continue;
        Rat& v = s.coeffs_[e];
        v += c;
        if (v == 0) s.coeffs_.erase(e);
    }
    return s;
}

LaurentSeries LaurentSeries::operator-(const LaurentSeries& o) const { return *this + (-o); }

LaurentSeries LaurentSeries::operator*(const LaurentSeries& o) const {
    // Unknown part of f*g starts at min(trunc_f + ord_g, trunc_g + ord_f);
    // an exactly-zero factor gives an exactly-zero product.
    std::int64_t t;
    if (known_zero() || o.known_zero()) {
        t = kExact;
    } else {
        t = std::min(add_clamped(trunc_, o.ord()), add_clamped(o.trunc_, ord()));
    }
    LaurentSeries s(t);
    for (const auto& [e1, c1] : coeffs_)
        for (const auto& [e2, c2] : o.coeffs_) {
            const std::int64_t e = e1 + e2;
            if (e >= t) continue;
            Rat& v = s.coeffs_[e];
            v += c1 * c2;
        }
    for (auto it = s.coeffs_.begin(); it != s.coeffs_.end();)
        it = (it->second == 0) ? s.coeffs_.erase(it) : std::next(it);
    return s;
}

LaurentSeries LaurentSeries::operator*(const Rat& c) const {
    if (c == 0) return LaurentSeries::zero(kExact);
    LaurentSeries s(trunc_);
    for (const auto& [e, v] : coeffs_) s.coeffs_.emplace(e, Rat(v * c));
    return s;
}

LaurentSeries LaurentSeries::derivative() const {
    LaurentSeries s(add_clamped(trunc_, -1));
    for (const auto& [e, c] : coeffs_)
        if (e != 0 && e - 1 < s.trunc_) s.coeffs_.emplace(e - 1, Rat(c * e));
    return s;
}

LaurentSeries LaurentSeries::shifted(std::int64_t shift) const {
    LaurentSeries s(add_clamped(trunc_, shift));
    for (const auto& [e, c] : coeffs_) s.coeffs_.emplace(e + shift, c);
    return s;
}

LaurentSeries LaurentSeries::inverse() const {
    if (coeffs_.empty()) throw std::domain_error("LaurentSeries::inverse: zero series");
    const std::int64_t n = ord();
    const Rat lead = coeffs_.begin()->second;
    // 1/f = xi^{-n} * 1/u with u = f * xi^{-n} a unit power series.
    // Known coefficients of u: below trunc - n; inverse known to same order.
    std::int64_t ut = add_clamped(trunc_, -n);
    LaurentSeries u = shifted(-n);
    std::int64_t order = ut;
    if (order == kExact) {
        // An exactly known series still has finitely many terms; the inverse
        // of a non-monomial is an infinite series, so a target is required.
        if (coeffs_.size() == 1) return monomial(Rat(1) / lead, -n, kExact);
        throw TruncationError("LaurentSeries::inverse: inverse of an exact non-monomial is infinite; truncate first");
    }
    LaurentSeries inv = monomial(Rat(1) / lead, 0, order);
    // Newton-free direct recurrence: (u * inv)_k = delta_{k,0}.
    for (std::int64_t k = 1; k < order; ++k) {
        Rat acc(0);
        for (const auto& [e, c] : u.coeffs_) {
            if (e <= 0 || e > k) continue;
            acc += c * inv.coeff_or_zero(k - e);
        }
        if (acc != 0) inv.coeffs_[k] = -acc / lead;
    }
    return inv.shifted(-n);
}

LaurentSeries LaurentSeries::pow(std::int64_t e) const {
    if (e == 0) return constant(Rat(1));
    if (e < 0) return inverse().pow(-e);
    LaurentSeries acc = constant(Rat(1));
    LaurentSeries base = *this;
    std::int64_t k = e;
    while (k) {
        if (k & 1) acc = acc * base;
        base = (k >>= 1) ? base * base : base;
    }
    return acc;
}

std::string LaurentSeries::str(const std::string& var) const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : coeffs_) {
        os << (first ? "" : " + ") << c.get_str() << "*" << var << "^" << e;
        first = false;
    }
    if (first) os << "0";
    if (!exactly_known()) os << " + O(" << var << "^" << trunc_ << ")";
    return os.str();
}

Rat residue(const LaurentSeries& s) { return s.coeff(-1); }

LaurentSeries compose(const LaurentSeries& f, const LaurentSeries& h) {
    const std::int64_t m = h.zero_below_trunc() ? h.trunc() : h.ord();  // order of vanishing at 0
    if (m < 1) throw std::domain_error("compose: h(0) != 0");
    const bool f_has_pole = !f.coeffs().empty() && f.ord() < 0;
    if (f_has_pole && (h.zero_below_trunc() || m != 1))
        throw std::domain_error("compose: Laurent f needs h with simple zero");
    // Unknown sources: f_k for k >= trunc(f) enters at exponent >= trunc(f)*m;
    // the unknown tail of h perturbs the h^k term at (k-1)*m + trunc(h).
    std::int64_t t = f.exactly_known() ? LaurentSeries::kExact
                                       : (m == LaurentSeries::kExact ? LaurentSeries::kExact : f.trunc() * m);
    if (!h.exactly_known() && !f.coeffs().empty()) {
        std::int64_t k_min = LaurentSeries::kExact;  // least non-constant power of h appearing
        for (const auto& [e, c] : f.coeffs())
            if (e != 0) {
                k_min = e;
                break;
            }
        if (k_min != LaurentSeries::kExact)
            t = std::min(t, add_clamped(h.trunc(), (k_min - 1) * (m == LaurentSeries::kExact ? 1 : m)));
    }
    LaurentSeries result(t);
    // Non-negative powers, ascending, sharing incremental powers of h.
    LaurentSeries cur = LaurentSeries::constant(Rat(1), t);
    std::int64_t k = 0;
    for (const auto& [e, c] : f.coeffs()) {
        if (e < 0) continue;
        cur = (cur * h.pow(e - k)).truncated(t);
        k = e;
        result = result + cur * c;
    }
    if (f_has_pole) {
        const std::int64_t depth = -f.ord();
        LaurentSeries hinv;
        if (t == LaurentSeries::kExact) {
            if (h.coeffs().size() != 1)
                throw TruncationError("compose: pole part with exact data is an infinite series; truncate first");
            hinv = h.inverse();
        } else {
            hinv = h.truncated(std::min(h.trunc(), t + depth + 1)).inverse();
        }
        cur = LaurentSeries::constant(Rat(1));
        k = 0;
        for (auto it = f.coeffs().rbegin(); it != f.coeffs().rend(); ++it) {
            if (it->first >= 0) continue;
            cur = (cur * hinv.pow(k - it->first)).truncated(add_clamped(t, 1));
            k = it->first;
            result = result + cur * it->second;
        }
    }
    return result.truncated(t);
}

LaurentSeries comp_inverse(const LaurentSeries& h, std::int64_t order) {
    if (h.zero_below_trunc() || h.ord() != 1) throw std::domain_error("comp_inverse: need h = a0*xi + ..., a0 != 0");
    if (h.trunc() < order && h.trunc() != LaurentSeries::kExact)
        throw TruncationError("comp_inverse: h not known to requested order");
    const Rat a0 = h.coeff_or_zero(1);
    // Solve h(g(xi)) = xi coefficient by coefficient.
    LaurentSeries g = LaurentSeries::monomial(Rat(1) / a0, 1, order);
    for (std::int64_t k = 2; k < order; ++k) {
        // residual = h(g) - xi, exact below k+1 with current g
        LaurentSeries resid = compose(h.truncated(order), g.truncated(k + 1)) - LaurentSeries::identity();
        Rat bad = resid.coeff_or_zero(k);
        if (bad != 0) {
            // correction c*xi^k: h(g + c xi^k) = h(g) + a0*c*xi^k + higher
            LaurentSeries corr = LaurentSeries::monomial(-bad / a0, k, order);
            g = g + corr;
        }
    }
    return g.truncated(order);
}

LaurentSeries exp_derivation(const LaurentSeries& l, const LaurentSeries& f, std::int64_t order) {
    if (!l.zero_below_trunc()) {
        if (l.ord() <= 1)
            throw std::domain_error("exp_derivation: derivation must have ord >= 2 (factor out the scaling part)");
    }
    LaurentSeries result = f.truncated(order);
    LaurentSeries term = f.truncated(order);
    // l raises exponents by ord(l)-1 >= 1 each application, so this stops.
    for (std::int64_t k = 1;; ++k) {
        term = (l * term.derivative()).truncated(order);
        if (term.zero_below_trunc()) break;
        result = result + term * (Rat(1) / factorial(k));
        if (k > 4 * (order > 0 ? order : 1) + 16) throw std::logic_error("exp_derivation: failed to terminate");
    }
    return result;
}

LaurentSeries schwarzian(const LaurentSeries& h, std::int64_t order) {
    LaurentSeries d1 = h.derivative();
    if (d1.zero_below_trunc() || d1.ord() != 0 )
        throw std::domain_error("schwarzian: h'(0) must be nonzero");
    LaurentSeries d2 = d1.derivative();
    LaurentSeries d3 = d2.derivative();
    LaurentSeries inv = d1.truncated(order + 3).inverse();
    LaurentSeries ratio = (d2 * inv).truncated(order);
    LaurentSeries s = (d3 * inv).truncated(order) - ratio * ratio * Rat(3, 2);
    return s.truncated(order);
}

LaurentSeries projective_connection(const BiDiffLocal& b, std::int64_t order) {
    if (b.trunc < order) throw TruncationError("projective_connection: bidifferential data too short");
    std::map<std::int64_t, Rat> out;
    for (const auto& [ij, c] : b.regular) {
        const std::int64_t k = ij.first + ij.second;
        if (k < order) out[k] += Rat(6) * c;
    }
    return LaurentSeries(std::move(out), order);
}

Rat b_omega_term(const LaurentSeries& vector_field, const LaurentSeries& projective) {
    return residue(vector_field * projective);
}

}  // namespace gv
