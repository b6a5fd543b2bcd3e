#include "ghostvac/fock.hpp"

#include <algorithm>
#include <stdexcept>

namespace gv {

void FockVector::add(const MayaDiagram& m, const Rat& c) {
    if (c == 0) return;
    Rat& v = terms_[m];
    v += c;
    if (v == 0) terms_.erase(m);
}

Rat FockVector::coeff(const MayaDiagram& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rat(0) : it->second;
}

FockVector FockVector::operator+(const FockVector& o) const {
    FockVector r = *this;
    for (const auto& [m, c] : o.terms_) r.add(m, c);
    return r;
}

FockVector FockVector::operator-(const FockVector& o) const {
    FockVector r = *this;
    for (const auto& [m, c] : o.terms_) r.add(m, -c);
    return r;
}

FockVector FockVector::operator*(const Rat& c) const {
    FockVector r;
    if (c == 0) return r;
    for (const auto& [m, v] : terms_) r.terms_.emplace(m, Rat(v * c));
    return r;
}

std::int64_t FockVector::max_degree() const {
    std::int64_t d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
    return d;
}

bool FockVector::charge_homogeneous(std::int64_t* charge_out) const {
    if (terms_.empty()) return true;
    std::int64_t p = terms_.begin()->first.charge();
    for (const auto& [m, c] : terms_)
        if (m.charge() != p) return false;
    if (charge_out) *charge_out = p;
    return true;
}

FockVector FockVector::charge_part(std::int64_t p) const {
    FockVector r;
    for (const auto& [m, c] : terms_)
        if (m.charge() == p) r.add(m, c);
    return r;
}

std::int64_t tuple_degree(const Tuple& t) {
    std::int64_t d = 0;
    for (const auto& m : t) d += m.degree();
    return d;
}

std::int64_t tuple_charge(const Tuple& t) {
    std::int64_t p = 0;
    for (const auto& m : t) p += m.charge();
    return p;
}

TensorVector TensorVector::basis(const Tuple& t, Rat c) {
    TensorVector v(t.size());
    v.add(t, c);
    return v;
}

void TensorVector::add(const Tuple& t, const Rat& c) {
    if (t.size() != arity_) throw std::invalid_argument("TensorVector: arity mismatch");
    if (c == 0) return;
    Rat& v = terms_[t];
    v += c;
    if (v == 0) terms_.erase(t);
}

TensorVector TensorVector::operator+(const TensorVector& o) const {
    if (arity_ != o.arity_) throw std::invalid_argument("TensorVector: arity mismatch");
    TensorVector r = *this;
    for (const auto& [t, c] : o.terms_) r.add(t, c);
    return r;
}

TensorVector TensorVector::operator*(const Rat& c) const {
    TensorVector r(arity_);
    if (c == 0) return r;
    for (const auto& [t, v] : terms_) r.terms_.emplace(t, Rat(v * c));
    return r;
}

namespace {

// Single-diagram fermion action; returns (diagram, sign) or nullopt for zero.
std::optional<std::pair<MayaDiagram, int>> fermion_on_basis(FermionKind kind, HalfInt nu, const MayaDiagram& m) {
    std::vector<HalfInt> mus = m.mus();
    std::vector<HalfInt> nus = m.nus();
    const std::int64_t r = static_cast<std::int64_t>(mus.size());
    std::int64_t exponent = 0;

    auto count_less = [](const std::vector<HalfInt>& v, HalfInt x) {
        return static_cast<std::int64_t>(std::lower_bound(v.begin(), v.end(), x) - v.begin());
    };
    auto count_greater = [](const std::vector<HalfInt>& v, HalfInt x) {
        return static_cast<std::int64_t>(v.end() - std::upper_bound(v.begin(), v.end(), x));
    };

    if (kind == FermionKind::Psi) {
        if (nu.positive()) {
            // removes the particle at nu
            auto it = std::lower_bound(mus.begin(), mus.end(), -nu);
            if (it == mus.end() || *it != -nu) return std::nullopt;
            exponent = count_less(mus, -nu);
            mus.erase(it);
        } else {
            // creates the hole nu
            auto it = std::lower_bound(nus.begin(), nus.end(), nu);
            if (it != nus.end() && *it == nu) return std::nullopt;
            // position in the decreasing wedge: r particles plus occupied
            // negatives above nu
            const std::int64_t negatives_above = (-nu.twice - 1) / 2;
            exponent = r + negatives_above - count_greater(nus, nu);
            nus.insert(it, nu);
        }
    } else {
        if (nu.negative()) {
            // adds the particle at -nu
            auto it = std::lower_bound(mus.begin(), mus.end(), nu);
            if (it != mus.end() && *it == nu) return std::nullopt;
            exponent = count_less(mus, nu);
            mus.insert(it, nu);
        } else {
            // fills the hole at -nu
            auto it = std::lower_bound(nus.begin(), nus.end(), -nu);
            if (it == nus.end() || *it != -nu) return std::nullopt;
            const std::int64_t negatives_above = (nu.twice - 1) / 2;
            exponent = r + negatives_above - count_greater(nus, -nu);
            nus.erase(it);
        }
    }
    return std::make_pair(MayaDiagram(std::move(mus), std::move(nus)), exponent % 2 == 0 ? 1 : -1);
}

}  // namespace

FockVector apply_fermion(FermionKind kind, HalfInt mode, const FockVector& v) {
    FockVector out;
    for (const auto& [m, c] : v.terms()) {
        auto hit = fermion_on_basis(kind, mode, m);
        if (hit) out.add(hit->first, c * hit->second);
    }
    return out;
}

TensorVector apply_rho(std::size_t slot, const std::function<FockVector(const FockVector&)>& op,
                       const TensorVector& t) {
    if (slot < 1 || slot > t.arity()) throw std::invalid_argument("apply_rho: slot out of range");
    TensorVector out(t.arity());
    for (const auto& [tup, c] : t.terms()) {
        std::int64_t prefix = 0;
        for (std::size_t j = 0; j + 1 < slot; ++j) prefix += tup[j].charge();
        const Rat signed_c = (prefix % 2 == 0) ? c : Rat(-c);
        FockVector image = op(FockVector(tup[slot - 1]));
        for (const auto& [m, mc] : image.terms()) {
            Tuple nt = tup;
            nt[slot - 1] = m;
            out.add(nt, signed_c * mc);
        }
    }
    return out;
}

TensorVector apply_rho(std::size_t slot, FermionKind kind, HalfInt mode, const TensorVector& t) {
    return apply_rho(slot, [&](const FockVector& v) { return apply_fermion(kind, mode, v); }, t);
}

namespace {

// Normal-ordered bilinear :A_a B_b: applied to a single basis ket, with A/B
// in {psi, psibar}. Swap with a sign iff a > 0 and b < 0.
FockVector normal_ordered_pair(FermionKind first, HalfInt a, FermionKind second, HalfInt b, const FockVector& v) {
    if (a.positive() && b.negative()) {
        FockVector w = apply_fermion(first, a, v);
        return apply_fermion(second, b, w) * Rat(-1);
    }
    FockVector w = apply_fermion(second, b, v);
    return apply_fermion(first, a, w);
}

// Candidate psi-modes mu for which :psi_mu psibar_{n-mu}: can act nonzero on m.
std::vector<HalfInt> contributing_psi_modes(std::int64_t n, const MayaDiagram& m) {
    std::vector<HalfInt> out;
    // psi removes a particle: mu in particles(m), with psibar recreating later.
    for (const auto& mu : m.mus()) out.push_back(-mu);
    // psibar fills a hole eta: the pair needs n - mu = -eta, i.e. mu = n + eta.
    for (const auto& eta : m.nus()) out.push_back(eta + n);
    // psi creates a hole (mu < 0) while psibar adds a particle (n - mu < 0):
    // requires n < mu < 0, a short integer window.
    for (std::int64_t t = 2 * n + 1; t < 0; t += 2) out.push_back(HalfInt(t));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

FockVector apply_current(std::int64_t n, const FockVector& v) {
    // J_n = sum_nu :psibar_{n-nu} psi_nu:
    FockVector out;
    for (const auto& [m, c] : v.terms()) {
        if (m.degree() - n < 0) continue;
        FockVector basis_term(m, c);
        // psi-mode nu runs over the same candidate set as for L_n.
        for (const auto& nu : contributing_psi_modes(n, m)) {
            HalfInt bar = HalfInt(2 * n - nu.twice);
            out = out + normal_ordered_pair(FermionKind::PsiBar, bar, FermionKind::Psi, nu, basis_term);
        }
    }
    return out;
}

FockVector apply_virasoro(const Rat& spin, std::int64_t n, const FockVector& v) {
    // T^{(j)} = :(1-j) psi' psibar - j psi psibar':, so
    // L_n^{(j)} = sum_mu c_j(mu, n) :psi_mu psibar_{n-mu}: with
    // c_j(mu, n) = -(1-j)(mu + 1/2) + j(n - mu + 1/2).
    FockVector out;
    for (const auto& [m, c] : v.terms()) {
        if (m.degree() - n < 0) continue;
        FockVector basis_term(m, c);
        for (const auto& mu : contributing_psi_modes(n, m)) {
            const Rat cj = -(Rat(1) - spin) * (mu.value() + Rat(1, 2)) +
                           spin * (Rat(n) - mu.value() + Rat(1, 2));
            if (cj == 0) continue;
            HalfInt bar = HalfInt(2 * n - mu.twice);
            out = out + normal_ordered_pair(FermionKind::Psi, mu, FermionKind::PsiBar, bar, basis_term) * cj;
        }
    }
    return out;
}

ModeOperator smear(FermionKind kind, const LaurentSeries& s, SmearAs as) {
    // form:      (sum a_n xi^n) dxi -> sum a_n X_{n+1/2}
    // function:  (sum b_m xi^m)     -> sum b_m X_{m+1/2}
    (void)as;  // both conventions attach mode exp + 1/2; the caller picks the kind
    ModeOperator op;
    op.kind = kind;
    for (const auto& [e, c] : s.coeffs()) op.coeffs.emplace(HalfInt(2 * e + 1), c);
    if (!s.exactly_known()) op.known_below_twice = 2 * s.trunc() + 1;
    return op;
}

FockVector apply_mode_operator(const ModeOperator& op, const FockVector& v) {
    FockVector out;
    for (const auto& [m, c] : v.terms()) {
        // Modes above this bound annihilate m: for psi the result degree is
        // d + p - (nu + 1/2) >= 0; for psibar it is d - p - (nu + 1/2) >= 0.
        const std::int64_t d = m.degree(), p = m.charge();
        const std::int64_t max_shift = (op.kind == FermionKind::Psi) ? d + p : d - p;
        const std::int64_t max_mode_twice = 2 * max_shift - 1;
        if (!op.exactly_known() && op.known_below_twice <= max_mode_twice)
            throw TruncationError("apply_mode_operator: expansion shorter than the modes that can act");
        FockVector basis_term(m, c);
        for (const auto& [mode, a] : op.coeffs) {
            if (mode.twice > max_mode_twice) break;
            out = out + apply_fermion(op.kind, mode, basis_term) * a;
        }
    }
    return out;
}

FockVector apply_T(const LaurentSeries& vector_field, const FockVector& v) {
    // T[l] = sum_n l_{n+1} L_n; modes with n > max degree annihilate.
    FockVector out;
    const std::int64_t dmax = v.max_degree();
    if (vector_field.trunc() != LaurentSeries::kExact && vector_field.trunc() < dmax + 2)
        throw TruncationError("apply_T: vector field known to too low an order");
    for (const auto& [e, c] : vector_field.coeffs()) {
        const std::int64_t n = e - 1;
        if (n > dmax) break;
        out = out + apply_virasoro(Rat(0), n, v) * c;
    }
    return out;
}

void DualFunctional::set(const Tuple& t, const Rat& c) {
    if (t.size() != arity_) throw std::invalid_argument("DualFunctional::set: arity mismatch");
    if (c == 0)
        values_.erase(t);
    else
        values_[t] = c;
}

bool DualFunctional::in_window(const Tuple& t) const {
    if (t.size() != arity_ || tuple_degree(t) > cutoff_) return false;
    if (slot_charge_bound_ != kNoBound)
        for (const auto& m : t)
            if (std::abs(m.charge()) > slot_charge_bound_) return false;
    return true;
}

Rat DualFunctional::value(const Tuple& t) const {
    if (t.size() == arity_ && total_charge_ && tuple_charge(t) != *total_charge_) return Rat(0);
    if (!in_window(t)) throw TruncationError("DualFunctional::value: tuple outside the exact window");
    auto it = values_.find(t);
    return it == values_.end() ? Rat(0) : it->second;
}

Rat DualFunctional::pair(const TensorVector& t) const {
    if (t.arity() != arity_) throw std::invalid_argument("DualFunctional::pair: arity mismatch");
    Rat acc(0);
    for (const auto& [tup, c] : t.terms()) acc += value(tup) * c;
    return acc;
}

DualFunctional DualFunctional::operator*(const Rat& c) const {
    DualFunctional r(arity_, cutoff_);
    if (c == 0) return r;
    for (const auto& [t, v] : values_) r.values_.emplace(t, Rat(v * c));
    return r;
}

DualFunctional DualFunctional::operator+(const DualFunctional& o) const {
    if (arity_ != o.arity_) throw std::invalid_argument("DualFunctional::operator+: arity mismatch");
    DualFunctional r(arity_, std::min(cutoff_, o.cutoff_));
    r.values_ = values_;
    for (const auto& [t, v] : o.values_) {
        Rat& acc = r.values_[t];
        acc += v;
        if (acc == 0) r.values_.erase(t);
    }
    return r;
}

bool DualFunctional::normalize() {
    for (const auto& [t, v] : values_) {
        const Rat inv = Rat(1) / v;
        for (auto& [t2, v2] : values_) v2 *= inv;
        return true;
    }
    return false;
}

Rat pair(const DualFunctional& phi, const FockVector& v) {
    if (phi.arity() != 1) throw std::invalid_argument("pair: functional arity must be 1");
    Rat acc(0);
    for (const auto& [m, c] : v.terms()) acc += phi.value({m}) * c;
    return acc;
}

}  // namespace gv
