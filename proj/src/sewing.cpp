#include "ghostvac/sewing.hpp"

#include <stdexcept>

namespace gv {

int alpha(std::int64_t n) {
    std::int64_t r = ((n % 4) + 4) % 4;
    return (r == 1 || r == 2) ? 1 : -1;
}

Rat pair_sym(const FockVector& u, const FockVector& v) {
    Rat acc(0);
    const auto& big = u.terms().size() < v.terms().size() ? u : v;
    const auto& other = u.terms().size() < v.terms().size() ? v : u;
    for (const auto& [m, c] : big.terms()) acc += c * other.coeff(m);
    return acc;
}

FockVector reflect(const FockVector& v) {
    FockVector out;
    for (const auto& [m, c] : v.terms()) out.add(m.reflect(), c);
    return out;
}

FockVector shift(const FockVector& v, std::int64_t amount) {
    FockVector out;
    for (const auto& [m, c] : v.terms()) out.add(m.shift(amount), c);
    return out;
}

Rat pair_braced(const FockVector& u, const FockVector& v) {
    // alpha depends on the charge of the u-component; pair per sector.
    Rat acc(0);
    FockVector rv = reflect(v);
    std::map<std::int64_t, FockVector> by_charge;
    for (const auto& [m, c] : u.terms()) by_charge[m.charge()].add(m, c);
    for (const auto& [p, part] : by_charge) acc += Rat(alpha(p)) * pair_sym(part, rv);
    return acc;
}

Rat pair_braced_plus(const FockVector& u, const FockVector& v) { return pair_braced(u, shift(v, 1)); }

DualBasisPlus dual_basis_plus(std::int64_t p, std::int64_t d) {
    DualBasisPlus out;
    out.basis = enumerate_basis(p, d);
    const Rat a = Rat(alpha(p));
    for (const auto& m : out.basis) out.dual.push_back(FockVector(m.reflect().shift(-1), a));
    return out;
}

TensorVector apply_rho_even(std::size_t slot, const std::function<FockVector(const FockVector&)>& op,
                            const TensorVector& t) {
    if (slot < 1 || slot > t.arity()) throw std::invalid_argument("apply_rho_even: slot out of range");
    TensorVector out(t.arity());
    for (const auto& [tup, c] : t.terms()) {
        FockVector image = op(FockVector(tup[slot - 1]));
        for (const auto& [m, mc] : image.terms()) {
            Tuple nt = tup;
            nt[slot - 1] = m;
            out.add(nt, c * mc);
        }
    }
    return out;
}

// ----------------------------------------------------------- SewnSeries ----

SewnSeries::SewnSeries(FunctionalPtr phi, std::int64_t q_order) : phi_(std::move(phi)), q_order_(q_order) {
    if (phi_->arity() < 2) throw std::invalid_argument("SewnSeries: functional must carry the two node slots");
    if (q_order_ < 0) throw std::invalid_argument("SewnSeries: negative q order");
}

Rat SewnSeries::coefficient(std::int64_t k, const Tuple& u) const {
    if (k < 0 || k >= q_order_) throw TruncationError("SewnSeries: coefficient beyond the computed order");
    if (u.size() != arity()) throw std::invalid_argument("SewnSeries: arity mismatch");
    auto key = std::make_pair(k, u);
    auto hit = memo_.find(key);
    if (hit != memo_.end()) return hit->second;
    Rat acc(0);
    // only charges with p(p+1)/2 <= k contribute to q^k
    for (std::int64_t p = -k - 1;; ++p) {
        const std::int64_t t = p * (p + 1) / 2;
        if (p > k + 1) break;
        if (t > k) continue;
        const std::int64_t d = k - t;
        const Rat a = Rat(alpha(p));
        const Rat sign = ((p + d) % 2 == 0) ? Rat(1) : Rat(-1);
        for (const auto& m : enumerate_basis(p, d)) {
            Tuple full;
            full.reserve(u.size() + 2);
            full.push_back(m);
            full.push_back(m.reflect().shift(-1));
            full.insert(full.end(), u.begin(), u.end());
            Rat v = phi_->value(full);
            if (v != 0) acc += sign * a * v;
        }
    }
    memo_.emplace(std::move(key), acc);
    return acc;
}

namespace {

class SewnCoefficient : public VacuumFunctional {
  public:
    SewnCoefficient(const SewnSeries* s, FunctionalPtr keepalive, std::int64_t k)
        : series_(s), keepalive_(std::move(keepalive)), k_(k) {}
    std::size_t arity() const override { return series_->arity(); }
    std::int64_t total_charge() const override { return series_->total_charge(); }
    Rat value(const Tuple& t) const override { return series_->coefficient(k_, t); }

  private:
    const SewnSeries* series_;
    FunctionalPtr keepalive_;
    std::int64_t k_;
};

}  // namespace

FunctionalPtr SewnSeries::coefficient_functional(std::int64_t k) const {
    return std::make_shared<SewnCoefficient>(this, phi_, k);
}

// ------------------------------------------------------ Fuchsian check ----

FuchsianReport fuchsian_check(const SewnSeries& s, const std::vector<LaurentSeries>& l_at_outer,
                              const std::optional<std::vector<Rat>>& b_in, std::int64_t max_test_degree,
                              std::int64_t slot_bound) {
    const std::int64_t K = s.q_order();
    if (l_at_outer.size() != s.arity()) throw std::invalid_argument("fuchsian_check: one expansion per outer slot");
    FuchsianReport report;
    report.max_residual.assign(K, Rat(0));

    auto tests = enumerate_tuples(s.arity(), max_test_degree, s.total_charge(), slot_bound);
    if (tests.empty()) throw std::invalid_argument("fuchsian_check: empty test window");

    // Precompute S_k(u) and the T-inserted values sum_j S_k(rho_j(T[l_j]) u).
    std::vector<std::map<Tuple, Rat>> sk(K), tk(K);
    for (const auto& u : tests) {
        TensorVector unit = TensorVector::basis(u);
        TensorVector tu(u.size());
        for (std::size_t j = 1; j <= u.size(); ++j)
            tu = tu + apply_rho_even(j, [&](const FockVector& v) { return apply_T(l_at_outer[j - 1], v); }, unit);
        for (std::int64_t k = 0; k < K; ++k) {
            sk[k][u] = s.coefficient(k, u);
            Rat acc(0);
            for (const auto& [t, c] : tu.terms()) acc += s.coefficient(k, t) * c;
            tk[k][u] = acc;
        }
    }

    // Residual convention: the derivative and insertion terms enter with the
    // SAME sign in these mode conventions,
    //   k S_k(u) + sum_j S_k(rho_j(T[l_j]) u) - (1/6) (b * S)_k(u) = 0,
    // fixed against the explicit mode realization (the relative sign is the
    // orientation bookkeeping of the two node contours).
    std::vector<Rat> b;
    if (b_in) {
        b = *b_in;
        b.resize(K, Rat(0));
    } else {
        // find a test vector with S_0(u) != 0 to pin each b_k
        const Tuple* pivot = nullptr;
        for (const auto& u : tests)
            if (sk[0][u] != 0) {
                pivot = &u;
                break;
            }
        if (!pivot) throw std::runtime_error("fuchsian_check: series vanishes at q^0 on the test window");
        b.assign(K, Rat(0));
        for (std::int64_t k = 0; k < K; ++k) {
            Rat acc = Rat(k) * sk[k][*pivot] + tk[k][*pivot];
            for (std::int64_t a = 0; a < k; ++a) acc -= b[a] * sk[k - a][*pivot] / 6;
            b[k] = acc * 6 / sk[0][*pivot];
        }
    }
    report.b = b;

    report.all_zero = true;
    for (const auto& u : tests) {
        for (std::int64_t k = 0; k < K; ++k) {
            Rat resid = Rat(k) * sk[k][u] + tk[k][u];
            for (std::int64_t a = 0; a <= k; ++a) resid -= b[a] * sk[k - a][u] / 6;
            if (abs(resid) > report.max_residual[k]) report.max_residual[k] = abs(resid);
            if (resid != 0) report.all_zero = false;
        }
    }
    return report;
}

}  // namespace gv
