#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ghostvac/vacua.hpp"

namespace gv {

// alpha(n) = +1 for n = 1, 2 (mod 4), -1 for n = 0, 3 (mod 4).
int alpha(std::int64_t n);

// Symmetric pairing (|M> | |N>) = delta_{M,N}, extended bilinearly; zero
// across distinct charges or degrees by construction.
Rat pair_sym(const FockVector& u, const FockVector& v);

// Linear extensions of the mirror map r and the shift s to vectors.
FockVector reflect(const FockVector& v);
FockVector shift(const FockVector& v, std::int64_t amount = 1);

// {u | v} = alpha(charge(u)) (u | r(v)), per charge component of u.
Rat pair_braced(const FockVector& u, const FockVector& v);
// {u | v}_+ = {u | s(v)}; perfect on F_d(p) x F_d(-p-1).
Rat pair_braced_plus(const FockVector& u, const FockVector& v);

// Basis v_i(d, p) of F_d(p) together with its { | }_+-dual basis
// v^i(d, -p-1) = alpha(p) |s^{-1}(r(M_i))>.
struct DualBasisPlus {
    std::vector<MayaDiagram> basis;
    std::vector<FockVector> dual;
};
DualBasisPlus dual_basis_plus(std::int64_t p, std::int64_t d);

// Even (charge-preserving, fermion-bilinear) insertions carry no Koszul sign.
TensorVector apply_rho_even(std::size_t slot, const std::function<FockVector(const FockVector&)>& op,
                            const TensorVector& t);

// The q^0 coefficient of the sewing series equals this sign times the nodal
// restriction <Phi| 0_{+,-} (x) u>; fixed once per build by the alpha and
// dual-basis conventions above.
inline constexpr int kSewNodalSign = -1;

// The sewing series <Phi~(q)| of Eq-(solution) type: coefficient of q^k is
//   S_k(u) = sum_{p : p(p+1)/2 <= k} sum_i (-1)^{p+d} <Phi| v_i(d,p) (x)
//            v^i(d,-p-1) (x) u>,   d = k - p(p+1)/2,
// where Phi lives on the (N+2)-pointed normalization with slots (P+, P-, Q..).
class SewnSeries {
  public:
    SewnSeries(FunctionalPtr phi, std::int64_t q_order);

    std::int64_t q_order() const { return q_order_; }
    std::size_t arity() const { return phi_->arity() - 2; }
    std::int64_t total_charge() const { return phi_->total_charge() + 1; }

    Rat coefficient(std::int64_t k, const Tuple& u) const;
    // The k-th coefficient as a lazy functional on the outer slots.
    FunctionalPtr coefficient_functional(std::int64_t k) const;

  private:
    FunctionalPtr phi_;
    std::int64_t q_order_;
    mutable std::map<std::pair<std::int64_t, Tuple>, Rat> memo_;
};

// Formal Fuchsian consistency of Eq-(5.11) type:
//   k S_k(u) - sum_j S_k(rho_j(T[l_j]) u) - (1/6) (b * S)_k(u) = 0.
// `l_at_outer` are the expansions of the sewing vector field at the outer
// slots. When `b` is absent, the unique consistent series is solved from the
// first test vector and then verified against all others.
struct FuchsianReport {
    std::vector<Rat> b;            // coefficients b_0 .. b_{K-1}
    std::vector<Rat> max_residual; // per order, exact
    bool all_zero = false;
};
FuchsianReport fuchsian_check(const SewnSeries& s, const std::vector<LaurentSeries>& l_at_outer,
                              const std::optional<std::vector<Rat>>& b, std::int64_t max_test_degree,
                              std::int64_t slot_bound);

}  // namespace gv
