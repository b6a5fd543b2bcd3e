#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "ghostvac/laurent.hpp"
#include "ghostvac/maya.hpp"
#include "ghostvac/rat.hpp"

namespace gv {

enum class FermionKind { Psi, PsiBar };

// Finite rational linear combination of Maya basis kets. May mix charges.
class FockVector {
  public:
    FockVector() = default;
    explicit FockVector(const MayaDiagram& m, Rat c = Rat(1)) { add(m, c); }

    static FockVector vacuum(std::int64_t p = 0) { return FockVector(MayaDiagram::charged_vacuum(p)); }

    void add(const MayaDiagram& m, const Rat& c);
    bool empty() const { return terms_.empty(); }
    const std::map<MayaDiagram, Rat>& terms() const { return terms_; }
    Rat coeff(const MayaDiagram& m) const;

    FockVector operator+(const FockVector& o) const;
    FockVector operator-(const FockVector& o) const;
    FockVector operator*(const Rat& c) const;

    std::int64_t max_degree() const;  // 0 for the empty vector
    bool charge_homogeneous(std::int64_t* charge_out = nullptr) const;
    // Component of fixed charge.
    FockVector charge_part(std::int64_t p) const;

    bool operator==(const FockVector& o) const { return terms_ == o.terms_; }

  private:
    std::map<MayaDiagram, Rat> terms_;
};

using Tuple = std::vector<MayaDiagram>;

std::int64_t tuple_degree(const Tuple& t);
std::int64_t tuple_charge(const Tuple& t);

// Finite rational combination of N-fold Maya tuples.
class TensorVector {
  public:
    explicit TensorVector(std::size_t arity = 0) : arity_(arity) {}
    static TensorVector basis(const Tuple& t, Rat c = Rat(1));

    std::size_t arity() const { return arity_; }
    void add(const Tuple& t, const Rat& c);
    const std::map<Tuple, Rat>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

    TensorVector operator+(const TensorVector& o) const;
    TensorVector operator*(const Rat& c) const;

  private:
    std::size_t arity_;
    std::map<Tuple, Rat> terms_;
};

// psi_nu, psibar_nu acting on F from the left. Exact and finite.
FockVector apply_fermion(FermionKind kind, HalfInt mode, const FockVector& v);

// Koszul-signed action in slot j (1-based): (-1)^{p_1+...+p_{j-1}} op(u_j).
TensorVector apply_rho(std::size_t slot, FermionKind kind, HalfInt mode, const TensorVector& t);
TensorVector apply_rho(std::size_t slot, const std::function<FockVector(const FockVector&)>& op,
                       const TensorVector& t);

// Current mode J_n (charge preserved, degree shifted by -n).
FockVector apply_current(std::int64_t n, const FockVector& v);

// Virasoro mode L_n^{(j)} for spin j in {0, 1/2, 1} (Rat-valued j allowed).
FockVector apply_virasoro(const Rat& spin, std::int64_t n, const FockVector& v);
inline FockVector apply_L(std::int64_t n, const FockVector& v) { return apply_virasoro(Rat(0), n, v); }

// Smeared fermion built from a local expansion: a one-form (sum a_n xi^n) dxi
// gives sum a_n psi_{n+1/2}; a function sum b_m xi^m gives sum b_m psibar_{m+1/2}.
struct ModeOperator {
    FermionKind kind = FermionKind::Psi;
    std::map<HalfInt, Rat> coeffs;
    // Modes with twice-value < known_below_twice are exact; higher ones unknown.
    std::int64_t known_below_twice = std::numeric_limits<std::int64_t>::max();

    bool exactly_known() const { return known_below_twice == std::numeric_limits<std::int64_t>::max(); }
};

enum class SmearAs { Form, Function };

ModeOperator smear(FermionKind kind, const LaurentSeries& s, SmearAs as);

// Exact left application; throws TruncationError if a mode that could act
// nonzero lies at or above the operator's known range.
FockVector apply_mode_operator(const ModeOperator& op, const FockVector& v);

// T[l] = Res(T(z) l(z) dz) = sum_n l_{n+1} L_n^{(0)} applied exactly;
// requires l's coefficients known through max_degree(v)+1.
FockVector apply_T(const LaurentSeries& vector_field, const FockVector& v);

// Degree-truncated functional on N-fold tuples. Values are exact for tuples
// with total degree <= cutoff (and charges inside the recorded windows);
// anything outside is unknown, not zero.
class DualFunctional {
  public:
    static constexpr std::int64_t kNoBound = std::numeric_limits<std::int64_t>::max();

    DualFunctional() = default;
    DualFunctional(std::size_t arity, std::int64_t cutoff) : arity_(arity), cutoff_(cutoff) {}

    std::size_t arity() const { return arity_; }
    std::int64_t cutoff() const { return cutoff_; }
    void set_cutoff(std::int64_t c) { cutoff_ = c; }

    // Tuples whose total charge differs from this are exactly zero (support
    // lives in one total-charge sector); per-slot charges outside the bound
    // are unknown rather than zero.
    void set_total_charge(std::int64_t p) { total_charge_ = p; }
    std::optional<std::int64_t> total_charge() const { return total_charge_; }
    void set_slot_charge_bound(std::int64_t b) { slot_charge_bound_ = b; }
    std::int64_t slot_charge_bound() const { return slot_charge_bound_; }

    void set(const Tuple& t, const Rat& c);
    Rat value(const Tuple& t) const;  // throws TruncationError outside the window
    const std::map<Tuple, Rat>& values() const { return values_; }

    bool in_window(const Tuple& t) const;

    // Exact bilinear pairing against a tensor vector supported in the window.
    Rat pair(const TensorVector& t) const;

    DualFunctional operator*(const Rat& c) const;
    DualFunctional operator+(const DualFunctional& o) const;

    // Normalize so the first nonzero value (in canonical tuple order) is 1.
    // Returns false when the functional is identically zero in the window.
    bool normalize();

  private:
    std::size_t arity_ = 1;
    std::int64_t cutoff_ = 0;
    std::optional<std::int64_t> total_charge_;
    std::int64_t slot_charge_bound_ = kNoBound;
    std::map<Tuple, Rat> values_;
};

// <phi | t> for phi of arity 1 against a FockVector.
Rat pair(const DualFunctional& phi, const FockVector& v);

}  // namespace gv
