#pragma once

#include <cstdint>
#include <vector>

#include "ghostvac/half_int.hpp"

namespace gv {

struct Grading {
    std::int64_t charge = 0;
    std::int64_t degree = 0;
    auto operator<=>(const Grading&) const = default;
};

// Canonical label of a charged Fock basis vector.
//
// mus  : strictly increasing negative half-integers, the psibar-modes of the
//        canonical word (each contributes the one-particle entry -mu > 0);
// nus  : strictly increasing negative half-integers, the psi-modes (each is a
//        hole in the Dirac sea).
//
// The occupied set is S(M) = ({nu < 0} \ nus) u { -mu : mu in mus } and the
// basis ket is the wedge of e-bar over S(M) in decreasing order.
class MayaDiagram {
  public:
    MayaDiagram() = default;
    MayaDiagram(std::vector<HalfInt> mus, std::vector<HalfInt> nus);

    static MayaDiagram vacuum() { return MayaDiagram(); }
    // |p> : the pure charge-p vacuum pattern.
    static MayaDiagram charged_vacuum(std::int64_t p);
    // Builds the diagram from the finitely many non-identity values of the
    // characteristic function (Figure-1 style input): moves[i] = (from, to)
    // meaning mu(from) = to, together with the charge p.
    static MayaDiagram from_characteristic_moves(std::int64_t charge,
                                                 const std::vector<std::pair<HalfInt, HalfInt>>& moves);

    const std::vector<HalfInt>& mus() const { return mus_; }
    const std::vector<HalfInt>& nus() const { return nus_; }

    std::int64_t charge() const;
    std::int64_t degree() const;
    Grading grading() const { return {charge(), degree()}; }

    bool is_vacuum() const { return mus_.empty() && nus_.empty(); }
    bool is_charged_vacuum() const;  // |p> for some p

    // Non-identity moves of the characteristic function, sorted by slot.
    std::vector<std::pair<HalfInt, HalfInt>> characteristic_moves() const;

    // Sign of Eq-style canonical word: |M> = sign * psibar_{mu_1}..psibar_{mu_r}
    // psi_{nu_s}..psi_{nu_1} |0>, sign = (-1)^{sum nu_i + s/2}.
    int word_sign() const;

    // Mirror image through 0 (swap particles and holes). Involutive,
    // negates the charge, preserves the degree. Sign-free on canonical kets.
    MayaDiagram reflect() const;

    // Shift s : F(p) -> F(p+1), S(M) -> S(M)+1 (characteristic function
    // s(mu)(nu) = mu(nu-1)+1). Sign-free on canonical kets; shift(-1) inverts.
    MayaDiagram shift(std::int64_t amount = 1) const;

    bool occupies(HalfInt s) const;  // s in S(M)

    auto operator<=>(const MayaDiagram&) const = default;

  private:
    std::vector<HalfInt> mus_;
    std::vector<HalfInt> nus_;
};

// All diagrams of charge p and degree d, lexicographically ordered on
// (mus, nus) in twice-value form. |M_p^d| equals the partition count of d.
std::vector<MayaDiagram> enumerate_basis(std::int64_t charge, std::int64_t degree);

std::int64_t partition_count(std::int64_t d);

}  // namespace gv
