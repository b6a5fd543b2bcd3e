#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "ghostvac/curve.hpp"
#include "ghostvac/fock.hpp"
#include "ghostvac/linalg.hpp"

namespace gv {

// A curve together with the ordering of its outer points as Fock slots.
// The gauge-condition Koszul signs refer to this order.
struct SlottedCurve {
    CurveSpec curve;
    std::vector<PointRef> slots;

    static SlottedCurve with_default_slots(CurveSpec c) {
        SlottedCurve sc{std::move(c), {}};
        sc.slots = sc.curve.outer();
        return sc;
    }
    std::size_t arity() const { return slots.size(); }
};

// Shared evaluator interface for ghost-vacuum functionals: solved
// (materialized) ones and lazily propagated ones.
class VacuumFunctional {
  public:
    virtual ~VacuumFunctional() = default;
    virtual std::size_t arity() const = 0;
    virtual std::int64_t total_charge() const = 0;
    // Exact value; throws TruncationError when the tuple lies beyond what the
    // underlying data can certify.
    virtual Rat value(const Tuple& t) const = 0;

    Rat pair(const TensorVector& v) const;
};

using FunctionalPtr = std::shared_ptr<const VacuumFunctional>;

class MaterializedVacuum : public VacuumFunctional {
  public:
    explicit MaterializedVacuum(DualFunctional data) : data_(std::move(data)) {}
    std::size_t arity() const override { return data_.arity(); }
    std::int64_t total_charge() const override { return data_.total_charge().value_or(0); }
    Rat value(const Tuple& t) const override { return data_.value(t); }
    const DualFunctional& data() const { return data_; }

  private:
    DualFunctional data_;
};

// The one-point vacuum <-1| of (P^1; Q; xi): value 1 on |-1>, 0 elsewhere,
// exact on every tuple.
class PointVacuum : public VacuumFunctional {
  public:
    std::size_t arity() const override { return 1; }
    std::int64_t total_charge() const override { return -1; }
    Rat value(const Tuple& t) const override;
};

// All tuples of the given arity with total degree <= max_degree, total charge
// = total, per-slot |charge| <= slot_bound. Canonical (lexicographic) order.
std::vector<Tuple> enumerate_tuples(std::size_t arity, std::int64_t max_degree, std::int64_t total_charge,
                                    std::int64_t slot_bound);

struct AssembleOptions {
    std::int64_t form_pole_bound = 0;      // 0: use cutoff + 2 (per design policy)
    std::int64_t function_pole_bound = 0;  // 0: use cutoff + 1
    std::int64_t slot_charge_bound = 3;
    std::int64_t extra_test_degree = 2;  // test vectors up to cutoff + extra
};

struct ConstraintSystem {
    std::size_t arity = 1;
    std::int64_t cutoff = 0;
    std::int64_t charge_total = 0;
    std::int64_t slot_charge_bound = 0;
    std::vector<Tuple> columns;  // canonical order
    std::vector<SparseRow> rows;
};

// Rows: restrictions of <Phi|psi[omega] = 0 and <Phi|psibar[f] = 0 against
// all test vectors whose image stays inside the column window.
ConstraintSystem assemble(const SlottedCurve& sc, std::int64_t cutoff, std::int64_t charge_total,
                          const AssembleOptions& opt = {});

// Kernel basis of the constraint system as truncated functionals (normalized:
// first nonzero value in canonical tuple order equals 1).
std::vector<DualFunctional> solve(const ConstraintSystem& s);

// Assemble + solve with pole-bound escalation until the kernel stabilizes
// twice; throws if the kernel dimension is not 1 at stabilization. Solves on
// an enlarged window internally and trims back, so the reported window is
// free of truncation-edge artifacts.
DualFunctional solve_vacuum(const SlottedCurve& sc, std::int64_t cutoff, const AssembleOptions& opt = {});

// Dimension of the span of the given functionals restricted to the inner
// window (degree <= inner_cutoff, per-slot |charge| <= inner_bound). Used to
// validate windows: a truncated kernel is trustworthy where its restriction
// to a smaller window is stable.
std::size_t inner_kernel_dimension(const std::vector<DualFunctional>& kernel, std::int64_t inner_cutoff,
                                   std::int64_t inner_bound);

// Maximal |violation| of the gauge condition smeared with section x over the
// test window (exact; zero for a genuine vacuum).
Rat gauge_residual(const VacuumFunctional& phi, const SlottedCurve& sc, const RationalSection& x,
                   std::int64_t max_degree, std::int64_t slot_bound);

// Propagation of vacua: extend `base` (on sc minus slot `new_slot`) across
// the added point sc.slots[new_slot-1], by the gauge-condition recursion.
// Exact wherever the base is exact.
FunctionalPtr propagate(FunctionalPtr base, const SlottedCurve& extended, std::size_t new_slot,
                        std::int64_t pole_bound = 6);

// iota^*: insert |0> at the given slot (inverse direction of propagate).
FunctionalPtr restrict_slot(FunctionalPtr phi, std::size_t slot);

// Nodal restriction: pair the two leading node slots with |0+,->.
FunctionalPtr node_restrict(FunctionalPtr phi_on_normalization);

// Nodal extension (Thm-3.5 direction): from a vacuum on the nodal curve to
// the vacuum on its normalization with slots (P+, P-, Q_1, ..., Q_N).
// `nodal` must carry exactly one glue pair.
struct NodeExtension {
    FunctionalPtr functional;
    SlottedCurve normalization;  // slots (P+, P-, Q...)
};
NodeExtension node_extend(FunctionalPtr phi, const SlottedCurve& nodal, std::int64_t pole_bound = 6);

}  // namespace gv
