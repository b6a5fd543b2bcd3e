#include "ghostvac/vacua.hpp"

#include <algorithm>
#include <stdexcept>

namespace gv {

Rat VacuumFunctional::pair(const TensorVector& v) const {
    if (v.arity() != arity()) throw std::invalid_argument("VacuumFunctional::pair: arity mismatch");
    Rat acc(0);
    for (const auto& [t, c] : v.terms()) acc += value(t) * c;
    return acc;
}

Rat PointVacuum::value(const Tuple& t) const {
    if (t.size() != 1) throw std::invalid_argument("PointVacuum: arity 1");
    return t[0] == MayaDiagram::charged_vacuum(-1) ? Rat(1) : Rat(0);
}

std::vector<Tuple> enumerate_tuples(std::size_t arity, std::int64_t max_degree, std::int64_t total_charge,
                                    std::int64_t slot_bound) {
    std::vector<Tuple> out;
    Tuple current;
    // recursive fill, slot by slot
    auto rec = [&](auto&& self, std::size_t slot, std::int64_t deg_left, std::int64_t charge_left) -> void {
        if (slot == arity) {
            if (charge_left == 0) out.push_back(current);
            return;
        }
        const std::int64_t remaining_slots = static_cast<std::int64_t>(arity - slot - 1);
        for (std::int64_t p = -slot_bound; p <= slot_bound; ++p) {
            if (std::abs(charge_left - p) > remaining_slots * slot_bound) continue;
            for (std::int64_t d = 0; d <= deg_left; ++d)
                for (const auto& m : enumerate_basis(p, d)) {
                    current.push_back(m);
                    self(self, slot + 1, deg_left - d, charge_left - p);
                    current.pop_back();
                }
        }
    };
    rec(rec, 0, max_degree, total_charge);
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

// Smeared gauge operator data for one section: per-slot mode operators.
struct GaugeOp {
    FermionKind kind;  // Psi for one-forms, PsiBar for functions
    std::vector<ModeOperator> per_slot;
};

GaugeOp make_gauge_op(const SlottedCurve& sc, const RationalSection& x, std::int64_t order) {
    GaugeOp op;
    op.kind = (x.kind == SectionKind::OneForm) ? FermionKind::Psi : FermionKind::PsiBar;
    for (const auto& r : sc.slots) op.per_slot.push_back(smear(op.kind, expand_at(x, sc.curve, r, order), SmearAs::Form));
    return op;
}

// sum_j rho_j(op_j) applied to a basis tuple.
TensorVector apply_gauge(const GaugeOp& op, const Tuple& u) {
    TensorVector out(u.size());
    TensorVector unit = TensorVector::basis(u);
    for (std::size_t j = 1; j <= u.size(); ++j) {
        const ModeOperator& mo = op.per_slot[j - 1];
        out = out + apply_rho(j, [&](const FockVector& v) { return apply_mode_operator(mo, v); }, unit);
    }
    return out;
}

}  // namespace

ConstraintSystem assemble(const SlottedCurve& sc, std::int64_t cutoff, std::int64_t charge_total,
                          const AssembleOptions& opt) {
    if (sc.slots.empty()) throw std::invalid_argument("assemble: curve without outer points");
    sc.curve.validate();
    ConstraintSystem sys;
    sys.arity = sc.arity();
    sys.cutoff = cutoff;
    sys.charge_total = charge_total;
    sys.slot_charge_bound = opt.slot_charge_bound;
    sys.columns = enumerate_tuples(sys.arity, cutoff, charge_total, opt.slot_charge_bound);
    std::map<Tuple, std::int64_t> col_index;
    for (std::size_t i = 0; i < sys.columns.size(); ++i) col_index[sys.columns[i]] = static_cast<std::int64_t>(i);

    const std::int64_t form_pb = opt.form_pole_bound > 0 ? opt.form_pole_bound : cutoff + 2;
    const std::int64_t fun_pb = opt.function_pole_bound > 0 ? opt.function_pole_bound : cutoff + 1;
    const std::int64_t expansion_order = cutoff + std::max(form_pb, fun_pb) + opt.slot_charge_bound + 4;

    auto add_rows = [&](const std::vector<RationalSection>& sections, std::int64_t charge_shift) {
        for (const auto& x : sections) {
            GaugeOp op = make_gauge_op(sc, x, expansion_order);
            auto tests = enumerate_tuples(sys.arity, cutoff + opt.extra_test_degree, charge_total - charge_shift,
                                          opt.slot_charge_bound + 1);
            for (const auto& u : tests) {
                TensorVector w = apply_gauge(op, u);
                SparseRow row;
                bool in_window = true;
                for (const auto& [t, c] : w.terms()) {
                    auto it = col_index.find(t);
                    if (it == col_index.end()) {
                        in_window = false;
                        break;
                    }
                    row[it->second] = c;
                }
                if (in_window && !row.empty()) sys.rows.push_back(std::move(row));
            }
        }
    };
    std::vector<std::int64_t> form_orders(sc.curve.outer().size(), form_pb);
    std::vector<std::int64_t> fun_orders(sc.curve.outer().size(), fun_pb);
    add_rows(form_basis(sc.curve, form_orders), -1);     // psi[omega] lowers total charge
    add_rows(function_basis(sc.curve, fun_orders), +1);  // psibar[f] raises it
    return sys;
}

std::vector<DualFunctional> solve(const ConstraintSystem& s) {
    auto kernel = sparse_kernel(s.rows, static_cast<std::int64_t>(s.columns.size()));
    std::vector<DualFunctional> out;
    for (const auto& vec : kernel) {
        DualFunctional f(s.arity, s.cutoff);
        f.set_total_charge(s.charge_total);
        f.set_slot_charge_bound(s.slot_charge_bound);
        for (std::size_t i = 0; i < s.columns.size(); ++i)
            if (vec[i] != 0) f.set(s.columns[i], vec[i]);
        f.normalize();
        out.push_back(std::move(f));
    }
    return out;
}

DualFunctional solve_vacuum(const SlottedCurve& sc, std::int64_t cutoff, const AssembleOptions& opt) {
    // Solve on an enlarged window; truncation artifacts concentrate at the
    // window edge, so the trimmed interior is exact.
    const std::int64_t work_cutoff = cutoff + 2;
    AssembleOptions o = opt;
    o.slot_charge_bound = opt.slot_charge_bound + 1;
    o.form_pole_bound = o.form_pole_bound > 0 ? o.form_pole_bound : work_cutoff + 2;
    o.function_pole_bound = o.function_pole_bound > 0 ? o.function_pole_bound : work_cutoff + 1;
    std::optional<std::size_t> prev_dim;
    for (int escalation = 0; escalation < 6; ++escalation) {
        auto sys = assemble(sc, work_cutoff, sc.curve.arithmetic_genus() - 1, o);
        auto kernel = solve(sys);
        const std::size_t dim = inner_kernel_dimension(kernel, cutoff, opt.slot_charge_bound);
        if (prev_dim && *prev_dim == dim) {
            if (dim != 1)
                throw std::runtime_error("solve_vacuum: kernel dimension " + std::to_string(dim) +
                                         " (stable), expected 1");
            // pick the kernel vector with a nonzero inner part and trim it
            for (auto& f : kernel) {
                DualFunctional trimmed(f.arity(), cutoff);
                trimmed.set_total_charge(sc.curve.arithmetic_genus() - 1);
                trimmed.set_slot_charge_bound(opt.slot_charge_bound);
                for (const auto& [t, v] : f.values())
                    if (trimmed.in_window(t)) trimmed.set(t, v);
                if (trimmed.normalize()) return trimmed;
            }
            throw std::runtime_error("solve_vacuum: inner restriction unexpectedly zero");
        }
        prev_dim = dim;
        o.form_pole_bound += 2;
        o.function_pole_bound += 2;
    }
    throw std::runtime_error("solve_vacuum: kernel failed to stabilize under pole-bound escalation");
}

std::size_t inner_kernel_dimension(const std::vector<DualFunctional>& kernel, std::int64_t inner_cutoff,
                                   std::int64_t inner_bound) {
    // Row rank of the restriction to the inner window.
    std::vector<SparseRow> rows;
    std::map<Tuple, std::int64_t> idx;
    for (const auto& f : kernel) {
        SparseRow r;
        for (const auto& [t, v] : f.values()) {
            if (tuple_degree(t) > inner_cutoff) continue;
            bool inside = true;
            for (const auto& m : t) inside = inside && std::abs(m.charge()) <= inner_bound;
            if (!inside) continue;
            auto [it, fresh] = idx.try_emplace(t, static_cast<std::int64_t>(idx.size()));
            r[it->second] = v;
        }
        rows.push_back(std::move(r));
    }
    std::size_t rank = 0;
    {
        std::map<std::int64_t, SparseRow> pivots;
        for (auto r : rows) {
            for (auto it = r.begin(); it != r.end();) {
                auto hit = pivots.find(it->first);
                if (hit == pivots.end()) {
                    ++it;
                    continue;
                }
                const Rat factor = it->second / hit->second.begin()->second;
                it = r.erase(it);
                for (auto jt = std::next(hit->second.begin()); jt != hit->second.end(); ++jt) {
                    auto [kt, fresh] = r.try_emplace(jt->first, 0);
                    kt->second -= factor * jt->second;
                    if (kt->second == 0) r.erase(kt);
                }
                it = r.lower_bound(hit->first);
            }
            if (!r.empty()) {
                pivots.emplace(r.begin()->first, r);
                ++rank;
            }
        }
    }
    return rank;
}

Rat gauge_residual(const VacuumFunctional& phi, const SlottedCurve& sc, const RationalSection& x,
                   std::int64_t max_degree, std::int64_t slot_bound) {
    const std::int64_t shift = (x.kind == SectionKind::OneForm) ? -1 : +1;
    const std::int64_t order = max_degree + slot_bound + 12;
    GaugeOp op = make_gauge_op(sc, x, order);
    Rat worst(0);
    std::size_t tested = 0;
    for (const auto& u : enumerate_tuples(sc.arity(), max_degree, phi.total_charge() - shift, slot_bound)) {
        TensorVector w = apply_gauge(op, u);
        Rat v;
        try {
            v = phi.pair(w);
        } catch (const TruncationError&) {
            continue;  // image leaves the certified window at this cutoff
        }
        ++tested;
        if (abs(v) > worst) worst = abs(v);
    }
    if (tested == 0) throw TruncationError("gauge_residual: no test vector stayed inside the exact window");
    return worst;
}

// ------------------------------------------------------------ propagate ----

namespace {

class PropagatedVacuum : public VacuumFunctional {
  public:
    PropagatedVacuum(FunctionalPtr base, SlottedCurve sc, std::size_t new_slot, std::int64_t pole_bound)
        : base_(std::move(base)), sc_(std::move(sc)), new_slot_(new_slot), pole_bound_(pole_bound) {
        if (new_slot_ < 1 || new_slot_ > sc_.arity()) throw std::invalid_argument("propagate: bad slot");
        if (base_->arity() + 1 != sc_.arity()) throw std::invalid_argument("propagate: arity mismatch");
        total_charge_ = base_->total_charge();
    }

    std::size_t arity() const override { return sc_.arity(); }
    std::int64_t total_charge() const override { return total_charge_; }

    Rat value(const Tuple& t) const override {
        if (t.size() != arity()) throw std::invalid_argument("PropagatedVacuum: arity mismatch");
        if (tuple_charge(t) != total_charge_) return Rat(0);
        auto memo = memo_.find(t);
        if (memo != memo_.end()) return memo->second;
        Rat result = compute(t);
        memo_.emplace(t, result);
        return result;
    }

  private:
    Rat compute(const Tuple& t) const {
        const MayaDiagram& m = t[new_slot_ - 1];
        if (m.is_vacuum()) {
            Tuple rest;
            for (std::size_t i = 0; i < t.size(); ++i)
                if (i != new_slot_ - 1) rest.push_back(t[i]);
            return base_->value(rest);
        }
        // Peel the leftmost operator of the canonical word at the new slot.
        const bool bar = !m.mus().empty();
        MayaDiagram peeled = [&] {
            if (bar) {
                auto mus = m.mus();
                mus.erase(mus.begin());
                return MayaDiagram(mus, m.nus());
            }
            auto nus = m.nus();
            nus.pop_back();
            return MayaDiagram(m.mus(), nus);
        }();
        const std::int64_t n = bar ? (-m.mus().front().twice - 1) / 2 : (-m.nus().back().twice - 1) / 2;
        const RationalSection& aux = aux_section(bar ? 1 : 0, n);

        // Mode operator at the new slot applied to |peeled> recovers sign*|m|
        // plus strictly smaller corrections.
        const std::int64_t dp = peeled.degree(), pp = peeled.charge();
        const std::int64_t local_order = std::max<std::int64_t>(n + 2, (bar ? dp - pp : dp + pp) + 2);
        ModeOperator local = smear(bar ? FermionKind::PsiBar : FermionKind::Psi,
                                   expand_at(aux, sc_.curve, sc_.slots[new_slot_ - 1], local_order), SmearAs::Form);
        FockVector image = apply_mode_operator(local, FockVector(peeled));
        const Rat sigma = image.coeff(m);
        if (sigma == 0) throw std::logic_error("PropagatedVacuum: pole mode failed to recreate the diagram");

        // Gauge condition: (-1)^{prefix} sum_T image[T] V(..T..) + sum_{j != new} V(rho_j(op_j) ..peeled..) = 0
        std::int64_t prefix = 0;
        for (std::size_t i = 0; i + 1 < new_slot_; ++i) prefix += t[i].charge();
        const Rat prefix_sign = (prefix % 2 == 0) ? Rat(1) : Rat(-1);

        Rat acc(0);
        Tuple base_tuple = t;
        base_tuple[new_slot_ - 1] = peeled;
        TensorVector unit = TensorVector::basis(base_tuple);
        for (std::size_t j = 1; j <= arity(); ++j) {
            if (j == new_slot_) continue;
            const std::int64_t dj = t[j - 1].degree(), pj = t[j - 1].charge();
            const std::int64_t oj = std::max<std::int64_t>(n + 2, (bar ? dj - pj : dj + pj) + 2);
            ModeOperator mo = smear(bar ? FermionKind::PsiBar : FermionKind::Psi,
                                    expand_at(aux, sc_.curve, sc_.slots[j - 1], oj), SmearAs::Form);
            TensorVector w = apply_rho(j, [&](const FockVector& v) { return apply_mode_operator(mo, v); }, unit);
            for (const auto& [tt, c] : w.terms()) acc += value(tt) * c;
        }
        // corrections from the holomorphic tail at the new slot
        Rat corr(0);
        for (const auto& [mm, c] : image.terms()) {
            if (mm == m) continue;
            Tuple tt = t;
            tt[new_slot_ - 1] = mm;
            corr += value(tt) * c;
        }
        return (-prefix_sign * acc - corr) / sigma;
    }

    // Auxiliary global section with expansion xi^{-n-1} (+ regular tail) at
    // the new point, poles only at the other slots. kind 1: function (psibar
    // peel), kind 0: one-form (psi peel).
    const RationalSection& aux_section(int kind, std::int64_t n) const {
        auto key = std::make_pair(kind, n);
        auto it = aux_.find(key);
        if (it != aux_.end()) return it->second;
        std::map<std::int64_t, Rat> tc{{-n - 1, Rat(1)}};
        LaurentSeries target(std::move(tc), 0);
        for (std::int64_t bound = pole_bound_; bound <= pole_bound_ + 20; bound += 2) {
            auto sec = section_with_expansions(sc_.curve, kind == 1 ? SectionKind::Function : SectionKind::OneForm,
                                               {sc_.slots[new_slot_ - 1]}, {target}, bound, sc_.slots);
            if (sec) return aux_.emplace(key, std::move(*sec)).first->second;
        }
        throw std::runtime_error("propagate: auxiliary section not constructible at the tried pole bounds");
    }

    FunctionalPtr base_;
    SlottedCurve sc_;
    std::size_t new_slot_;
    std::int64_t pole_bound_;
    std::int64_t total_charge_;
    mutable std::map<Tuple, Rat> memo_;
    mutable std::map<std::pair<int, std::int64_t>, RationalSection> aux_;
};

class RestrictedVacuum : public VacuumFunctional {
  public:
    RestrictedVacuum(FunctionalPtr inner, std::size_t slot) : inner_(std::move(inner)), slot_(slot) {
        if (slot_ < 1 || slot_ > inner_->arity()) throw std::invalid_argument("restrict_slot: bad slot");
    }
    std::size_t arity() const override { return inner_->arity() - 1; }
    std::int64_t total_charge() const override { return inner_->total_charge(); }
    Rat value(const Tuple& t) const override {
        Tuple full = t;
        full.insert(full.begin() + static_cast<std::ptrdiff_t>(slot_ - 1), MayaDiagram::vacuum());
        return inner_->value(full);
    }

  private:
    FunctionalPtr inner_;
    std::size_t slot_;
};

}  // namespace

FunctionalPtr propagate(FunctionalPtr base, const SlottedCurve& extended, std::size_t new_slot,
                        std::int64_t pole_bound) {
    return std::make_shared<PropagatedVacuum>(std::move(base), extended, new_slot, pole_bound);
}

FunctionalPtr restrict_slot(FunctionalPtr phi, std::size_t slot) {
    return std::make_shared<RestrictedVacuum>(std::move(phi), slot);
}

// ------------------------------------------------------------- node ops ----

namespace {

// V(u) = Phi(|0>, |-1>, u) - Phi(|-1>, |0>, u)
class NodeRestricted : public VacuumFunctional {
  public:
    explicit NodeRestricted(FunctionalPtr inner) : inner_(std::move(inner)) {
        if (inner_->arity() < 2) throw std::invalid_argument("node_restrict: need the two node slots");
    }
    std::size_t arity() const override { return inner_->arity() - 2; }
    std::int64_t total_charge() const override { return inner_->total_charge() + 1; }
    Rat value(const Tuple& t) const override {
        Tuple a{MayaDiagram::vacuum(), MayaDiagram::charged_vacuum(-1)};
        a.insert(a.end(), t.begin(), t.end());
        Tuple b{MayaDiagram::charged_vacuum(-1), MayaDiagram::vacuum()};
        b.insert(b.end(), t.begin(), t.end());
        return inner_->value(a) - inner_->value(b);
    }

  private:
    FunctionalPtr inner_;
};

// The seed of the nodal extension: psi0(u) = sum_j phi(rho_j(psibar[f_j]) u)
// for the Tayl-shaped function f (f(P+) = -1, f(P-) = 0) on the normalization.
class NodeSeed : public VacuumFunctional {
  public:
    NodeSeed(FunctionalPtr base, SlottedCurve norm, RationalSection f)
        : base_(std::move(base)), sc_(std::move(norm)), f_(std::move(f)) {}
    std::size_t arity() const override { return base_->arity(); }
    std::int64_t total_charge() const override { return base_->total_charge() - 1; }
    Rat value(const Tuple& t) const override {
        if (tuple_charge(t) != total_charge()) return Rat(0);
        auto memo = memo_.find(t);
        if (memo != memo_.end()) return memo->second;
        TensorVector unit = TensorVector::basis(t);
        Rat acc(0);
        for (std::size_t j = 1; j <= arity(); ++j) {
            const std::int64_t dj = t[j - 1].degree(), pj = t[j - 1].charge();
            ModeOperator mo =
                smear(FermionKind::PsiBar, expand_at(f_, sc_.curve, sc_.slots[j - 1], dj - pj + 2), SmearAs::Function);
            TensorVector w = apply_rho(j, [&](const FockVector& v) { return apply_mode_operator(mo, v); }, unit);
            acc += base_->pair(w);
        }
        memo_.emplace(t, acc);
        return acc;
    }

  private:
    FunctionalPtr base_;
    SlottedCurve sc_;
    RationalSection f_;
    mutable std::map<Tuple, Rat> memo_;
};

}  // namespace

FunctionalPtr node_restrict(FunctionalPtr phi_on_normalization) {
    return std::make_shared<NodeRestricted>(std::move(phi_on_normalization));
}

NodeExtension node_extend(FunctionalPtr phi, const SlottedCurve& nodal, std::int64_t pole_bound) {
    if (nodal.curve.glue.size() != 1) throw std::invalid_argument("node_extend: exactly one node expected");
    if (phi->arity() != nodal.arity()) throw std::invalid_argument("node_extend: arity mismatch");
    const PointRef p_plus = nodal.curve.glue[0].first;
    const PointRef p_minus = nodal.curve.glue[0].second;
    CurveSpec norm = nodal.curve.normalization();

    // f with f(P+) = -1, f(P-) = 0, poles only at the outer slots.
    RationalSection f;
    {
        LaurentSeries at_plus = LaurentSeries::monomial(Rat(-1), 0).truncated(1);
        LaurentSeries at_minus = LaurentSeries::zero().truncated(1);
        std::optional<RationalSection> sec;
        std::vector<PointRef> allowed = nodal.slots;
        for (std::int64_t bound = pole_bound; bound <= pole_bound + 20; bound += 2) {
            sec = section_with_expansions(norm, SectionKind::Function, {p_plus, p_minus}, {at_plus, at_minus}, bound,
                                          allowed);
            if (sec) break;
        }
        if (!sec) throw std::runtime_error("node_extend: Taylor-shaped function not constructible");
        f = std::move(*sec);
    }

    SlottedCurve seed_curve{norm, nodal.slots};
    FunctionalPtr seed = std::make_shared<NodeSeed>(phi, seed_curve, f);

    // prepend P-, then P+
    SlottedCurve with_minus{norm, {}};
    with_minus.slots.push_back(p_minus);
    for (const auto& r : nodal.slots) with_minus.slots.push_back(r);
    FunctionalPtr step1 = propagate(seed, with_minus, 1, pole_bound);

    SlottedCurve with_both{norm, {}};
    with_both.slots.push_back(p_plus);
    with_both.slots.push_back(p_minus);
    for (const auto& r : nodal.slots) with_both.slots.push_back(r);
    FunctionalPtr step2 = propagate(step1, with_both, 1, pole_bound);

    return NodeExtension{step2, with_both};
}

}  // namespace gv
