#include "ghostvac/curve.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "ghostvac/linalg.hpp"

namespace gv {

// ---------------------------------------------------------------- Poly ----

Poly::Poly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }

void Poly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly Poly::constant(const Rat& c) { return Poly({c}); }

Poly Poly::monomial(const Rat& c, std::size_t deg) {
    std::vector<Rat> v(deg + 1, Rat(0));
    v[deg] = c;
    return Poly(std::move(v));
}

Poly Poly::linear_root(const Rat& a) { return Poly({-a, Rat(1)}); }

Rat Poly::leading() const {
    if (c_.empty()) throw std::domain_error("Poly::leading of zero");
    return c_.back();
}

Rat Poly::eval(const Rat& a) const {
    Rat acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * a + *it;
    return acc;
}

Poly Poly::operator+(const Poly& o) const {
    std::vector<Rat> v(std::max(c_.size(), o.c_.size()), Rat(0));
    for (std::size_t i = 0; i < c_.size(); ++i) v[i] += c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) v[i] += o.c_[i];
    return Poly(std::move(v));
}

Poly Poly::operator-(const Poly& o) const { return *this + o * Rat(-1); }

Poly Poly::operator*(const Poly& o) const {
    if (c_.empty() || o.c_.empty()) return Poly();
    std::vector<Rat> v(c_.size() + o.c_.size() - 1, Rat(0));
    for (std::size_t i = 0; i < c_.size(); ++i)
        for (std::size_t j = 0; j < o.c_.size(); ++j) v[i + j] += c_[i] * o.c_[j];
    return Poly(std::move(v));
}

Poly Poly::operator*(const Rat& s) const {
    if (s == 0) return Poly();
    std::vector<Rat> v = c_;
    for (auto& x : v) x *= s;
    return Poly(std::move(v));
}

Poly Poly::derivative() const {
    if (c_.size() <= 1) return Poly();
    std::vector<Rat> v(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * Rat(static_cast<long>(i));
    return Poly(std::move(v));
}

Poly Poly::shifted(const Rat& a) const {
    // Horner: p(t + a)
    Poly acc;
    Poly lin({a, Rat(1)});
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * lin + Poly::constant(*it);
    return acc;
}

Poly Poly::reversed(std::int64_t d) const {
    if (d < degree()) throw std::invalid_argument("Poly::reversed: target degree too small");
    std::vector<Rat> v(d + 1, Rat(0));
    for (std::size_t i = 0; i < c_.size(); ++i) v[d - i] = c_[i];
    return Poly(std::move(v));
}

std::pair<Poly, Poly> Poly::divmod(const Poly& d) const {
    if (d.is_zero()) throw std::domain_error("Poly::divmod by zero");
    Poly rem = *this;
    std::vector<Rat> q;
    const std::int64_t dd = d.degree();
    while (!rem.is_zero() && rem.degree() >= dd) {
        const std::int64_t k = rem.degree() - dd;
        const Rat f = rem.leading() / d.leading();
        if (static_cast<std::int64_t>(q.size()) < k + 1) q.resize(k + 1, Rat(0));
        q[k] += f;
        rem = rem - d * Poly::monomial(f, k);
    }
    return {Poly(std::move(q)), rem};
}

Poly gcd(const Poly& a, const Poly& b) {
    Poly x = a, y = b;
    while (!y.is_zero()) {
        auto [q, r] = x.divmod(y);
        x = y;
        y = r;
    }
    if (x.is_zero()) return x;
    return x * (Rat(1) / x.leading());  // monic
}

// -------------------------------------------------------------- RatFun ----

RatFun::RatFun(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::domain_error("RatFun: zero denominator");
    Poly g = gcd(num_, den_);
    if (!g.is_zero() && g.degree() > 0) {
        num_ = num_.divmod(g).first;
        den_ = den_.divmod(g).first;
    }
    const Rat lead = den_.leading();
    if (lead != 1) {
        num_ = num_ * (Rat(1) / lead);
        den_ = den_ * (Rat(1) / lead);
    }
    if (num_.is_zero()) den_ = Poly::constant(Rat(1));
}

RatFun RatFun::operator+(const RatFun& o) const { return RatFun(num_ * o.den_ + o.num_ * den_, den_ * o.den_); }
RatFun RatFun::operator-(const RatFun& o) const { return *this + o * Rat(-1); }
RatFun RatFun::operator*(const RatFun& o) const { return RatFun(num_ * o.num_, den_ * o.den_); }
RatFun RatFun::operator*(const Rat& s) const { return RatFun(num_ * s, den_); }

RatFun RatFun::derivative() const {
    return RatFun(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

Rat RatFun::eval(const Rat& a) const {
    const Rat d = den_.eval(a);
    if (d == 0) throw std::domain_error("RatFun::eval at a pole");
    return num_.eval(a) / d;
}

Rat RatFun::eval_infinity() const {
    const std::int64_t dn = num_.degree(), dd = den_.degree();
    if (num_.is_zero()) return Rat(0);
    if (dn > dd) throw std::domain_error("RatFun::eval_infinity at a pole");
    if (dn < dd) return Rat(0);
    return num_.leading() / den_.leading();
}

// ----------------------------------------------------------- CurveSpec ----

CurveSpec CurveSpec::projective_line(const std::vector<MarkedPoint>& points) {
    CurveSpec c;
    c.components.push_back(Component{points});
    c.validate();
    return c;
}

std::vector<PointRef> CurveSpec::outer() const {
    std::vector<PointRef> out;
    for (int ci = 0; ci < static_cast<int>(components.size()); ++ci)
        for (int pi = 0; pi < static_cast<int>(components[ci].points.size()); ++pi) {
            PointRef r{ci, pi};
            if (!is_glued(r)) out.push_back(r);
        }
    return out;
}

bool CurveSpec::is_glued(const PointRef& r) const {
    for (const auto& [a, b] : glue)
        if (a == r || b == r) return true;
    return false;
}

std::int64_t CurveSpec::arithmetic_genus() const {
    return static_cast<std::int64_t>(glue.size()) + 1 - static_cast<std::int64_t>(components.size());
}

CurveSpec CurveSpec::normalization(std::vector<PointRef>* node_points) const {
    CurveSpec c = *this;
    c.glue.clear();
    if (node_points) {
        node_points->clear();
        for (const auto& [a, b] : glue) {
            node_points->push_back(a);
            node_points->push_back(b);
        }
    }
    return c;
}

void CurveSpec::validate() const {
    if (components.empty()) throw std::invalid_argument("CurveSpec: no components");
    for (const auto& comp : components)
        for (std::size_t i = 0; i < comp.points.size(); ++i)
            for (std::size_t j = i + 1; j < comp.points.size(); ++j)
                if (comp.points[i].at == comp.points[j].at)
                    throw std::invalid_argument("CurveSpec: coincident marked points");
    for (const auto& [a, b] : glue) {
        if (a == b) throw std::invalid_argument("CurveSpec: a point glued to itself");
        (void)marked(a);
        (void)marked(b);
    }
    // every component must carry at least one outer point
    std::vector<bool> has_outer(components.size(), false);
    for (const auto& r : outer()) has_outer[r.component] = true;
    for (bool h : has_outer)
        if (!h) throw std::invalid_argument("CurveSpec: component without an outer point");
    for (const auto& comp : components)
        for (const auto& mp : comp.points)
            if (mp.reparam) {
                if (mp.reparam->zero_below_trunc() || mp.reparam->ord() != 1)
                    throw std::invalid_argument("CurveSpec: reparametrization must vanish to first order");
            }
}

// ------------------------------------------------------------ expand_at ----

namespace {

// Expansion of f(t) in the standard chart at a point, exact below `order`.
LaurentSeries expand_ratfun(const RatFun& f, const Point& at, std::int64_t order) {
    if (f.is_zero()) return LaurentSeries::zero();
    Poly n = f.num(), d = f.den();
    LaurentSeries ns, ds;
    if (!at.infinite) {
        Poly nsh = n.shifted(at.a), dsh = d.shifted(at.a);
        std::map<std::int64_t, Rat> nc, dc;
        for (std::size_t i = 0; i < nsh.coeffs().size(); ++i)
            if (nsh.coeffs()[i] != 0) nc[static_cast<std::int64_t>(i)] = nsh.coeffs()[i];
        for (std::size_t i = 0; i < dsh.coeffs().size(); ++i)
            if (dsh.coeffs()[i] != 0) dc[static_cast<std::int64_t>(i)] = dsh.coeffs()[i];
        ns = LaurentSeries(std::move(nc), LaurentSeries::kExact);
        ds = LaurentSeries(std::move(dc), LaurentSeries::kExact);
    } else {
        // t = 1/xi: p(1/xi) = xi^{-deg} * reversed(p)
        std::map<std::int64_t, Rat> nc, dc;
        const std::int64_t dn = n.degree(), dd = d.degree();
        Poly nr = n.reversed(dn), dr = d.reversed(dd);
        for (std::size_t i = 0; i < nr.coeffs().size(); ++i)
            if (nr.coeffs()[i] != 0) nc[static_cast<std::int64_t>(i) - dn] = nr.coeffs()[i];
        for (std::size_t i = 0; i < dr.coeffs().size(); ++i)
            if (dr.coeffs()[i] != 0) dc[static_cast<std::int64_t>(i) - dd] = dr.coeffs()[i];
        ns = LaurentSeries(std::move(nc), LaurentSeries::kExact);
        ds = LaurentSeries(std::move(dc), LaurentSeries::kExact);
    }
    // Truncate the denominator so its inverse is known far enough.
    const std::int64_t margin = order - ns.ord() + 2 * ds.ord() + 2;
    LaurentSeries dinv = ds.truncated(std::max<std::int64_t>(margin, ds.ord() + 1)).inverse();
    return (ns * dinv).truncated(order);
}

}  // namespace

LaurentSeries expand_at(const RationalSection& x, const CurveSpec& c, const PointRef& at, std::int64_t order) {
    const MarkedPoint& mp = c.marked(at);
    const RatFun& part = x.parts.at(at.component);
    // Work in the standard chart first; need extra terms if a reparam follows.
    const std::int64_t pad = mp.reparam ? order + 4 : order;
    LaurentSeries base = expand_ratfun(part, mp.at, pad + 2);
    if (x.kind == SectionKind::OneForm && mp.at.infinite) {
        // dt = -dxi/xi^2
        base = (base * LaurentSeries::monomial(Rat(-1), -2)).truncated(pad);
    } else if (x.kind == SectionKind::VectorField && mp.at.infinite) {
        // d/dt = -xi^2 d/dxi
        base = (base * LaurentSeries::monomial(Rat(-1), 2)).truncated(pad);
    } else {
        base = base.truncated(pad);
    }
    if (!mp.reparam) return base.truncated(order);

    // eta = h(xi): rewrite the expansion in eta. Precision is capped by how
    // far h itself is known; the result's trunc reports what is provable.
    const LaurentSeries& h = *mp.reparam;
    const std::int64_t want = order + 4 - std::min<std::int64_t>(base.ord(), 0);
    const std::int64_t hp = std::min(h.trunc(), want);
    LaurentSeries hinv = comp_inverse(h.truncated(hp), hp);
    switch (x.kind) {
        case SectionKind::Function:
            return compose(base, hinv).truncated(order);
        case SectionKind::OneForm:
            return (compose(base, hinv) * hinv.derivative()).truncated(order);
        case SectionKind::VectorField: {
            LaurentSeries hprime_at = compose(h.derivative(), hinv);
            return (compose(base, hinv) * hprime_at).truncated(order);
        }
    }
    throw std::logic_error("expand_at: unreachable");
}

// ----------------------------------------------------- ambient bases ----

namespace {

RationalSection section_on(const CurveSpec& c, SectionKind kind, int component, RatFun f) {
    RationalSection s;
    s.kind = kind;
    s.parts.assign(c.components.size(), RatFun());
    s.parts[component] = std::move(f);
    return s;
}

// pole_orders per outer point, aligned with CurveSpec::outer().
std::vector<std::vector<std::pair<PointRef, std::int64_t>>> poles_by_component(
    const CurveSpec& c, const std::vector<std::int64_t>& pole_orders) {
    auto out = c.outer();
    if (pole_orders.size() != out.size())
        throw std::invalid_argument("pole_orders must match the number of outer points");
    std::vector<std::vector<std::pair<PointRef, std::int64_t>>> per(c.components.size());
    for (std::size_t i = 0; i < out.size(); ++i) per[out[i].component].push_back({out[i], pole_orders[i]});
    return per;
}

RatFun inv_power(const Rat& a, std::int64_t k) {  // (t-a)^{-k}
    Poly den = Poly::constant(Rat(1));
    for (std::int64_t i = 0; i < k; ++i) den = den * Poly::linear_root(a);
    return RatFun(Poly::constant(Rat(1)), den);
}

// Functions with poles bounded by the list on one P^1 component: basis
// {1} u {(t-a)^{-k}} u {t^k}.
std::vector<RatFun> component_function_basis(const std::vector<std::pair<PointRef, std::int64_t>>& poles,
                                             const CurveSpec& c) {
    std::vector<RatFun> basis;
    basis.push_back(RatFun::constant(Rat(1)));
    for (const auto& [ref, bound] : poles) {
        const Point& pt = c.marked(ref).at;
        for (std::int64_t k = 1; k <= bound; ++k) {
            if (pt.infinite)
                basis.push_back(RatFun(Poly::monomial(Rat(1), k), Poly::constant(Rat(1))));
            else
                basis.push_back(inv_power(pt.a, k));
        }
    }
    return basis;
}

// One-forms (the coefficient of dt) with poles bounded by the list on one
// component: higher-order parts plus simple-pole differences between
// consecutive pole points.
std::vector<RatFun> component_form_basis(const std::vector<std::pair<PointRef, std::int64_t>>& poles,
                                         const CurveSpec& c) {
    std::vector<RatFun> basis;
    std::vector<Point> simple_points;
    for (const auto& [ref, bound] : poles) {
        const Point& pt = c.marked(ref).at;
        if (bound >= 1) simple_points.push_back(pt);
        for (std::int64_t k = 2; k <= bound; ++k) {
            if (pt.infinite)
                basis.push_back(RatFun(Poly::monomial(Rat(1), k - 2), Poly::constant(Rat(1))));
            else
                basis.push_back(inv_power(pt.a, k));
        }
    }
    for (std::size_t i = 0; i + 1 < simple_points.size(); ++i) {
        const Point &p = simple_points[i], &q = simple_points[i + 1];
        // residue +1 at p, -1 at q; dt/(t-a) alone has residue -1 at infinity
        if (p.infinite)
            basis.push_back(inv_power(q.a, 1) * Rat(-1));
        else if (q.infinite)
            basis.push_back(inv_power(p.a, 1));
        else
            basis.push_back(inv_power(p.a, 1) - inv_power(q.a, 1));
    }
    return basis;
}

Rat residue_at(const RationalSection& s, const CurveSpec& c, const PointRef& r) {
    LaurentSeries e = expand_at(s, c, r, 1);
    return e.coeff(-1);
}

Rat value_at(const RatFun& f, const Point& p) { return p.infinite ? f.eval_infinity() : f.eval(p.a); }

// Assemble glue constraints and return the kernel combinations of the
// ambient elements.
std::vector<RationalSection> glue_kernel(const CurveSpec& c, SectionKind kind,
                                         const std::vector<RationalSection>& ambient) {
    if (c.glue.empty()) return ambient;
    std::vector<SparseRow> rows;
    for (const auto& [a, b] : c.glue) {
        SparseRow row;
        for (std::size_t j = 0; j < ambient.size(); ++j) {
            Rat v(0);
            if (kind == SectionKind::Function) {
                // equal values across the node
                const auto& fa = ambient[j].parts[a.component];
                const auto& fb = ambient[j].parts[b.component];
                v = value_at(fa, c.marked(a).at) - value_at(fb, c.marked(b).at);
            } else {
                // opposite residues across the node
                v = residue_at(ambient[j], c, a) + residue_at(ambient[j], c, b);
            }
            if (v != 0) row[static_cast<std::int64_t>(j)] = v;
        }
        rows.push_back(std::move(row));
    }
    auto kernel = sparse_kernel(rows, static_cast<std::int64_t>(ambient.size()));
    std::vector<RationalSection> out;
    for (const auto& vec : kernel) {
        RationalSection s;
        s.kind = kind;
        s.parts.assign(c.components.size(), RatFun());
        for (std::size_t j = 0; j < ambient.size(); ++j)
            if (vec[j] != 0)
                for (std::size_t ci = 0; ci < s.parts.size(); ++ci)
                    s.parts[ci] = s.parts[ci] + ambient[j].parts[ci] * vec[j];
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace

std::vector<RationalSection> function_basis(const CurveSpec& c, const std::vector<std::int64_t>& pole_orders) {
    auto per = poles_by_component(c, pole_orders);
    std::vector<RationalSection> ambient;
    for (std::size_t ci = 0; ci < c.components.size(); ++ci)
        for (auto& f : component_function_basis(per[ci], c))
            ambient.push_back(section_on(c, SectionKind::Function, static_cast<int>(ci), std::move(f)));
    return glue_kernel(c, SectionKind::Function, ambient);
}

std::vector<RationalSection> form_basis(const CurveSpec& c, const std::vector<std::int64_t>& pole_orders) {
    auto per = poles_by_component(c, pole_orders);
    std::vector<RationalSection> ambient;
    for (std::size_t ci = 0; ci < c.components.size(); ++ci) {
        auto poles = per[ci];
        if (!c.glue.empty()) {
            // allow simple poles at this component's glued points
            for (int pi = 0; pi < static_cast<int>(c.components[ci].points.size()); ++pi) {
                PointRef r{static_cast<int>(ci), pi};
                if (c.is_glued(r)) poles.push_back({r, 1});
            }
        }
        for (auto& f : component_form_basis(poles, c))
            ambient.push_back(section_on(c, SectionKind::OneForm, static_cast<int>(ci), std::move(f)));
    }
    return glue_kernel(c, SectionKind::OneForm, ambient);
}

// ----------------------------------------- prescribed-expansion solver ----

namespace {

// Ambient meromorphic sections of the requested kind with poles <= pole_bound
// at the outer points and poles up to the target depth at the prescription
// points.
std::vector<RationalSection> prescription_ambient(const CurveSpec& c, SectionKind kind,
                                                  const std::vector<PointRef>& where,
                                                  const std::vector<std::int64_t>& depth,
                                                  std::int64_t pole_bound,
                                                  const std::vector<PointRef>& pole_points) {
    std::vector<std::vector<std::pair<PointRef, std::int64_t>>> per(c.components.size());
    for (const auto& r : pole_points) {
        bool prescribed = false;
        for (const auto& w : where) prescribed = prescribed || (w == r);
        if (!prescribed) per[r.component].push_back({r, pole_bound});
    }
    for (std::size_t i = 0; i < where.size(); ++i)
        if (depth[i] > 0) per[where[i].component].push_back({where[i], depth[i]});

    std::vector<RationalSection> ambient;
    for (std::size_t ci = 0; ci < c.components.size(); ++ci) {
        std::vector<RatFun> fs;
        switch (kind) {
            case SectionKind::Function:
                fs = component_function_basis(per[ci], c);
                break;
            case SectionKind::OneForm:
                fs = component_form_basis(per[ci], c);
                break;
            case SectionKind::VectorField: {
                // fields g(t) d/dt: deg g <= 2 gives the global sections; a
                // pole of order k at finite a adds (t-a)^{-k}, at infinity t^{2+k}.
                fs.push_back(RatFun::constant(Rat(1)));
                fs.push_back(RatFun(Poly::monomial(Rat(1), 1), Poly::constant(Rat(1))));
                fs.push_back(RatFun(Poly::monomial(Rat(1), 2), Poly::constant(Rat(1))));
                for (const auto& [ref, bound] : per[ci]) {
                    const Point& pt = c.marked(ref).at;
                    for (std::int64_t k = 1; k <= bound; ++k) {
                        if (pt.infinite)
                            fs.push_back(RatFun(Poly::monomial(Rat(1), 2 + k), Poly::constant(Rat(1))));
                        else
                            fs.push_back(inv_power(pt.a, k));
                    }
                }
                break;
            }
        }
        for (auto& f : fs) ambient.push_back(section_on(c, kind, static_cast<int>(ci), std::move(f)));
    }
    return ambient;
}

}  // namespace

std::optional<RationalSection> section_with_expansions(const CurveSpec& c, SectionKind kind,
                                                       const std::vector<PointRef>& where,
                                                       const std::vector<LaurentSeries>& targets,
                                                       std::int64_t pole_bound,
                                                       const std::vector<PointRef>& pole_points) {
    if (where.size() != targets.size()) throw std::invalid_argument("section_with_expansions: size mismatch");
    std::vector<std::int64_t> depth(where.size(), 0);
    for (std::size_t i = 0; i < where.size(); ++i) {
        if (targets[i].trunc() == LaurentSeries::kExact)
            throw std::invalid_argument("section_with_expansions: targets must carry a finite trunc");
        depth[i] = std::max<std::int64_t>(0, -(targets[i].zero_below_trunc() ? 0 : targets[i].ord()));
    }
    auto ambient = prescription_ambient(c, kind, where, depth, pole_bound,
                                        pole_points.empty() ? c.outer() : pole_points);
    // Rows: one per (prescription point, exponent below that target's trunc).
    std::vector<SparseRow> rows;
    std::vector<Rat> rhs;
    for (std::size_t i = 0; i < where.size(); ++i) {
        const std::int64_t lo = -depth[i] - 1, hi = targets[i].trunc();
        std::vector<LaurentSeries> expansions;
        expansions.reserve(ambient.size());
        for (const auto& amb : ambient) expansions.push_back(expand_at(amb, c, where[i], hi));
        for (std::int64_t e = lo; e < hi; ++e) {
            SparseRow row;
            for (std::size_t j = 0; j < ambient.size(); ++j) {
                Rat v = expansions[j].coeff(e);
                if (v != 0) row[static_cast<std::int64_t>(j)] = v;
            }
            rows.push_back(std::move(row));
            rhs.push_back(targets[i].coeff_or_zero(e));
        }
    }
    auto sol = sparse_solve(rows, rhs, static_cast<std::int64_t>(ambient.size()));
    if (!sol.consistent) return std::nullopt;
    RationalSection s;
    s.kind = kind;
    s.parts.assign(c.components.size(), RatFun());
    for (std::size_t j = 0; j < ambient.size(); ++j)
        if (sol.solution[j] != 0)
            for (std::size_t ci = 0; ci < s.parts.size(); ++ci)
                s.parts[ci] = s.parts[ci] + ambient[j].parts[ci] * sol.solution[j];
    return s;
}

// ------------------------------------------------- sewing vector field ----

SewingField sewing_vector_field(const CurveSpec& normalization, const PointRef& p_plus, const PointRef& p_minus,
                                std::int64_t order, std::int64_t pole_bound) {
    if (!normalization.glue.empty())
        throw std::invalid_argument("sewing_vector_field expects the normalization (no glue)");
    for (std::int64_t bound = pole_bound; bound <= pole_bound + 12; bound += 2) {
        // prescribe 1-jets xi/2 at both node points
        LaurentSeries jet = LaurentSeries::monomial(Rat(1, 2), 1).truncated(2);
        auto sec = section_with_expansions(normalization, SectionKind::VectorField, {p_plus, p_minus},
                                           {jet, jet}, bound);
        if (!sec) continue;
        SewingField out;
        out.field = *sec;
        // Adjusted coordinate: solve l(xi) z'(xi) = z(xi)/2 with z = xi + ...
        auto adjust = [&](const PointRef& at) {
            LaurentSeries l = expand_at(out.field, normalization, at, order + 1);
            LaurentSeries z = LaurentSeries::monomial(Rat(1), 1, order);
            for (std::int64_t k = 2; k < order; ++k) {
                // coefficient of xi^k in l z' - z/2 must vanish
                LaurentSeries resid = (l * z.derivative()).truncated(k + 1) - z * Rat(1, 2);
                Rat bad = resid.coeff_or_zero(k);
                if (bad != 0) z = z + LaurentSeries::monomial(-bad * Rat(2) / Rat(k - 1), k, order);
            }
            return z;
        };
        out.coord_plus = adjust(p_plus);
        out.coord_minus = adjust(p_minus);
        return out;
    }
    throw std::runtime_error("sewing_vector_field: jet constraints infeasible at the tried pole bounds");
}

// ----------------------------------------------------- family form lift ----

std::vector<RationalSection> family_form_lift(const CurveSpec& normalization, const PointRef& p_plus,
                                              const PointRef& p_minus, const std::vector<std::vector<Rat>>& a,
                                              std::int64_t q_order, std::int64_t match_order) {
    if (!normalization.glue.empty())
        throw std::invalid_argument("family_form_lift expects the normalization (no glue)");
    auto entry = [&](std::int64_t m, std::int64_t n) -> Rat {
        if (m < 0 || n < 0 || m >= static_cast<std::int64_t>(a.size())) return Rat(0);
        const auto& row = a[m];
        if (n >= static_cast<std::int64_t>(row.size())) return Rat(0);
        return row[n];
    };
    std::vector<RationalSection> out;
    for (std::int64_t n = 0; n < q_order; ++n) {
        // tau^(n)_+ = -(sum_m a[m][n] z^{m-n-1}) dz through z^{match_order-1}
        std::map<std::int64_t, Rat> cp, cm;
        for (std::int64_t e = -n - 1; e < match_order; ++e) {
            Rat vp = -entry(e + n + 1, n);
            Rat vm = entry(n, e + n + 1);
            if (vp != 0) cp[e] = vp;
            if (vm != 0) cm[e] = vm;
        }
        LaurentSeries tp(std::move(cp), match_order), tm(std::move(cm), match_order);
        std::optional<RationalSection> sec;
        for (std::int64_t bound = 2 * match_order + 2 * n + 4; bound <= 2 * match_order + 2 * n + 24; bound += 4) {
            sec = section_with_expansions(normalization, SectionKind::OneForm, {p_plus, p_minus}, {tp, tm}, bound);
            if (sec) break;
        }
        if (!sec) throw std::runtime_error("family_form_lift: no form matches the prescribed expansions");
        out.push_back(std::move(*sec));
    }
    return out;
}

std::vector<RationalSection> family_function_lift(const CurveSpec& normalization, const PointRef& p_plus,
                                                  const PointRef& p_minus, const std::vector<std::vector<Rat>>& b,
                                                  std::int64_t q_order, std::int64_t match_order) {
    if (!normalization.glue.empty())
        throw std::invalid_argument("family_function_lift expects the normalization (no glue)");
    auto entry = [&](std::int64_t n, std::int64_t m) -> Rat {
        if (n < 0 || m < 0 || n >= static_cast<std::int64_t>(b.size())) return Rat(0);
        const auto& row = b[n];
        if (m >= static_cast<std::int64_t>(row.size())) return Rat(0);
        return row[m];
    };
    std::vector<RationalSection> out;
    for (std::int64_t k = 0; k < q_order; ++k) {
        std::map<std::int64_t, Rat> cp, cm;
        for (std::int64_t e = -k; e < match_order; ++e) {
            Rat vp = entry(e + k, k);
            Rat vm = entry(k, e + k);
            if (vp != 0) cp[e] = vp;
            if (vm != 0) cm[e] = vm;
        }
        LaurentSeries tp(std::move(cp), match_order), tm(std::move(cm), match_order);
        std::optional<RationalSection> sec;
        for (std::int64_t bound = 2 * match_order + 2 * k + 4; bound <= 2 * match_order + 2 * k + 24; bound += 4) {
            sec = section_with_expansions(normalization, SectionKind::Function, {p_plus, p_minus}, {tp, tm}, bound);
            if (sec) break;
        }
        if (!sec) throw std::runtime_error("family_function_lift: no function matches the prescribed expansions");
        out.push_back(std::move(*sec));
    }
    return out;
}

}  // namespace gv
