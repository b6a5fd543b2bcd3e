#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "ghostvac/curve.hpp"

using namespace gv;

namespace {

MarkedPoint pt(long a) { return MarkedPoint{Point::finite(Rat(a)), std::nullopt}; }
MarkedPoint pt_inf() { return MarkedPoint{Point::infinity(), std::nullopt}; }

CurveSpec p1_origin() { return CurveSpec::projective_line({pt(0)}); }

CurveSpec nodal_p1() {
    // P+ = 0 glued to P- = infinity, outer point 1: arithmetic genus 1
    CurveSpec c;
    c.components.push_back(Component{{pt(0), pt_inf(), pt(1)}});
    c.glue.push_back({PointRef{0, 0}, PointRef{0, 1}});
    c.validate();
    return c;
}

CurveSpec two_glued() {
    // two P^1 components glued at one pair, one outer point each: genus 0
    CurveSpec c;
    c.components.push_back(Component{{pt(0), pt(1)}});   // P+ = 0, Q1 = 1
    c.components.push_back(Component{{pt(0), pt(-1)}});  // P- = 0, Q2 = -1
    c.glue.push_back({PointRef{0, 0}, PointRef{1, 0}});
    c.validate();
    return c;
}

}  // namespace

TEST_CASE("function basis on the one- and two-pointed line") {
    auto b1 = function_basis(p1_origin(), {3});
    CHECK(b1.size() == 4);  // 1, 1/z, 1/z^2, 1/z^3
    auto c2 = CurveSpec::projective_line({pt(0), pt_inf()});
    auto b2 = function_basis(c2, {1, 1});
    CHECK(b2.size() == 3);  // 1, 1/t, t
    // Riemann-Roch count dim = deg + 1 on P^1
    for (std::int64_t m = 0; m <= 5; ++m)
        CHECK(function_basis(p1_origin(), {m}).size() == static_cast<std::size_t>(m + 1));
    auto c3 = CurveSpec::projective_line({pt(0), pt(1), pt_inf()});
    for (std::int64_t m = 1; m <= 3; ++m)
        CHECK(function_basis(c3, {m, m, m}).size() == static_cast<std::size_t>(3 * m + 1));
}

TEST_CASE("form basis dimensions and residue theorem") {
    auto b = form_basis(p1_origin(), {4});
    CHECK(b.size() == 3);  // dz/z^2, dz/z^3, dz/z^4
    auto c2 = CurveSpec::projective_line({pt(0), pt_inf()});
    auto simple = form_basis(c2, {1, 1});
    CHECK(simple.size() == 1);  // dt/t up to scale
    auto e0 = expand_at(simple[0], c2, {0, 0}, 2);
    auto einf = expand_at(simple[0], c2, {0, 1}, 2);
    CHECK(e0.coeff(-1) == -einf.coeff(-1));  // residues +-1
    // residues of every basis form sum to zero over all poles
    auto c3 = CurveSpec::projective_line({pt(0), pt(2), pt_inf()});
    for (const auto& w : form_basis(c3, {3, 2, 2})) {
        Rat total(0);
        for (const auto& r : c3.outer()) total += expand_at(w, c3, r, 1).coeff(-1);
        CHECK(total == 0);
    }
    CHECK(form_basis(c3, {3, 2, 2}).size() == 3 + 2 + 2 - 1);
}

TEST_CASE("nodal curves: value matching and dualizing sections") {
    auto g2 = two_glued();
    CHECK(g2.arithmetic_genus() == 0);
    // functions with poles <= 2 at each outer point: (3+3) - 1 matching = 5
    CHECK(function_basis(g2, {2, 2}).size() == 5);
    for (const auto& f : function_basis(g2, {2, 2})) {
        Rat va = f.parts[0].eval(Rat(0));
        Rat vb = f.parts[1].eval(Rat(0));
        CHECK(va == vb);
    }
    auto n1 = nodal_p1();
    CHECK(n1.arithmetic_genus() == 1);
    // dualizing sections with poles <= b at the outer point have dim b
    for (std::int64_t bnd = 1; bnd <= 4; ++bnd)
        CHECK(form_basis(n1, {bnd}).size() == static_cast<std::size_t>(bnd));
    // opposite residues at the node, with the dt/t direction present
    bool found_res = false;
    for (const auto& w : form_basis(n1, {2})) {
        Rat rplus = expand_at(w, n1, {0, 0}, 1).coeff(-1);
        Rat rminus = expand_at(w, n1, {0, 1}, 1).coeff(-1);
        CHECK(rplus + rminus == 0);
        if (rplus != 0) found_res = true;
    }
    CHECK(found_res);
}

TEST_CASE("expansions in standard charts") {
    auto c = CurveSpec::projective_line({pt(0), pt(1), pt_inf()});
    RationalSection inv_z{SectionKind::Function, {RatFun(Poly::constant(Rat(1)), Poly::linear_root(Rat(0)))}};
    auto e = expand_at(inv_z, c, {0, 0}, 3);
    CHECK(e.coeff(-1) == 1);
    CHECK(e.coeff(0) == 0);
    // dt/t at infinity: -dxi/xi
    RationalSection form_dt_t{SectionKind::OneForm, {RatFun(Poly::constant(Rat(1)), Poly::linear_root(Rat(0)))}};
    auto ei = expand_at(form_dt_t, c, {0, 2}, 3);
    CHECK(ei.coeff(-1) == -1);
    CHECK(ei.coeff(0) == 0);
    // 1/(t-1) at 0: -1 - xi - xi^2 - ...
    RationalSection f{SectionKind::Function, {RatFun(Poly::constant(Rat(1)), Poly::linear_root(Rat(1)))}};
    auto e1 = expand_at(f, c, {0, 0}, 4);
    for (std::int64_t k = 0; k < 4; ++k) CHECK(e1.coeff(k) == -1);
    // multiplicativity of expansion
    RationalSection g{SectionKind::Function, {RatFun(Poly({Rat(2), Rat(0), Rat(1)}), Poly::linear_root(Rat(1)))}};
    RationalSection fg{SectionKind::Function, {f.parts[0] * g.parts[0]}};
    auto ef = expand_at(f, c, {0, 0}, 6);
    auto eg = expand_at(g, c, {0, 0}, 6);
    auto efg = expand_at(fg, c, {0, 0}, 6);
    auto prod = (ef * eg).truncated(efg.trunc());
    CHECK(prod == efg.truncated(prod.trunc()));
}

TEST_CASE("expansions honour a reparametrized coordinate") {
    // coordinate eta = xi + xi^2 at the origin
    LaurentSeries h = LaurentSeries::monomial(Rat(1), 1) + LaurentSeries::monomial(Rat(1), 2);
    MarkedPoint p0{Point::finite(Rat(0)), h.truncated(12)};
    auto c = CurveSpec::projective_line({p0, pt(1)});
    RationalSection f{SectionKind::Function,
                      {RatFun(Poly({Rat(0), Rat(1)}), Poly::linear_root(Rat(1)))}};  // t/(t-1)
    auto in_eta = expand_at(f, c, {0, 0}, 6);
    auto c_std = CurveSpec::projective_line({pt(0), pt(1)});
    auto in_xi = expand_at(f, c_std, {0, 0}, 6);
    auto back = compose(in_eta, h.truncated(8));
    const std::int64_t t = std::min(back.trunc(), in_xi.trunc());
    CHECK(back.truncated(t) == in_xi.truncated(t));
    // one-form: A_eta(h(xi)) h'(xi) = A_xi(xi)
    RationalSection w{SectionKind::OneForm, {f.parts[0]}};
    auto weta = expand_at(w, c, {0, 0}, 6);
    auto wxi = expand_at(w, c_std, {0, 0}, 6);
    auto wback = compose(weta, h.truncated(8)) * h.derivative();
    const std::int64_t t2 = std::min(wback.trunc(), wxi.trunc());
    CHECK(wback.truncated(t2) == wxi.truncated(t2));
    // vector field: l_eta(h(xi)) = l_xi(xi) h'(xi)
    RationalSection vf{SectionKind::VectorField, {f.parts[0]}};
    auto veta = expand_at(vf, c, {0, 0}, 6);
    auto vxi = expand_at(vf, c_std, {0, 0}, 6);
    auto vback = compose(veta, h.truncated(8));
    auto vref = vxi * h.derivative();
    const std::int64_t t3 = std::min(vback.trunc(), vref.trunc());
    CHECK(vback.truncated(t3) == vref.truncated(t3));
}

TEST_CASE("sewing vector field has the half-jets after adjustment") {
    // P+ = 0, P- = infinity, Q = 1 on one line
    auto c = CurveSpec::projective_line({pt(0), pt_inf(), pt(1)});
    auto sf = sewing_vector_field(c, {0, 0}, {0, 1}, 8);
    auto lp = expand_at(sf.field, c, {0, 0}, 2);
    CHECK(lp.coeff_or_zero(0) == 0);
    CHECK(lp.coeff(1) == Rat(1, 2));
    auto lm = expand_at(sf.field, c, {0, 1}, 2);
    CHECK(lm.coeff(1) == Rat(1, 2));
    // after the coordinate adjustment the field is exactly z/2 d/dz
    CurveSpec adjusted = c;
    adjusted.components[0].points[0].reparam = sf.coord_plus;
    adjusted.components[0].points[1].reparam = sf.coord_minus;
    auto zp = expand_at(sf.field, adjusted, {0, 0}, 7);
    CHECK(zp.coeff(1) == Rat(1, 2));
    for (std::int64_t k = 0; k < std::min<std::int64_t>(7, zp.trunc()); ++k)
        if (k != 1) CHECK(zp.coeff(k) == 0);
    auto zm = expand_at(sf.field, adjusted, {0, 1}, 7);
    CHECK(zm.coeff(1) == Rat(1, 2));
    for (std::int64_t k = 0; k < std::min<std::int64_t>(7, zm.trunc()); ++k)
        if (k != 1) CHECK(zm.coeff(k) == 0);
    // the expansion at Q (the theta-data of the Fuchsian check) exists to any order
    auto lq = expand_at(sf.field, c, {0, 2}, 9);
    CHECK(lq.trunc() >= 9);
}

TEST_CASE("sewing vector field on a disconnected normalization") {
    auto g2 = two_glued();
    auto norm = g2.normalization();
    auto sf = sewing_vector_field(norm, {0, 0}, {1, 0}, 6);
    auto lp = expand_at(sf.field, norm, {0, 0}, 2);
    CHECK(lp.coeff(1) == Rat(1, 2));
    auto lm = expand_at(sf.field, norm, {1, 0}, 2);
    CHECK(lm.coeff(1) == Rat(1, 2));
}

TEST_CASE("family form lift matches prescribed node expansions") {
    auto c = CurveSpec::projective_line({pt(0), pt_inf(), pt(1)});
    PointRef pp{0, 0}, pm{0, 1};
    // a = 0 -> zero forms
    auto zero = family_form_lift(c, pp, pm, {}, 3, 5);
    for (const auto& s : zero) CHECK(s.parts[0].is_zero());
    // a00 = 1: tau^(0) ~ -dz/z at P+, +dw/w at P-
    auto one = family_form_lift(c, pp, pm, {{Rat(1)}}, 1, 4);
    auto ep = expand_at(one[0], c, pp, 4);
    CHECK(ep.coeff(-1) == -1);
    CHECK(ep.coeff(0) == 0);
    auto em = expand_at(one[0], c, pm, 4);
    CHECK(em.coeff(-1) == 1);
    // random matrices: expansions match both displayed series mod xi^K
    std::mt19937_64 rng(41);
    const std::int64_t K = 5, Q = 3;
    for (int trial = 0; trial < 4; ++trial) {
        std::vector<std::vector<Rat>> a(K, std::vector<Rat>(K));
        for (auto& row : a)
            for (auto& v : row) v = Rat(static_cast<long>(rng() % 9) - 4);
        auto lifts = family_form_lift(c, pp, pm, a, Q, K);
        for (std::int64_t n = 0; n < Q; ++n) {
            auto eplus = expand_at(lifts[n], c, pp, K);
            auto eminus = expand_at(lifts[n], c, pm, K);
            for (std::int64_t e = -n - 1; e < K; ++e) {
                const std::int64_t m = e + n + 1;
                Rat want_p = (m >= 0 && m < K) ? -a[m][n] : Rat(0);
                Rat want_m = (m >= 0 && m < K) ? a[n][m] : Rat(0);
                CHECK(eplus.coeff(e) == want_p);
                CHECK(eminus.coeff(e) == want_m);
            }
        }
    }
}

TEST_CASE("curve validation rejects degenerate input") {
    CHECK_THROWS(CurveSpec::projective_line({pt(0), pt(0)}));
    CurveSpec bad;
    bad.components.push_back(Component{{pt(0), pt_inf()}});
    bad.glue.push_back({PointRef{0, 0}, PointRef{0, 1}});  // no outer point left
    CHECK_THROWS(bad.validate());
    CurveSpec empty;
    CHECK_THROWS(empty.validate());
}
