#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "ghostvac/laurent.hpp"

using namespace gv;

namespace {

LaurentSeries poly(std::vector<std::pair<std::int64_t, long>> terms, std::int64_t trunc = LaurentSeries::kExact) {
    std::map<std::int64_t, Rat> c;
    for (auto [e, v] : terms) c[e] = Rat(v);
    return LaurentSeries(std::move(c), trunc);
}

LaurentSeries random_series(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi, std::int64_t trunc) {
    std::map<std::int64_t, Rat> c;
    for (std::int64_t e = lo; e < hi; ++e) {
        long num = static_cast<long>(rng() % 11) - 5;
        long den = 1 + static_cast<long>(rng() % 4);
        if (num != 0) c[e] = rat(num, den);
    }
    return LaurentSeries(std::move(c), trunc);
}

}  // namespace

TEST_CASE("arithmetic and truncation bookkeeping") {
    auto f = poly({{0, 1}, {2, 3}});
    auto g = poly({{-1, 2}, {1, -1}});
    CHECK((f + g).coeff(0) == 1);
    CHECK((f * g).coeff(1) == Rat(-1) + Rat(6));
    auto ft = f.truncated(2);
    CHECK(ft.trunc() == 2);
    CHECK_THROWS_AS(ft.coeff(2), TruncationError);
    // product trunc: min(trunc_f + ord_g, trunc_g + ord_f)
    auto p = ft * g;
    CHECK(p.trunc() == 1);
}

TEST_CASE("residue") {
    CHECK(residue(poly({{-1, 1}})) == 1);
    CHECK(residue(poly({{3, 1}})) == 0);
    // residue of a derivative vanishes
    std::mt19937_64 rng(7);
    for (int i = 0; i < 20; ++i) {
        auto f = random_series(rng, -4, 5, 6);
        CHECK(residue(f.derivative()) == 0);
    }
}

TEST_CASE("inverse multiplies to one") {
    auto h = poly({{1, 1}, {2, 1}}, 8);  // xi + xi^2 known below 8
    auto inv = h.inverse();
    auto prod = h * inv;
    CHECK(prod.coeff(0) == 1);
    for (std::int64_t e = 1; e < prod.trunc(); ++e) CHECK(prod.coeff(e) == 0);
}

TEST_CASE("compose basics and hand-checked example") {
    auto f = poly({{2, 1}});
    auto h = poly({{1, 1}, {2, 1}});
    // (xi + xi^2)^2 = xi^2 + 2 xi^3 + xi^4
    auto c = compose(f, h);
    CHECK(c == poly({{2, 1}, {3, 2}, {4, 1}}));
    // identity composition
    auto g = poly({{-1, 3}, {0, 2}, {4, 5}}, 9);
    CHECK(compose(g, LaurentSeries::identity()) == g);
}

TEST_CASE("compose associativity on random truncated triples") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 12; ++i) {
        auto f = random_series(rng, 0, 5, 8);
        auto g = random_series(rng, 2, 5, 9);
        auto h = random_series(rng, 2, 6, 9);
        // force unit linear coefficients so everything is composable
        auto g1 = g + poly({{1, 1}});
        auto h1 = h + poly({{1, 1}});
        auto lhs = compose(compose(f, g1), h1);
        auto rhs = compose(f, compose(g1, h1));
        const std::int64_t t = std::min(lhs.trunc(), rhs.trunc());
        CHECK(lhs.truncated(t) == rhs.truncated(t));
    }
}

TEST_CASE("compose handles Laurent poles") {
    // f = 1/xi composed with h = xi + xi^2: 1/h = xi^{-1} - 1 + xi - xi^2 ...
    auto f = poly({{-1, 1}});
    auto h = poly({{1, 1}, {2, 1}}, 9);
    auto c = compose(f, h);
    CHECK(c.coeff(-1) == 1);
    CHECK(c.coeff(0) == -1);
    CHECK(c.coeff(1) == 1);
    CHECK(c.coeff(2) == -1);
}

TEST_CASE("comp_inverse: scaling, Catalan signs, round trips") {
    auto inv = comp_inverse(poly({{1, 3}}), 6);
    CHECK(inv.coeff(1) == Rat(1, 3));
    // h = xi + xi^2 -> h^{-1} = xi - xi^2 + 2 xi^3 - 5 xi^4 + 14 xi^5
    auto h = poly({{1, 1}, {2, 1}});
    auto g = comp_inverse(h, 6);
    CHECK(g.coeff(1) == 1);
    CHECK(g.coeff(2) == -1);
    CHECK(g.coeff(3) == 2);
    CHECK(g.coeff(4) == -5);
    CHECK(g.coeff(5) == 14);
    std::mt19937_64 rng(13);
    for (int i = 0; i < 10; ++i) {
        auto r = random_series(rng, 2, 6, 7) + poly({{1, 1}});
        auto rinv = comp_inverse(r, 7);
        auto round = compose(r, rinv);
        for (std::int64_t e = round.ord(); e < std::min<std::int64_t>(round.trunc(), 7); ++e)
            CHECK(round.coeff(e) == (e == 1 ? Rat(1) : Rat(0)));
    }
}

TEST_CASE("exp_derivation") {
    auto f = poly({{1, 1}}, 8);
    CHECK(exp_derivation(LaurentSeries::zero(), f, 8) == f);
    // exp(xi^2 d/dxi)(xi) = xi + xi^2 + xi^3 + ... (flow of dxi/dt = xi^2)
    auto l = poly({{2, 1}});
    auto e = exp_derivation(l, poly({{1, 1}}), 7);
    for (std::int64_t k = 1; k < 7; ++k) CHECK(e.coeff(k) == 1);
    // algebra homomorphism: exp(l)(fg) = exp(l)(f) exp(l)(g)
    std::mt19937_64 rng(17);
    for (int i = 0; i < 8; ++i) {
        auto a = random_series(rng, 0, 4, 6);
        auto b = random_series(rng, 0, 4, 6);
        auto ll = random_series(rng, 2, 5, 7);
        auto lhs = exp_derivation(ll, a * b, 6);
        auto rhs = exp_derivation(ll, a, 6) * exp_derivation(ll, b, 6);
        const std::int64_t t = std::min(lhs.trunc(), rhs.trunc());
        CHECK(lhs.truncated(t) == rhs.truncated(t));
    }
    // linear part is rejected
    CHECK_THROWS(exp_derivation(poly({{1, 1}}), f, 5));
}

TEST_CASE("exp/log round trip witness for xi + xi^3") {
    // find l with exp(l)(xi) = xi + xi^3 mod xi^6 by iterative correction
    auto target = poly({{1, 1}, {3, 1}});
    LaurentSeries l = LaurentSeries::zero(6);
    for (std::int64_t k = 2; k < 6; ++k) {
        auto cur = exp_derivation(l, LaurentSeries::identity(), 6);
        Rat gap = (target - cur).coeff_or_zero(k);
        if (gap != 0) l = l + LaurentSeries::monomial(gap, k, 6);
    }
    auto back = exp_derivation(l, LaurentSeries::identity(), 6);
    CHECK(back.truncated(6) == target.truncated(6));
}

TEST_CASE("schwarzian: Moebius kernel, explicit value, cocycle") {
    CHECK(schwarzian(poly({{1, 5}}, 9), 6).zero_below_trunc());
    // {xi + xi^2; xi} = -6/(1+2xi)^2 = -6 + 24 xi - 72 xi^2 + ...
    auto s = schwarzian(poly({{1, 1}, {2, 1}}, 12), 5);
    CHECK(s.coeff(0) == -6);
    CHECK(s.coeff(1) == 24);
    CHECK(s.coeff(2) == -72);
    // cocycle {f o g} = ({f} o g) g'^2 + {g}
    std::mt19937_64 rng(23);
    for (int i = 0; i < 8; ++i) {
        auto f = random_series(rng, 2, 5, 8) + poly({{1, 1}});
        auto g = random_series(rng, 2, 5, 8) + poly({{1, 1}});
        auto lhs = schwarzian(compose(f, g), 4);
        auto rhs = compose(schwarzian(f, 8), g).truncated(4) * g.derivative().pow(2) + schwarzian(g, 4);
        const std::int64_t t = std::min<std::int64_t>(4, std::min(lhs.trunc(), rhs.trunc()));
        CHECK(lhs.truncated(t) == rhs.truncated(t));
    }
}

TEST_CASE("projective connection from bidifferential data") {
    BiDiffLocal b;
    b.trunc = 5;
    CHECK(projective_connection(b, 4).zero_below_trunc());
    b.regular[{0, 0}] = Rat(1);
    auto s = projective_connection(b, 4);
    CHECK(s.coeff(0) == 6);
    CHECK(s.coeff(1) == 0);
    b.regular[{1, 2}] = Rat(1, 2);
    b.regular[{2, 1}] = Rat(1, 2);
    s = projective_connection(b, 4);
    CHECK(s.coeff(3) == 6);
    CHECK_THROWS_AS(projective_connection(b, 6), TruncationError);
}
