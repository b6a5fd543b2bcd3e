#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ghostvac/maya.hpp"

using namespace gv;

namespace {

MayaDiagram diag(std::vector<std::int64_t> mus_twice, std::vector<std::int64_t> nus_twice) {
    std::vector<HalfInt> mus, nus;
    for (auto t : mus_twice) mus.push_back(HalfInt(t));
    for (auto t : nus_twice) nus.push_back(HalfInt(t));
    return MayaDiagram(std::move(mus), std::move(nus));
}

// Brute-force oracle: enumerate all (mus, nus) words over a bounded mode
// range and keep the ones of the requested charge and degree.
std::vector<MayaDiagram> enumerate_oracle(std::int64_t p, std::int64_t d) {
    std::vector<MayaDiagram> out;
    const std::int64_t bound = 2 * d + p * p + 1;  // twice-value bound on |mode|
    std::vector<std::int64_t> odds;
    for (std::int64_t t = 1; t <= bound; t += 2) odds.push_back(t);
    const std::size_t n = odds.size();
    for (std::uint64_t mu_mask = 0; mu_mask < (1ull << n); ++mu_mask) {
        for (std::uint64_t nu_mask = 0; nu_mask < (1ull << n); ++nu_mask) {
            std::vector<std::int64_t> mus, nus;
            for (std::size_t i = 0; i < n; ++i) {
                if (mu_mask >> i & 1) mus.push_back(-odds[i]);
                if (nu_mask >> i & 1) nus.push_back(-odds[i]);
            }
            std::sort(mus.begin(), mus.end());
            std::sort(nus.begin(), nus.end());
            MayaDiagram m = diag(mus, nus);
            if (m.charge() == p && m.degree() == d) out.push_back(m);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST_CASE("grading basics") {
    CHECK(MayaDiagram::vacuum().grading() == Grading{0, 0});
    CHECK(diag({-1}, {}).grading() == Grading{1, 0});  // |1>
    CHECK(diag({}, {-1}).grading() == Grading{-1, 0});
    CHECK(diag({}, {-3}).grading() == Grading{-1, 1});
    // particle at 1/2 and hole at -1/2: charge 0, degree 1
    CHECK(diag({-1}, {-1}).grading() == Grading{0, 1});
}

TEST_CASE("Figure-1 style characteristic input has charge 1 and degree 5") {
    // mu(-3/2) = -1/2, mu(-1/2) = 3/2, mu(1/2) = 5/2, identity elsewhere
    auto m = MayaDiagram::from_characteristic_moves(
        1, {{HalfInt(-3), HalfInt(-1)}, {HalfInt(-1), HalfInt(3)}, {HalfInt(1), HalfInt(5)}});
    CHECK(m.grading() == Grading{1, 5});
    // canonical word: particles {3/2, 5/2} -> mus = (-5/2, -3/2); hole -3/2
    CHECK(m == diag({-5, -3}, {-3}));
    // round trip through characteristic moves
    auto moves = m.characteristic_moves();
    CHECK(MayaDiagram::from_characteristic_moves(1, moves) == m);
}

TEST_CASE("enumerate_basis matches brute force and partition counts") {
    for (std::int64_t p = -3; p <= 3; ++p) {
        for (std::int64_t d = 0; d <= 6; ++d) {
            auto got = enumerate_basis(p, d);
            CHECK(static_cast<std::int64_t>(got.size()) == partition_count(d));
            if (d <= 4 && std::abs(p) <= 2) {
                auto want = enumerate_oracle(p, d);
                CHECK(got == want);
            }
            // duplicate-free
            for (std::size_t i = 1; i < got.size(); ++i) CHECK(got[i - 1] < got[i]);
        }
    }
    CHECK(enumerate_basis(0, 0) == std::vector<MayaDiagram>{MayaDiagram::vacuum()});
    CHECK(enumerate_basis(-3, 1).size() == 1);
}

TEST_CASE("|M_p^d| is independent of p up to degree 8") {
    for (std::int64_t d = 0; d <= 8; ++d) {
        const auto base = enumerate_basis(0, d).size();
        for (std::int64_t p = -3; p <= 3; ++p) CHECK(enumerate_basis(p, d).size() == base);
    }
}

TEST_CASE("word sign") {
    CHECK(MayaDiagram::vacuum().word_sign() == 1);
    CHECK(diag({}, {-1}).word_sign() == 1);   // (-1)^{-1/2 + 1/2}
    CHECK(diag({}, {-3}).word_sign() == -1);  // (-1)^{-3/2 + 1/2}
    // exponent is always an integer
    for (std::int64_t d = 0; d <= 6; ++d)
        for (const auto& m : enumerate_basis(-1, d)) (void)m.word_sign();
}

TEST_CASE("reflect negates charge, keeps degree, is an involution") {
    CHECK(MayaDiagram::vacuum().reflect() == MayaDiagram::vacuum());
    CHECK(diag({-1}, {}).reflect() == diag({}, {-1}));  // |1> -> |-1>
    for (std::int64_t d = 0; d <= 4; ++d)
        for (const auto& m : enumerate_basis(2, d)) {
            auto r = m.reflect();
            CHECK(r.charge() == -2);
            CHECK(r.degree() == m.degree());
            CHECK(r.reflect() == m);
        }
}

TEST_CASE("basis is closed under reflect with negated charge") {
    for (std::int64_t d = 0; d <= 5; ++d) {
        auto plus = enumerate_basis(2, d);
        auto minus = enumerate_basis(-2, d);
        std::vector<MayaDiagram> reflected;
        for (const auto& m : plus) reflected.push_back(m.reflect());
        std::sort(reflected.begin(), reflected.end());
        CHECK(reflected == minus);
    }
}

TEST_CASE("shift raises charge, keeps degree, and inverts") {
    for (std::int64_t p = -2; p <= 2; ++p)
        CHECK(MayaDiagram::charged_vacuum(p).shift() == MayaDiagram::charged_vacuum(p + 1));
    for (std::int64_t p = -2; p <= 2; ++p)
        for (std::int64_t d = 0; d <= 4; ++d)
            for (const auto& m : enumerate_basis(p, d)) {
                auto s = m.shift();
                CHECK(s.charge() == p + 1);
                CHECK(s.degree() == d);
                CHECK(s.shift(-1) == m);
                CHECK(m.shift(-1).shift(1) == m);
            }
}

TEST_CASE("occupies describes S(M)") {
    auto m = diag({-5, -3}, {-3});  // Figure 1 diagram
    CHECK(m.occupies(HalfInt(5)));
    CHECK(m.occupies(HalfInt(3)));
    CHECK(!m.occupies(HalfInt(1)));
    CHECK(m.occupies(HalfInt(-1)));
    CHECK(!m.occupies(HalfInt(-3)));
    CHECK(m.occupies(HalfInt(-5)));
}
