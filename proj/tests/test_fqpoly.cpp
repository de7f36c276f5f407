#include "doctest.h"

#include <algorithm>

#include "ellsieve/fqpoly.hpp"
#include "ellsieve/rng.hpp"

using namespace ellsieve::ff;
using ellsieve::SplitMix64;

namespace {

FqPoly random_poly(const Fq& F, int deg, SplitMix64& rng) {
    std::vector<std::uint32_t> c(deg + 1);
    for (auto& x : c) x = static_cast<std::uint32_t>(rng.below(F.q()));
    if (c.back() == 0) c.back() = 1;
    return FqPoly(F, std::move(c));
}

FqPoly rebuild(const Fq& F, const std::vector<std::pair<FqPoly, unsigned>>& fac,
               std::uint32_t lead) {
    FqPoly acc = FqPoly::constant(F, lead);
    for (const auto& [g, m] : fac)
        for (unsigned i = 0; i < m; ++i) acc = acc * g;
    return acc;
}

}  // namespace

TEST_CASE("factor examples") {
    Fq F5 = Fq::make(5, 1);
    // T^4 - 1 over F_5 splits into the four linear factors T-1,...,T-4
    FqPoly f = FqPoly::from_ints(F5, {-1, 0, 0, 0, 1});
    auto fac = factor(f);
    REQUIRE(fac.size() == 4);
    for (const auto& [g, m] : fac) {
        CHECK(g.degree() == 1);
        CHECK(m == 1);
    }
    CHECK(rebuild(F5, fac, f.leading()) == f);

    // T^2 + 1 irreducible over F_3
    Fq F3 = Fq::prime(3);
    FqPoly g = FqPoly::from_ints(F3, {1, 0, 1});
    CHECK(is_irreducible(g));
    auto gf = factor(g);
    REQUIRE(gf.size() == 1);
    CHECK(gf[0].second == 1);

    // (T-1)^2 over F_7
    Fq F7 = Fq::make(7, 1);
    FqPoly h = FqPoly::from_ints(F7, {1, -2, 1});
    auto hf = factor(h);
    REQUIRE(hf.size() == 1);
    CHECK(hf[0].first == FqPoly::from_ints(F7, {-1, 1}));
    CHECK(hf[0].second == 2);

    CHECK_THROWS_AS(factor(FqPoly::zero(F5)), std::invalid_argument);
}

TEST_CASE("squarefree detection") {
    Fq F5 = Fq::make(5, 1);
    CHECK(is_squarefree(FqPoly::from_ints(F5, {0, -1, 1})));        // t(t-1)
    CHECK_FALSE(is_squarefree(FqPoly::from_ints(F5, {4, -4, 1})));  // (t-2)^2
    // t^5 - t = prod of all linear factors over F_5 (derivative vanishes path)
    CHECK(is_squarefree(FqPoly::from_ints(F5, {0, -1, 0, 0, 0, 1})));
    // t^5 itself is a 5th power
    CHECK_FALSE(is_squarefree(FqPoly::from_ints(F5, {0, 0, 0, 0, 0, 1})));
    CHECK_THROWS_AS(is_squarefree(FqPoly::zero(F5)), std::invalid_argument);
}

TEST_CASE("discriminant and resultant") {
    Fq F7 = Fq::make(7, 1);
    // disc(T^2 + bT + c) = b^2 - 4c; b = c = 1 gives -3 = 4 mod 7
    FqPoly f = FqPoly::from_ints(F7, {1, 1, 1});
    CHECK(discriminant(f) == 4);

    // Res(T - a, g) = g(a)
    Fq F5 = Fq::make(5, 1);
    FqPoly lin = FqPoly::from_ints(F5, {-2, 1});
    FqPoly g = FqPoly::from_ints(F5, {1, 0, 1});
    CHECK(resultant(lin, g) == g.eval(2));
    CHECK(resultant(lin, g) == 0);

    // disc((T-1)(T-2)) = (r1 - r2)^2 = 1
    FqPoly h = FqPoly::from_ints(F5, {2, -3, 1});
    CHECK(discriminant(h) == 1);

    CHECK_THROWS_AS(discriminant(FqPoly::one(F5)), std::invalid_argument);
}

TEST_CASE("resultant vs root products on random pairs") {
    SplitMix64 rng(7);
    Fq F = Fq::prime(11);
    for (int trial = 0; trial < 50; ++trial) {
        FqPoly f = random_poly(F, 2 + static_cast<int>(rng.below(3)), rng);
        FqPoly g = random_poly(F, 1 + static_cast<int>(rng.below(3)), rng);
        // Res(f,g) = lc(f)^deg g * prod g(root of f): verify via multiplicativity
        // Res(f, g1*g2) = Res(f,g1) Res(f,g2)
        FqPoly g2 = random_poly(F, 2, rng);
        CHECK(resultant(f, g * g2) == F.mul(resultant(f, g), resultant(f, g2)));
    }
}

TEST_CASE("factor of a product merges factorizations") {
    SplitMix64 rng(42);
    for (std::uint64_t q : {5ull, 9ull}) {
        Fq F = (q == 9) ? Fq::prime(3) : Fq::make(5, 1);
        (void)q;
        for (int trial = 0; trial < 30; ++trial) {
            FqPoly f = random_poly(F, 1 + static_cast<int>(rng.below(4)), rng);
            FqPoly g = random_poly(F, 1 + static_cast<int>(rng.below(4)), rng);
            auto ff = factor(f);
            auto gf = factor(g);
            auto pf = factor(f * g);
            // merge
            std::vector<std::pair<FqPoly, unsigned>> merged = ff;
            for (const auto& [h, m] : gf) {
                bool found = false;
                for (auto& [h2, m2] : merged)
                    if (h == h2) { m2 += m; found = true; break; }
                if (!found) merged.emplace_back(h, m);
            }
            std::sort(merged.begin(), merged.end(), [](const auto& a, const auto& b) {
                return FqPoly::less(a.first, b.first);
            });
            CHECK(pf == merged);
        }
    }
}

TEST_CASE("factorization is seed independent") {
    Fq F = Fq::prime(13);
    FqPoly f = FqPoly::from_ints(F, {3, 1, 4, 1, 5, 9, 2, 1});
    CHECK(factor(f, 1) == factor(f, 999));
}

TEST_CASE("irreducible counts match the necklace formula") {
    for (auto [p, n] : {std::pair<std::uint64_t, unsigned>{3, 4},
                        {5, 4}, {5, 6}, {7, 3}, {11, 3}, {13, 2}}) {
        Fq F = Fq::prime(p);
        CHECK(monic_irreducibles(F, n).size() == irreducible_count(p, n));
    }
    // and over a genuine extension field
    Fq F25 = Fq::make(5, 2);
    CHECK(monic_irreducibles(F25, 2).size() == irreducible_count(25, 2));
}

TEST_CASE("squarefree iff nonzero discriminant (nonconstant, f' != 0)") {
    SplitMix64 rng(5);
    Fq F = Fq::prime(7);
    for (int trial = 0; trial < 200; ++trial) {
        FqPoly f = random_poly(F, 2 + static_cast<int>(rng.below(4)), rng);
        if (f.derivative().is_zero()) continue;
        CHECK(is_squarefree(f) == (discriminant(f) != 0));
    }
}

TEST_CASE("serialization round trip") {
    Fq F = Fq::make(5, 1);
    FqPoly f = FqPoly::from_ints(F, {1, 2, 0, 3});
    CHECK(f.to_string() == "1,2,0,3");
    CHECK(FqPoly::parse(F, f.to_string()) == f);
    CHECK(FqPoly::zero(F).to_string() == "0");
}
