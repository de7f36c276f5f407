#include "doctest.h"

#include <cmath>
#include <map>
#include <set>

#include "ellsieve/rng.hpp"

#include "ellsieve/errors.hpp"
#include "ellsieve/orth.hpp"

using namespace ellsieve::orth;
using namespace ellsieve::ff;

TEST_CASE("group orders match the closed forms") {
    CHECK(group_order(5, 3, SpaceType::Odd) == 240);     // 2*5*(25-1)
    CHECK(group_order(7, 2, SpaceType::Split) == 12);    // 2(l-1)
    CHECK(group_order(5, 2, SpaceType::Split) == 8);
    CHECK(group_order(5, 2, SpaceType::NonSplit) == 12); // 2(l+1)
    CHECK(group_order(3, 3, SpaceType::Odd) == 48);
    CHECK(group_order(7, 3, SpaceType::Odd) == 672);
    CHECK(group_order(3, 4, SpaceType::Split) == 1152);
    CHECK(group_order(3, 4, SpaceType::NonSplit) == 1440);
    CHECK(group_order(5, 4, SpaceType::Split) == 28800);
    CHECK(group_order(5, 4, SpaceType::NonSplit) == 31200);

    // even-type orders stay below (l+1)^(N(N-1)/2)
    for (std::uint64_t ell : {3ull, 5ull, 7ull}) {
        long double bound = powl(static_cast<long double>(ell + 1), 4 * 3 / 2.0L);
        CHECK(static_cast<long double>(group_order(ell, 4, SpaceType::Split)) <= bound);
        CHECK(static_cast<long double>(group_order(ell, 4, SpaceType::NonSplit)) <= bound);
    }
}

TEST_CASE("enumeration cardinality equals group order") {
    for (auto [ell, N, type] : {std::tuple<std::uint64_t, unsigned, SpaceType>
                                    {5, 2, SpaceType::Split},
                                {5, 2, SpaceType::NonSplit},
                                {7, 2, SpaceType::Split},
                                {7, 2, SpaceType::NonSplit},
                                {3, 3, SpaceType::Odd},
                                {5, 3, SpaceType::Odd},
                                {3, 4, SpaceType::Split},
                                {3, 4, SpaceType::NonSplit}}) {
        QuadSpace S(ell, N, type);
        auto keys = enumerate_group(S);
        CHECK(keys.size() == group_order(ell, N, type));
        for (std::size_t i = 0; i < keys.size(); i += keys.size() / 7 + 1) {
            OrthMat M = mat_unkey(ell, N, keys[i]);
            CHECK(is_isometry(S, M));
        }
    }
    QuadSpace big(13, 4, SpaceType::Split);
    CHECK_THROWS_AS(enumerate_group(big, 1000), ellsieve::budget_error);
}

TEST_CASE("reflections and spinor norm basics") {
    QuadSpace S(5, 3, SpaceType::Odd);
    OrthMat I = OrthMat::identity(3);
    CHECK(spinor_norm(S, I) == kSquare);

    for (const auto& v : anisotropic_lines(S)) {
        OrthMat r = reflection(S, v);
        CHECK(is_isometry(S, r));
        CHECK(det(S.field(), r) == S.field().from_int(-1));
        CHECK(spinor_norm(S, r) == S.field().square_class(S.quad(v)));
    }

    QuadSpace H(5, 2, SpaceType::Split);
    CHECK_THROWS_AS(reflection(H, {1, 0}), std::invalid_argument);
}

TEST_CASE("reversed characteristic polynomial") {
    QuadSpace S(7, 3, SpaceType::Odd);
    const Fq& F = S.field();
    OrthMat I = OrthMat::identity(3);
    FqPoly f = char_poly_reversed(F, I);
    CHECK(f == FqPoly::from_ints(F, {1, -3, 3, -1}));  // (1-T)^3
    OrthMat mI = I;
    for (unsigned i = 0; i < 3; ++i) mI.at(i, i) = F.from_int(-1);
    CHECK(char_poly_reversed(F, mI) == FqPoly::from_ints(F, {1, 3, 3, 1}));
}

TEST_CASE("coset equidistribution on O(3, F_5)") {
    QuadSpace S(5, 3, SpaceType::Odd);
    auto keys = enumerate_group(S);
    std::map<std::pair<int, int>, int> counts;
    for (auto k : keys) {
        OrthMat M = mat_unkey(5, 3, k);
        CosetLabel lab = coset_label(S, M);
        counts[{lab.det, lab.spinor}]++;
    }
    REQUIRE(counts.size() == 4);
    for (const auto& [lab, c] : counts) CHECK(c == 240 / 4);
}

TEST_CASE("zassenhaus spinor formula on enumerated groups") {
    // spinor norm = class of det((1+M)/2), i.e. class(f(-1)) up to the
    // square class of 2^N, with f = det(1 - TM); for even N this is
    // exactly class(f(-1))
    for (auto [ell, N, type] : {std::tuple<std::uint64_t, unsigned, SpaceType>
                                    {5, 3, SpaceType::Odd},
                                {7, 3, SpaceType::Odd},
                                {5, 4, SpaceType::Split},
                                {3, 4, SpaceType::NonSplit}}) {
        QuadSpace S(ell, N, type);
        const Fq& F = S.field();
        auto keys = enumerate_group(S);
        int checked = 0;
        int mismatches = 0;
        for (auto k : keys) {
            OrthMat M = mat_unkey(ell, N, k);
            FqPoly f = char_poly_reversed(F, M);
            std::uint32_t fm1 = f.eval(F.from_int(-1));
            if (fm1 == 0) continue;
            ++checked;
            SquareClass lhs = spinor_norm(S, M);
            SquareClass rhs = F.square_class(fm1);
            if (N % 2 == 1) rhs = rhs * F.square_class(F.from_int(2));
            if (!(lhs == rhs)) ++mismatches;
        }
        CHECK(checked > 0);
        CHECK(mismatches == 0);
    }
}

TEST_CASE("omega membership and matrix serialization") {
    QuadSpace S(5, 3, SpaceType::Odd);
    OrthMat I = OrthMat::identity(3);
    CHECK(omega_member(S, I));
    CHECK(mat_to_string(I) == "1,0,0,0,1,0,0,0,1");
    // a reflection in a non-square vector has label (-1, -1)
    for (const auto& v : anisotropic_lines(S)) {
        if (S.field().square_class(S.quad(v)) != kNonSquare) continue;
        OrthMat r = reflection(S, v);
        CosetLabel lab = coset_label(S, r);
        CHECK(lab.det == -1);
        CHECK(lab.spinor == -1);
        CHECK_FALSE(omega_member(S, r));
        break;
    }
}

TEST_CASE("isometry closure under products and inverses") {
    QuadSpace S(5, 3, SpaceType::Odd);
    const Fq& F = S.field();
    auto keys = enumerate_group(S);
    std::set<MatKey> all(keys.begin(), keys.end());
    ellsieve::SplitMix64 rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        OrthMat A = mat_unkey(5, 3, keys[rng.below(keys.size())]);
        OrthMat B = mat_unkey(5, 3, keys[rng.below(keys.size())]);
        CHECK(all.count(mat_key(5, matmul(F, A, B))) == 1);
        // inverse via the isometry relation: A^-1 = G^-1 A^T G; cheaper to
        // find it as the power A^(|O|-1)-free route: search by multiplying
        OrthMat P = A;
        OrthMat I = OrthMat::identity(3);
        OrthMat inv = I;
        int guard = 0;
        while (!(P == I)) {
            inv = matmul(F, inv, A);
            P = matmul(F, P, A);
            REQUIRE(++guard < 300000);
        }
        // now inv = A^(ord-1) = A^-1
        CHECK(matmul(F, inv, A) == I);
        CHECK(all.count(mat_key(5, inv)) == 1);
    }
}
