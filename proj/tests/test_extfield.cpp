#include "doctest.h"

#include "ellsieve/extfield.hpp"

using namespace ellsieve::ff;

TEST_CASE("zech tables give a consistent field") {
    Fq F = Fq::make(5, 1);
    ExtField K(F, 3);
    CHECK(K.size() == 125);
    // additive and multiplicative structure agree with the index domain
    for (std::uint64_t a = 0; a < K.size(); ++a) {
        std::int32_t la = K.log_of(a);
        CHECK(K.exp_of(la) == (la < 0 ? 0 : a));
        for (std::uint64_t b = a; b < K.size(); b += 7) {
            std::uint64_t s1 = K.add_index(a, b);
            std::int32_t ls = K.add_log(K.log_of(a), K.log_of(b));
            CHECK(K.exp_of(ls) == s1);
        }
    }
    // chi is the quadratic character: chi(x^2) = 1
    int squares = 0;
    for (std::uint64_t a = 1; a < K.size(); ++a) {
        std::int32_t l2 = K.mul_log(K.log_of(a), K.log_of(a));
        CHECK(K.chi_log(l2) == 1);
        squares += (K.chi_log(K.log_of(a)) == 1);
    }
    CHECK(squares == 62);  // (125 - 1)/2
}

TEST_CASE("extension of an extension base") {
    Fq F25 = Fq::make(5, 2);
    ExtField K(F25, 2);  // F_625 over F_25
    CHECK(K.size() == 625);
    std::uint64_t a = 37 % K.size(), b = 211 % K.size();
    std::uint64_t ab = K.mul_index(a, b);
    CHECK(K.mul_index(b, a) == ab);
    CHECK(K.add_index(a, b) == K.add_index(b, a));
}

TEST_CASE("residue field with explicit modulus") {
    Fq F = Fq::make(5, 1);
    FqPoly P = FqPoly::from_ints(F, {2, 0, 1});  // T^2 + 2, irreducible
    REQUIRE(is_irreducible(P));
    ExtField K(F, P);
    CHECK(K.size() == 25);
    // evaluation via from_poly respects reduction
    FqPoly big = P * FqPoly::from_ints(F, {1, 1}) + FqPoly::from_ints(F, {3});
    CHECK(K.from_poly(big) == 3);
}

TEST_CASE("polynomial evaluation in the log domain") {
    Fq F = Fq::make(5, 1);
    ExtField K(F, 2);
    FqPoly f = FqPoly::from_ints(F, {1, 2, 3});
    auto logs = K.coeff_logs(f);
    for (std::uint64_t x = 0; x < K.size(); ++x) {
        std::int32_t lv = K.eval_log(logs, K.log_of(x));
        // compare against index-domain Horner
        std::uint64_t v = 0;
        for (int i = f.degree(); i >= 0; --i)
            v = K.add_index(K.mul_index(v, x), f.coeff(i));
        CHECK(K.exp_of(lv) == v);
    }
}
