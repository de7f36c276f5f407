#include "doctest.h"

#include <cstdlib>

#include "ellsieve/errors.hpp"
#include "ellsieve/lfunction.hpp"

using namespace ellsieve::lfunc;
using namespace ellsieve::ff;

TEST_CASE("rational arithmetic") {
    Rational a(1, 3), b(1, 6);
    CHECK(a + b == Rational(1, 2));
    CHECK(a - b == Rational(1, 6));
    CHECK(a * b == Rational(1, 18));
    CHECK(a / b == Rational(2));
    CHECK(Rational(-4, -6) == Rational(2, 3));
    CHECK(Rational(4, -6) == Rational(-2, 3));
    CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
}

namespace {

LPolynomial legendre_twist_L(std::uint64_t p, unsigned k, unsigned d,
                             const LOptions& opts = {}) {
    Fq F = Fq::make(p, k);
    FqPoly m = FqPoly::from_ints(F, {0, -1, 1});
    FqPoly g = canonical_g(F, d, m);
    TwistFamily fam = TwistFamily::legendre(F, d, g);
    return l_function(fam.twist(fam.parameter_points().front()), opts);
}

}  // namespace

TEST_CASE("legendre twist L-functions at q = 5, d = 3") {
    Fq F = Fq::make(5, 1);
    FqPoly m = FqPoly::from_ints(F, {0, -1, 1});
    FqPoly g = canonical_g(F, 3, m);
    TwistFamily fam = TwistFamily::legendre(F, 3, g);
    for (std::uint32_t c : fam.parameter_points()) {
        EllipticSurface Ec = fam.twist(c);
        LPolynomial L = l_function(Ec);
        CHECK(L.degree() == 5);
        CHECK(L.c[0] == 1);
        CHECK(functional_equation_holds(L));
        CHECK(weil_modulus_error(L) < 1e-6);

        // independent oracle: inverted Euler product over closed points
        auto series = euler_product_series(Ec, 6);
        for (int i = 0; i <= 5; ++i) CHECK(series[static_cast<std::size_t>(i)] == L.c[static_cast<std::size_t>(i)]);
        CHECK(series[6] == 0);

        // reduction strips one factor at odd degree
        ReducedL red = reduce_l(L);
        CHECK(red.N_red == 4);
        for (unsigned i = 0; i <= red.N_red; ++i)
            CHECK(red.reduced[i] == red.reduced[red.N_red - i]);
    }
}

TEST_CASE("euler oracle also covers d = 2 and extension bases") {
    Fq F = Fq::make(5, 1);
    FqPoly m = FqPoly::from_ints(F, {0, -1, 1});
    FqPoly g = canonical_g(F, 2, m);
    TwistFamily fam = TwistFamily::legendre(F, 2, g);
    auto pts = fam.parameter_points();
    REQUIRE(!pts.empty());
    EllipticSurface Ec = fam.twist(pts.front());
    LPolynomial L = l_function(Ec);
    CHECK(L.degree() == 4);
    auto series = euler_product_series(Ec, 5);
    for (int i = 0; i <= 4; ++i) CHECK(series[static_cast<std::size_t>(i)] == L.c[static_cast<std::size_t>(i)]);
    CHECK(series[5] == 0);

    // q = 25 base, degree check only (trace path exercises the tower)
    Fq F25 = Fq::make(5, 2);
    FqPoly m25 = FqPoly::from_ints(F25, {0, -1, 1});
    FqPoly g25 = canonical_g(F25, 3, m25);
    TwistFamily fam25 = TwistFamily::legendre(F25, 3, g25);
    EllipticSurface E25 = fam25.twist(fam25.parameter_points().front());
    LPolynomial L25 = l_function(E25);
    CHECK(L25.degree() == 5);
    CHECK(functional_equation_holds(L25));
    CHECK(weil_modulus_error(L25) < 1e-6);
}

TEST_CASE("reduction case split") {
    // odd N strips (1 - sign T)
    LPolynomial L = legendre_twist_L(5, 1, 3);
    ReducedL r = reduce_l(L);
    CHECK(r.N_red == 4);

    // even N with sign +1 keeps the polynomial; sign -1 strips (1 - T^2);
    // scan d = 2 twists until both signs have been seen
    Fq F = Fq::make(5, 1);
    FqPoly m = FqPoly::from_ints(F, {0, -1, 1});
    bool seen_plus = false, seen_minus = false;
    std::uint64_t count = 1;
    for (std::uint64_t idx = 0; idx < 25 && !(seen_plus && seen_minus); ++idx) {
        (void)count;
        std::vector<std::uint32_t> gc{static_cast<std::uint32_t>(idx % 5), 1};
        FqPoly g(F, std::move(gc));
        if (!is_squarefree(g) || gcd(g, m).degree() != 0) continue;
        TwistFamily fam = TwistFamily::legendre(F, 2, g);
        for (std::uint32_t c : fam.parameter_points()) {
            LPolynomial L2 = l_function(fam.twist(c));
            REQUIRE(L2.degree() == 4);
            ReducedL r2 = reduce_l(L2);
            if (L2.sign == +1) {
                seen_plus = true;
                CHECK(r2.N_red == 4);
            } else {
                seen_minus = true;
                CHECK(r2.N_red == 2);
            }
        }
    }
    CHECK(seen_plus);
    CHECK(seen_minus);
}

TEST_CASE("budget guard") {
    LOptions opts;
    opts.budget = 10;
    CHECK_THROWS_AS(legendre_twist_L(5, 1, 3, opts), ellsieve::budget_error);
    opts.budget_override = true;
    CHECK(legendre_twist_L(5, 1, 3, opts).degree() == 5);
}

TEST_CASE("serialization of L-polynomials") {
    LPolynomial L = legendre_twist_L(5, 1, 3);
    std::string csv = L.csv_row();
    CHECK(csv.rfind(std::string("5,5,") + std::to_string(L.sign) + ",1,", 0) == 0);
    CHECK(L.json().find("\"coeffs\":[1,") != std::string::npos);
}

TEST_CASE("base curve and degree-one twists") {
    Fq F = Fq::make(5, 1);
    EllipticSurface E = EllipticSurface::legendre(F);
    // the untwisted Legendre surface has trivial L
    LPolynomial L0 = l_function(E);
    CHECK(L0.degree() == 0);
    CHECK(L0.c == std::vector<std::int64_t>{1});
    ReducedL r0 = reduce_l(L0);
    CHECK(r0.N_red == 0);

    // d = 1: f = (c - t), N = 1, the single coefficient carries the sign
    FqPoly g = FqPoly::one(F);
    TwistFamily fam = TwistFamily::legendre(F, 1, g);
    for (std::uint32_t c : fam.parameter_points()) {
        LPolynomial L = l_function(fam.twist(c));
        CHECK(L.degree() == 1);
        CHECK(std::abs(L.c[1]) == 5);
        CHECK(functional_equation_holds(L));
        auto series = euler_product_series(fam.twist(c), 2);
        CHECK(series[0] == L.c[0]);
        CHECK(series[1] == L.c[1]);
        CHECK(series[2] == 0);
    }
}

TEST_CASE("custom curve path: y^2 = x^3 + x + t") {
    Fq F = Fq::make(5, 1);
    EllipticSurface E(F, FqPoly::from_ints(F, {1}), FqPoly::from_ints(F, {0, 1}));
    // multiplicative locus: zeros of 4 + 27 t^2 = 4 + 2t^2 over F_5
    FqPoly m = FqPoly::from_ints(F, {4, 0, 2});
    int mult_places = 0;
    for (const auto& red : E.bad_places())
        if (red.type == ReductionType::MultiplicativeSplit ||
            red.type == ReductionType::MultiplicativeNonsplit)
            ++mult_places;
    CHECK(mult_places > 0);
    TwistFamily fam(E, m, canonical_g(F, 2, m), 2);
    auto pts = fam.parameter_points();
    REQUIRE(!pts.empty());
    LPolynomial L = l_function(fam.twist(pts.front()));
    CHECK(L.degree() == E.quadratic_twist(fam.twist_poly(pts.front())).degree_of_L());
    CHECK(functional_equation_holds(L));
    auto series = euler_product_series(fam.twist(pts.front()), static_cast<unsigned>(L.degree()) + 1);
    for (int i = 0; i <= L.degree(); ++i)
        CHECK(series[static_cast<std::size_t>(i)] == L.c[static_cast<std::size_t>(i)]);
}

TEST_CASE("higher-degree twists keep the invariants") {
    Fq F = Fq::make(5, 1);
    FqPoly m = FqPoly::from_ints(F, {0, -1, 1});
    for (unsigned d : {4u, 5u}) {
        FqPoly g = canonical_g(F, d, m);
        TwistFamily fam = TwistFamily::legendre(F, d, g);
        auto pts = fam.parameter_points();
        REQUIRE(!pts.empty());
        LPolynomial L = l_function(fam.twist(pts.front()));
        int expect = (d % 2 == 0) ? static_cast<int>(2 * d) : static_cast<int>(2 * d - 1);
        CHECK(L.degree() == expect);
        CHECK(functional_equation_holds(L));
        CHECK(weil_modulus_error(L) < 1e-6);
        ReducedL red = reduce_l(L);
        for (unsigned i = 0; i <= red.N_red; ++i)
            CHECK(red.reduced[i] == red.reduced[red.N_red - i]);
    }
}

TEST_CASE("naive point counts agree with the character-sum pipeline") {
    // counts every affine point by brute force over F_q and F_{q^2},
    // independent of the quadratic-character machinery, and compares the
    // first two L-coefficients
    Fq F = Fq::make(5, 1);
    FqPoly g = FqPoly::from_ints(F, {1, 1, 1});
    TwistFamily fam = TwistFamily::legendre(F, 3, g);
    EllipticSurface E = fam.twist(2);
    LPolynomial L = l_function(E);

    auto bad = E.bad_places();
    auto naive_S = [&](unsigned n) {
        ExtField K(F, n);
        auto a_logs = K.coeff_logs(E.a());
        auto b_logs = K.coeff_logs(E.b());
        auto d_logs = K.coeff_logs(E.delta());
        std::int64_t S = 0;
        for (std::uint64_t lam = 0; lam < K.size(); ++lam) {
            std::int32_t lx = K.log_of(lam);
            if (K.eval_log(d_logs, lx) < 0) {
                // bad fiber: use the classified local data
                for (const auto& red : bad) {
                    if (red.place.at_infinity) continue;
                    if (K.eval_log(K.coeff_logs(red.place.prime), lx) >= 0) continue;
                    unsigned rel = n / red.place.degree();
                    if (red.type == ReductionType::MultiplicativeSplit) S += 1;
                    if (red.type == ReductionType::MultiplicativeNonsplit)
                        S += (rel % 2 == 0) ? 1 : -1;
                    break;
                }
                continue;
            }
            std::uint64_t A = K.exp_of(K.eval_log(a_logs, lx));
            std::uint64_t B = K.exp_of(K.eval_log(b_logs, lx));
            std::int64_t points = 1;  // infinity
            for (std::uint64_t x = 0; x < K.size(); ++x) {
                std::uint64_t rhs = K.add_index(
                    K.add_index(K.mul_index(K.mul_index(x, x), x), K.mul_index(A, x)), B);
                for (std::uint64_t y = 0; y < K.size(); ++y)
                    if (K.mul_index(y, y) == rhs) ++points;
            }
            S += static_cast<std::int64_t>(K.size()) + 1 - points;
        }
        // fiber at infinity: multiplicative for d = 3 twists
        for (const auto& red : bad)
            if (red.place.at_infinity) {
                REQUIRE(red.type != ReductionType::Additive);
                if (red.type == ReductionType::MultiplicativeSplit) S += 1;
                if (red.type == ReductionType::MultiplicativeNonsplit)
                    S += (n % 2 == 0) ? 1 : -1;
            }
        return S;
    };
    std::int64_t S1 = naive_S(1), S2 = naive_S(2);
    CHECK(L.c[1] == S1);
    CHECK(2 * L.c[2] == S1 * L.c[1] + S2);
}
