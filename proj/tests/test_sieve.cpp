#include "doctest.h"

#include "ellsieve/errors.hpp"
#include "ellsieve/scan.hpp"
#include "ellsieve/sieve.hpp"

using namespace ellsieve::sieve;
using namespace ellsieve::lfunc;
using namespace ellsieve::ff;
using ellsieve::orth::ThetaClass;

namespace {

// synthetic reduced L with integer coefficients (test fixture)
ReducedL synthetic(std::uint64_t q, std::vector<std::int64_t> reduced, int sign) {
    ReducedL out;
    out.q = q;
    out.sign = sign;
    out.N_red = static_cast<unsigned>(reduced.size()) - 1;
    for (auto v : reduced) out.reduced.emplace_back(v);
    // ambient N for context: odd with N_red = N - 1
    out.unitarized.assign(out.N_red + 2, Rational(0));
    return out;
}

ReducedL legendre_reduced(std::uint64_t p, unsigned k, unsigned d, std::size_t which) {
    Fq F = Fq::make(p, k);
    FqPoly m = FqPoly::from_ints(F, {0, -1, 1});
    FqPoly g = canonical_g(F, d, m);
    TwistFamily fam = TwistFamily::legendre(F, d, g);
    auto pts = fam.parameter_points();
    return reduce_l(l_function(fam.twist(pts.at(which % pts.size()))));
}

}  // namespace

TEST_CASE("prime windows") {
    PrimeWindow w = PrimeWindow::make(7, 23, 13);
    auto m = w.members();
    CHECK(m == std::vector<std::uint64_t>{7, 11, 17, 19, 23});
    CHECK_THROWS_AS(PrimeWindow::make(3, 23, 5), std::invalid_argument);
    CHECK_THROWS_AS(PrimeWindow::make(11, 7, 5), std::invalid_argument);
}

TEST_CASE("reduce mod ell") {
    // (1-T)(1+T) h with h = 1 + T^2: direct coefficient reduction
    ReducedL L = synthetic(5, {1, 0, 0, 0, -1}, +1);
    Fq F7 = Fq::prime(7);
    FqPoly f = reduce_mod_ell(L, F7);
    CHECK(f == FqPoly::from_ints(F7, {1, 0, 0, 0, -1}));
    Fq F5 = Fq::prime(5);
    CHECK_THROWS_AS(reduce_mod_ell(L, F5), std::invalid_argument);

    // unitarized denominators are inverted mod l
    ReducedL L2 = synthetic(5, {1, 0, 1}, +1);
    L2.reduced[1] = Rational(3, 5);
    FqPoly f2 = reduce_mod_ell(L2, F7);
    // 3/5 mod 7 = 3 * 3 = 2
    CHECK(f2.coeff(1) == 2);
}

TEST_CASE("witness basics") {
    // an irreducible quartic reduction witnesses T1 in the odd-N context
    ReducedL L = legendre_reduced(5, 1, 3, 0);
    PrimeWindow w = PrimeWindow::make(7, 17, 5);
    WitnessRecord rec = galois_maximality(L, w);
    CHECK(rec.per_ell.size() == 4);  // 7, 11, 13, 17

    // a perfect square reduction witnesses nothing
    ReducedL sq = synthetic(5, {1, -4, 6, -4, 1}, +1);  // (1-T)^4
    for (std::uint64_t ell : {7ull, 11ull, 13ull}) {
        WitnessOutcome o = witness(sq, ell);
        CHECK_FALSE(o.classes[0]);
        CHECK_FALSE(o.classes[1]);
        CHECK_FALSE(o.classes[2]);
        CHECK_FALSE(o.classes[3]);
        CHECK(o.exceptional);
    }
    WitnessRecord rec2 = galois_maximality(sq, w);
    CHECK(rec2.verdict() == Verdict::Undetermined);

    CHECK_THROWS_AS(galois_maximality(sq, PrimeWindow::make(24, 28, 5)),
                    std::invalid_argument);  // no primes in [24, 28]
}

TEST_CASE("one-sidedness on cyclotomic-like products") {
    // genuinely small Galois group: witnessing never certifies
    for (auto coeffs : {std::vector<std::int64_t>{1, 0, 2, 0, 1},     // (1+T^2)^2
                        std::vector<std::int64_t>{1, 2, 3, 2, 1},     // (1+T+T^2)^2
                        std::vector<std::int64_t>{1, 0, -2, 0, 1}}) { // (1-T^2)^2 -ish
        ReducedL L = synthetic(5, coeffs, +1);
        for (auto [lo, hi] : {std::pair<std::uint64_t, std::uint64_t>{7, 23}, {29, 53}}) {
            WitnessRecord rec = galois_maximality(L, PrimeWindow::make(lo, hi, 5));
            CHECK(rec.verdict() == Verdict::Undetermined);
        }
    }
}

TEST_CASE("witness monotonicity in the window") {
    ReducedL L = legendre_reduced(5, 1, 3, 0);
    WitnessRecord small = galois_maximality(L, PrimeWindow::make(7, 13, 5));
    WitnessRecord big = galois_maximality(L, PrimeWindow::make(7, 23, 5));
    for (int i = 0; i < 4; ++i)
        if (small.accumulated[i]) CHECK(big.accumulated[i]);
    if (small.verdict() == Verdict::MaximalCertified)
        CHECK(big.verdict() == Verdict::MaximalCertified);
}

TEST_CASE("twist scan summary at q = 5, d = 3") {
    Fq F = Fq::make(5, 1);
    FqPoly m = FqPoly::from_ints(F, {0, -1, 1});
    FqPoly g = canonical_g(F, 3, m);
    TwistFamily fam = TwistFamily::legendre(F, 3, g);
    PrimeWindow w = PrimeWindow::make(7, 23, 5);
    ScanOptions opts;
    opts.verify_euler = true;
    ScanResult res = run_twist_scan(fam, w, opts);
    CHECK(res.summary.total == fam.parameter_points().size());
    CHECK(res.summary.total == res.summary.certified + res.summary.undetermined);
    for (const auto& row : res.rows) {
        CHECK(row.N == 5);
        CHECK(row.N_red == 4);
        CHECK(row.euler_verified);
    }
    // determinism of the scan itself
    ScanResult res2 = run_twist_scan(fam, w, opts);
    REQUIRE(res.rows.size() == res2.rows.size());
    for (std::size_t i = 0; i < res.rows.size(); ++i) {
        CHECK(res.rows[i].L.c == res2.rows[i].L.c);
        CHECK(res.rows[i].record.accumulated == res2.rows[i].record.accumulated);
    }
}

TEST_CASE("witness regression: fixed instance over F_5") {
    // Legendre, d = 3, g = t^2 + t + 1, c = 2, window {7, 11, 13, 17}
    Fq F = Fq::make(5, 1);
    FqPoly g = FqPoly::from_ints(F, {1, 1, 1});
    TwistFamily fam = TwistFamily::legendre(F, 3, g);
    LPolynomial L = l_function(fam.twist(2));
    CHECK(L.c == std::vector<std::int64_t>{1, -1, -10, 50, 125, -3125});
    CHECK(L.sign == +1);

    ReducedL red = reduce_l(L);
    WitnessRecord rec = galois_maximality(red, PrimeWindow::make(7, 17, 5));
    REQUIRE(rec.per_ell.size() == 4);
    auto classes_of = [&](std::uint64_t ell) {
        for (const auto& w : rec.per_ell)
            if (w.ell == ell) return w.classes;
        REQUIRE(false);
        return std::array<bool, 4>{};
    };
    CHECK(classes_of(7) == std::array<bool, 4>{false, true, false, false});
    CHECK(classes_of(11) == std::array<bool, 4>{false, false, false, false});
    CHECK(classes_of(13) == std::array<bool, 4>{true, false, true, true});
    CHECK(classes_of(17) == std::array<bool, 4>{true, false, true, true});
    CHECK(rec.verdict() == Verdict::MaximalCertified);

    // independent cross-check of the l = 13 factorization shape
    Fq F13 = Fq::prime(13);
    FqPoly fbar = reduce_mod_ell(red, F13);
    CHECK(is_irreducible(fbar));
}

TEST_CASE("scan regression: undetermined proportion at q = 13, d = 3") {
    Fq F = Fq::make(13, 1);
    FqPoly m = FqPoly::from_ints(F, {0, -1, 1});
    FqPoly g = canonical_g(F, 3, m);
    TwistFamily fam = TwistFamily::legendre(F, 3, g);
    // p = 13 is excluded from the window automatically
    PrimeWindow w = PrimeWindow::make(7, 23, 13);
    CHECK(w.members() == std::vector<std::uint64_t>{7, 11, 17, 19, 23});
    ScanOptions opts;
    ScanResult res = run_twist_scan(fam, w, opts);
    CHECK(res.summary.total == 9);
    CHECK(res.summary.certified == 4);
    CHECK(res.summary.undetermined == 5);
    CHECK(res.summary.undetermined_fraction() < 0.99);  // well below certainty of failure
}

TEST_CASE("scan results are independent of the parallel schedule") {
    Fq F = Fq::make(13, 1);
    FqPoly m = FqPoly::from_ints(F, {0, -1, 1});
    TwistFamily fam = TwistFamily::legendre(F, 3, canonical_g(F, 3, m));
    PrimeWindow w = PrimeWindow::make(7, 19, 13);
    ScanOptions serial, parallel;
    serial.jobs = 1;
    parallel.jobs = 4;
    ScanResult a = run_twist_scan(fam, w, serial);
    ScanResult b = run_twist_scan(fam, w, parallel);
    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        CHECK(a.rows[i].c == b.rows[i].c);
        CHECK(a.rows[i].L.c == b.rows[i].L.c);
        CHECK(a.rows[i].record.accumulated == b.rows[i].record.accumulated);
    }
    CHECK(a.summary.certified == b.summary.certified);
}
