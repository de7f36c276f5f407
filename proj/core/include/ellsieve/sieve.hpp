#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ellsieve/lfunction.hpp"
#include "ellsieve/theta.hpp"

namespace ellsieve::sieve {

using lfunc::Rational;
using lfunc::ReducedL;
using orth::ThetaClass;

// primes l0 <= l <= L, minus the excluded set (which always contains the
// residue characteristic)
struct PrimeWindow {
    std::uint64_t ell_min = 5;
    std::uint64_t ell_max = 5;
    std::vector<std::uint64_t> excluded;

    static PrimeWindow make(std::uint64_t ell_min, std::uint64_t ell_max, std::uint64_t p,
                            std::vector<std::uint64_t> extra = {});
    std::vector<std::uint64_t> members() const;
};

// the reduced unitarized L mapped into F_l[T]; requires l coprime to q.
// The caller owns the field and must keep it alive for the result.
ff::FqPoly reduce_mod_ell(const ReducedL& L, const ff::Fq& Fl);

struct WitnessOutcome {
    std::uint64_t ell = 0;
    std::array<bool, 4> classes{};
    ff::SquareClass eps2;       // class of fbar(-1), the coset spinor datum
    ff::SquareClass disc_cls;   // class of disc(fbar)
    bool exceptional = false;   // fbar(+-1) = 0 or fbar inseparable
    std::string factorization;  // "deg^mult" summary for reports
};

// classify the mod-l reduction in the coset context the polynomial itself
// determines; N_ambient and the sign come from the L-polynomial
WitnessOutcome witness(const ReducedL& L, std::uint64_t ell);

enum class Verdict { MaximalCertified, Undetermined };

const char* verdict_name(Verdict v);

struct WitnessRecord {
    std::vector<WitnessOutcome> per_ell;
    std::array<bool, 4> accumulated{};
    bool eps2_constant = true;  // across non-exceptional window members

    Verdict verdict() const {
        return (accumulated[0] && accumulated[1] && accumulated[2] && accumulated[3])
                   ? Verdict::MaximalCertified
                   : Verdict::Undetermined;
    }
};

WitnessRecord galois_maximality(const ReducedL& L, const PrimeWindow& window);

// H = sum over window of delta/(1 - delta); per prime the analytic branch
// is admissible only for l >= 5 N^2, otherwise the measured density is
// used and the fallback is flagged (primes with neither are skipped and
// reported)
struct HBoundInput {
    std::uint64_t ell = 0;
    std::optional<Rational> measured;
};

struct HBoundResult {
    Rational value{0};
    bool fallback_used = false;
    std::vector<std::uint64_t> skipped;
};

HBoundResult h_lower_bound(unsigned N, unsigned N_red, ThetaClass cls,
                           const std::vector<HBoundInput>& window);

struct BoundParams {
    unsigned N = 5;
    std::uint64_t q = 5;
    std::uint64_t cover_order = 1;  // |G(V/U)|, no default semantics: caller supplies
    double C = 1.0;                 // HEURISTIC scale of the error term
    bool prime_order_case = false;  // selects A = 7d'/2+1 instead of 3d'/2+1
    double H = 1.0;
    std::uint64_t ell0 = 13;
};

struct SieveBound {
    unsigned d_prime = 0;
    Rational A{0};
    Rational gamma{0};            // 1/(2A)
    Rational two_over_gamma{0};   // 4A = 7N^2-7N+4 in the prime-order case
    double L = 0.0;               // q^(1/2A)
    double bound = 0.0;           // cover (q + C sqrt(q) (L+1)^A) / H
    double headline = 0.0;        // N^2 cover q^(1-gamma) log q
    bool trivial_regime = false;  // L below the first admissible prime
};

SieveBound sieve_bound(const BoundParams& params);

// 2/gamma for the prime-order case as an exact rational
Rational exponent_identity(unsigned N);

}  // namespace ellsieve::sieve
