#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "ellsieve/fq.hpp"

namespace ellsieve::ff {

// Dense univariate polynomial over Fq.  Coefficients are stored least
// significant first; the leading coefficient of a nonzero polynomial is
// nonzero, and the zero polynomial has an empty coefficient vector.
class FqPoly {
public:
    FqPoly() : F_(nullptr) {}
    explicit FqPoly(const Fq& F) : F_(&F) {}
    FqPoly(const Fq& F, std::vector<std::uint32_t> coeffs);

    // coefficients given as integers, reduced mod p (prime fields and
    // constants in extensions)
    static FqPoly from_ints(const Fq& F, const std::vector<std::int64_t>& coeffs);
    static FqPoly zero(const Fq& F) { return FqPoly(F); }
    static FqPoly one(const Fq& F) { return FqPoly(F, {1}); }
    static FqPoly t(const Fq& F) { return FqPoly(F, {0, 1}); }  // the variable
    static FqPoly constant(const Fq& F, std::uint32_t c);

    const Fq& field() const { return *F_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    std::uint32_t coeff(int i) const {
        return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : 0;
    }
    const std::vector<std::uint32_t>& coeffs() const { return c_; }
    std::uint32_t leading() const;
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }

    std::uint32_t eval(std::uint32_t x) const;

    friend FqPoly operator+(const FqPoly& a, const FqPoly& b);
    friend FqPoly operator-(const FqPoly& a, const FqPoly& b);
    friend FqPoly operator*(const FqPoly& a, const FqPoly& b);
    friend bool operator==(const FqPoly& a, const FqPoly& b);

    FqPoly scaled(std::uint32_t c) const;             // c * this
    FqPoly monic() const;                             // this / leading
    FqPoly derivative() const;
    FqPoly shifted(int n) const;                      // this * T^n, n >= 0

    // canonical ordering: by degree, then coefficients from the top down
    static bool less(const FqPoly& a, const FqPoly& b);

    std::string to_string() const;                    // "c0,c1,...,cn"
    static FqPoly parse(const Fq& F, const std::string& s);

private:
    void trim();
    const Fq* F_;
    std::vector<std::uint32_t> c_;
};

void divmod(const FqPoly& a, const FqPoly& b, FqPoly& quot, FqPoly& rem);
FqPoly gcd(FqPoly a, FqPoly b);                       // monic gcd
FqPoly powmod(const FqPoly& base, std::uint64_t e, const FqPoly& mod);
FqPoly compose_mod(const FqPoly& f, const FqPoly& g, const FqPoly& mod);  // f(g) mod m

// x |-> x^q applied q^e-fold under the modulus, i.e. T^(q^e) mod f
FqPoly frobenius_power(const FqPoly& f, unsigned e);

bool is_irreducible(const FqPoly& f);

// multiset of (monic irreducible, multiplicity), canonically sorted;
// together with the leading coefficient this reconstructs f exactly.
// Equal-degree splitting is randomized internally but re-seeded
// deterministically from `seed`, and the output order is canonical,
// so results are seed-independent.
std::vector<std::pair<FqPoly, unsigned>> factor(const FqPoly& f, std::uint64_t seed = 0);

bool is_squarefree(const FqPoly& f);

std::uint32_t resultant(const FqPoly& f, const FqPoly& g);
std::uint32_t discriminant(const FqPoly& f);

// all monic irreducible polynomials of the given degree, in canonical order
std::vector<FqPoly> monic_irreducibles(const Fq& F, unsigned degree);

// number of monic irreducibles of degree n over F_q (necklace count)
std::uint64_t irreducible_count(std::uint64_t q, unsigned n);

}  // namespace ellsieve::ff
