#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ellsieve/extfield.hpp"
#include "ellsieve/fqpoly.hpp"

namespace ellsieve::lfunc {

using ff::ExtField;
using ff::Fq;
using ff::FqPoly;

enum class ReductionType { Good, MultiplicativeSplit, MultiplicativeNonsplit, Additive };

const char* reduction_name(ReductionType t);

// a closed point of P^1: a monic irreducible polynomial, or the place at
// infinity (degree 1)
struct Place {
    bool at_infinity = false;
    FqPoly prime;  // monic irreducible when finite

    unsigned degree() const {
        return at_infinity ? 1u : static_cast<unsigned>(prime.degree());
    }
};

// classification of one fiber, base-field level
struct LocalReduction {
    Place place;
    ReductionType type = ReductionType::Good;
    // multiplicative places: the square class of the tangent-cone slope
    // datum over the residue field decides split (+1) vs nonsplit (-1)
    int split_sign = 0;
    // model minimal at this place (differs from the global model only when
    // the global one is non-minimal there)
    FqPoly a_min, b_min;
    bool was_minimalized = false;
    std::int64_t local_trace = 0;  // over the residue field
};

// y^2 = x^3 + a(t) x + b(t) over F_q(t), short Weierstrass, p >= 5
class EllipticSurface {
public:
    EllipticSurface(const Fq& F, FqPoly a, FqPoly b);

    static EllipticSurface legendre(const Fq& F);

    const Fq& field() const { return *F_; }
    const FqPoly& a() const { return a_; }
    const FqPoly& b() const { return b_; }
    const FqPoly& delta() const { return delta_; }
    const FqPoly& c4() const { return c4_; }

    // j = c4^3 / delta in lowest terms (numerator, monic denominator);
    // throws when j is constant
    std::pair<FqPoly, FqPoly> j_invariant() const;
    bool j_is_constant() const;

    // s-model at infinity: substitute t = 1/s and clear denominators with
    // the least twist x -> x/s^(2e), y -> y/s^(3e)
    EllipticSurface infinite_model() const;

    EllipticSurface quadratic_twist(const FqPoly& f) const;

    LocalReduction reduce_at(const Place& v) const;

    // classification only: type, split sign and the minimal model, without
    // the character-sum trace (cheap for every place degree)
    LocalReduction classify_at(const Place& v) const;

    // all places of bad reduction (including infinity) with local data
    std::vector<LocalReduction> bad_places() const;

    // N = deg M + 2 deg A - 4
    int degree_of_L() const;

private:
    const Fq* F_;
    FqPoly a_, b_, delta_, c4_;
};

// smallest admissible sieve prime for the curve: max(13, primes dividing a
// multiplicity in the denominator of j); 5 for the Legendre curve
std::uint64_t ell0_of_curve(const EllipticSurface& E, bool legendre_family);

// the twist family: f = (c - t) g(t) with g fixed squarefree of degree d-1
// coprime to m, m vanishing on the multiplicative locus
class TwistFamily {
public:
    TwistFamily(EllipticSurface base, FqPoly m, FqPoly g, unsigned d);

    static TwistFamily legendre(const Fq& F, unsigned d, FqPoly g);

    const EllipticSurface& base() const { return base_; }
    const FqPoly& m() const { return m_; }
    const FqPoly& g() const { return g_; }
    unsigned d() const { return d_; }

    // c in A^1(F_q) with g(c) m(c) != 0
    std::vector<std::uint32_t> parameter_points() const;

    FqPoly twist_poly(std::uint32_t c) const;  // (c - t) g(t)
    EllipticSurface twist(std::uint32_t c) const;

private:
    EllipticSurface base_;
    FqPoly m_, g_;
    unsigned d_;
};

// first valid g in canonical order: monic, degree d-1, squarefree,
// coprime to m
FqPoly canonical_g(const Fq& F, unsigned d, const FqPoly& m);

}  // namespace ellsieve::lfunc
