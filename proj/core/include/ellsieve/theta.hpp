#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ellsieve/orth.hpp"
#include "ellsieve/palindromic.hpp"

namespace ellsieve::orth {

enum class ThetaClass { T1 = 0, T2 = 1, T3 = 2, T4 = 3 };

const char* theta_name(ThetaClass c);

// Context a reduced characteristic polynomial is classified against.
// eps2 is the prescribed square class at -1 and disc_q the prescribed
// discriminant class; when `infer_from_poly` is set these two are taken
// from the polynomial itself (the values its own coset forces on it via
// the spinor and realizability identities) instead of the fixed fields.
struct ThetaContext {
    unsigned N_ambient = 0;
    int eps1 = +1;
    SquareClass eps2 = ff::kSquare;
    SquareClass disc_q = ff::kSquare;
    SpaceType reduced_type = SpaceType::Split;  // type of O(N_red, F_l), even N_red
    bool infer_from_poly = false;

    unsigned n_reduced() const {
        if (N_ambient % 2 == 1) return N_ambient - 1;
        return eps1 == +1 ? N_ambient : N_ambient - 2;
    }
};

struct ThetaFlags {
    std::array<bool, 4> in{};
    bool separable = false;
    bool totally_split = false;  // product of linear factors
    bool value_at_minus1_vanishes = false;
    bool value_at_plus1_vanishes = false;

    bool any() const { return in[0] || in[1] || in[2] || in[3]; }
};

// evaluate membership of a plus-palindromic f of degree N_red in the four
// sieving classes under the given context
ThetaFlags classify_theta(const FqPoly& f, const ThetaContext& ctx);

// exhaustive counts over the plus sheet of M_{N_red, l}
struct PolyCensus {
    std::uint64_t total = 0;                 // l^(N_red/2)
    std::array<std::uint64_t, 4> in_class{};       // full class conditions
    std::array<std::uint64_t, 4> pattern_only{};   // factorization pattern alone
    std::uint64_t not_totally_split = 0;
};

PolyCensus theta_poly_census(std::uint64_t ell, unsigned N_red, const ThetaContext& ctx);

// exhaustive counts over one (det, spinor) coset of an enumerable group
struct MatrixCensus {
    std::uint64_t coset_size = 0;            // |Omega|
    std::array<std::uint64_t, 4> in_class{};
};

MatrixCensus theta_matrix_census(const QuadSpace& S, CosetLabel coset,
                                 const ThetaContext& ctx,
                                 std::uint64_t budget = 20'000'000);

struct MonteCarloDensity {
    double estimate = 0.0;
    double ci_halfwidth = 0.0;  // 95% normal approximation
    std::uint64_t samples = 0;
};

MonteCarloDensity theta_montecarlo_density(const QuadSpace& S, CosetLabel coset,
                                           ThetaClass cls, const ThetaContext& ctx,
                                           std::uint64_t samples, std::uint64_t seed);

// strip the functional-equation trivial factors from a reversed
// characteristic polynomial over F_l: (1 - det T) for odd N,
// (1 - T^2) for even N with det = -1
FqPoly reduce_reversed_charpoly(const FqPoly& f, std::uint32_t det_value);

// analytic lower bounds for the class densities, valid for l >= 5 N^2
double theta_lemma_lower_bound(ThetaClass cls, unsigned N, unsigned N_red);
bool theta_lemma_valid(std::uint64_t ell, unsigned N);

}  // namespace ellsieve::orth
