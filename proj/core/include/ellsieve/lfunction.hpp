#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ellsieve/surface.hpp"

namespace ellsieve::lfunc {

// exact fraction on 64-bit parts; products go through 128-bit intermediates
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n) : num(n), den(1) {}
    Rational(std::int64_t n, std::int64_t d);

    bool is_zero() const { return num == 0; }
    bool is_integer() const { return den == 1; }

    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);
    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num == b.num && a.den == b.den;
    }
    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
    std::string to_string() const;
};

// integral L-polynomial: c_0 = 1, reciprocal roots of absolute value q,
// sign = det of the unitarized Frobenius
struct LPolynomial {
    std::vector<std::int64_t> c;
    std::uint64_t q = 0;
    int sign = +1;

    int degree() const { return static_cast<int>(c.size()) - 1; }
    std::string csv_row() const;   // "q,N,sign,c0,...,cN"
    std::string json() const;      // {"q":..,"N":..,"coeffs":[..],"sign":..}
};

// unitarized form L(T/q) and its reduction by the forced trivial factors
struct ReducedL {
    std::vector<Rational> unitarized;  // L_u coefficients
    std::vector<Rational> reduced;     // L_red coefficients, plus-palindromic
    unsigned N_red = 0;
    int sign = +1;
    std::uint64_t q = 0;
};

struct LOptions {
    std::uint64_t budget = 10'000'000'000ull;  // character evaluations
    bool budget_override = false;
    bool check_roots = true;  // Weil modulus sanity on every computed L
};

// L(E/K; T) via trace sums S_n over P^1(F_{q^n}), with the functional
// equation supplying the upper half of the coefficients.  Verifies
// integrality, the functional equation, and (optionally) that every
// reciprocal root has absolute value q to 1e-6 relative accuracy.
LPolynomial l_function(const EllipticSurface& E, const LOptions& opts = {});

// independent check: the inverted Euler product over closed points of
// degree <= N+1, expanded to order N+1; agrees with l_function
// coefficientwise and vanishes at order N+1
std::vector<std::int64_t> euler_product_series(const EllipticSurface& E, unsigned order);

std::vector<Rational> unitarize(const LPolynomial& L);

// strip (1 - sign T) for odd N, (1 - T^2) for even N with sign -1
ReducedL reduce_l(const LPolynomial& L);

// max | |reciprocal root| - q | / q over the roots of L
double weil_modulus_error(const LPolynomial& L);

// verifies c_{N-i} = (-1)^N sign q^(N-2i) c_i for all i
bool functional_equation_holds(const LPolynomial& L);

// planned character-evaluation cost of the trace sums S_1..S_m
std::uint64_t trace_cost(std::uint64_t q, unsigned n_max);

}  // namespace ellsieve::lfunc
