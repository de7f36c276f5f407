#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ellsieve/errors.hpp"

namespace ellsieve::ff {

// Square class of an element of F_l, l an odd prime: the image in
// F_l^* / (F_l^*)^2 encoded as +1 (nonzero square), -1 (non-square),
// 0 (the zero element).
struct SquareClass {
    int v = 0;   // one of {+1, -1, 0}

    constexpr SquareClass() = default;
    constexpr explicit SquareClass(int x) : v(x) {}

    friend constexpr SquareClass operator*(SquareClass a, SquareClass b) {
        return SquareClass(a.v * b.v);
    }
    friend constexpr bool operator==(SquareClass a, SquareClass b) { return a.v == b.v; }
    friend constexpr bool operator!=(SquareClass a, SquareClass b) { return a.v != b.v; }
};

inline constexpr SquareClass kSquare{+1};
inline constexpr SquareClass kNonSquare{-1};
inline constexpr SquareClass kZeroClass{0};

bool is_prime_u64(std::uint64_t n);

// x^((l-1)/2) mod l for an odd prime l; x is reduced mod l first.
SquareClass square_class_mod(std::int64_t x, std::uint64_t ell);

// F_{p^k}, p an odd prime, with elements represented as indices
// 0..q-1.  The index encodes the coefficient vector of the residue
// polynomial in base p, least significant digit = constant term.
// Two fields with equal (p, k) always carry the identical modulus:
// the lexicographically first monic irreducible of degree k over F_p,
// coefficient tuples compared from the highest coefficient down.
//
// Fields are immutable after construction and safe to share between
// threads.  They are passed around by reference; there is no registry.
class Fq {
public:
    // Base field for elliptic surfaces: requires p >= 5.
    static Fq make(std::uint64_t p, unsigned k);

    // Prime field F_l for sieve-side arithmetic: any odd prime l >= 3.
    static Fq prime(std::uint64_t ell);

    std::uint64_t p() const { return p_; }
    unsigned k() const { return k_; }
    std::uint32_t q() const { return q_; }

    // modulus coefficients c_0..c_k (monic, c_k = 1); empty for k = 1.
    const std::vector<std::uint32_t>& modulus() const { return modulus_; }

    std::uint32_t zero() const { return 0; }
    std::uint32_t one() const { return 1; }

    std::uint32_t add(std::uint32_t a, std::uint32_t b) const { return add_[idx(a, b)]; }
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return add_[idx(a, neg_[b])]; }
    std::uint32_t neg(std::uint32_t a) const { return neg_[a]; }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return mul_[idx(a, b)]; }
    std::uint32_t inv(std::uint32_t a) const {
        if (a == 0) throw std::invalid_argument("Fq::inv: division by zero");
        return inv_[a];
    }
    std::uint32_t div(std::uint32_t a, std::uint32_t b) const { return mul(a, inv(b)); }

    std::uint32_t pow(std::uint32_t a, std::uint64_t e) const;

    // embedding of an integer (reduced mod p) as a constant
    std::uint32_t from_int(std::int64_t n) const;

    // for prime fields only: the canonical lift 0..p-1
    std::uint64_t to_int(std::uint32_t a) const {
        if (k_ != 1) throw std::invalid_argument("Fq::to_int: extension element");
        return a;
    }

    // square class via the (q-1)/2 power
    SquareClass square_class(std::uint32_t a) const;

    bool same_field(const Fq& other) const {
        return p_ == other.p_ && k_ == other.k_;
    }

    std::string to_string() const;   // "p^k"

private:
    Fq(std::uint64_t p, unsigned k, bool allow_small_p);
    std::size_t idx(std::uint32_t a, std::uint32_t b) const {
        return static_cast<std::size_t>(a) * q_ + b;
    }

    std::uint64_t p_;
    unsigned k_;
    std::uint32_t q_;
    std::vector<std::uint32_t> modulus_;
    std::vector<std::uint32_t> add_, mul_;
    std::vector<std::uint32_t> neg_, inv_;
};

}  // namespace ellsieve::ff
