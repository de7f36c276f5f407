#pragma once

#include <cstdint>
#include <string>
#include <unordered_set>
#include <vector>

#include "ellsieve/fq.hpp"
#include "ellsieve/fqpoly.hpp"
#include "ellsieve/rng.hpp"

namespace ellsieve::orth {

using ff::Fq;
using ff::FqPoly;
using ff::SquareClass;

enum class SpaceType { Split, NonSplit, Odd };

// Quadratic space over F_l (l an odd prime) with a fixed canonical Gram
// matrix: N/2 hyperbolic planes for split even type, one plane replaced by
// diag(1, -delta) (delta the least non-square) for nonsplit even type, and
// hyperbolic planes plus diag(1) for odd N.
class QuadSpace {
public:
    QuadSpace(std::uint64_t ell, unsigned N, SpaceType type);

    const Fq& field() const { return F_; }
    std::uint64_t ell() const { return F_.p(); }
    unsigned dim() const { return N_; }
    SpaceType type() const { return type_; }

    // Gram matrix entry of the symmetric bilinear form B
    std::uint32_t gram(unsigned i, unsigned j) const { return gram_[i * N_ + j]; }

    std::uint32_t bilinear(const std::vector<std::uint32_t>& x,
                           const std::vector<std::uint32_t>& y) const;
    std::uint32_t quad(const std::vector<std::uint32_t>& v) const;  // Q(v) = B(v,v)

    SquareClass disc_class() const { return disc_; }

private:
    Fq F_;
    unsigned N_;
    SpaceType type_;
    std::vector<std::uint32_t> gram_;
    SquareClass disc_;
};

// N x N matrix over F_l, row major
struct OrthMat {
    unsigned n = 0;
    std::vector<std::uint32_t> a;

    static OrthMat identity(unsigned n);
    std::uint32_t& at(unsigned i, unsigned j) { return a[i * n + j]; }
    std::uint32_t at(unsigned i, unsigned j) const { return a[i * n + j]; }
    bool operator==(const OrthMat& o) const { return n == o.n && a == o.a; }
};

// row-major, comma-separated residues
std::string mat_to_string(const OrthMat& M);

OrthMat matmul(const Fq& F, const OrthMat& A, const OrthMat& B);
std::vector<std::uint32_t> matvec(const Fq& F, const OrthMat& A,
                                  const std::vector<std::uint32_t>& v);
bool is_isometry(const QuadSpace& S, const OrthMat& M);
std::uint32_t det(const Fq& F, OrthMat M);

// reversed characteristic polynomial det(1 - T M), division free
FqPoly char_poly_reversed(const Fq& F, const OrthMat& M);

// reflection in v, requires Q(v) != 0
OrthMat reflection(const QuadSpace& S, const std::vector<std::uint32_t>& v);

// spinor norm as the product of square classes Q(v_i) over a
// Cartan-Dieudonne factorization into reflections
SquareClass spinor_norm(const QuadSpace& S, const OrthMat& M);

struct CosetLabel {
    int det = +1;     // +-1
    int spinor = +1;  // +-1
    bool operator==(const CosetLabel& o) const { return det == o.det && spinor == o.spinor; }
};

CosetLabel coset_label(const QuadSpace& S, const OrthMat& M);
bool omega_member(const QuadSpace& S, const OrthMat& M);

// |O(N, F_l)| of the given type, closed form
std::uint64_t group_order(std::uint64_t ell, unsigned N, SpaceType type);

// matrices packed base l into 128 bits for set membership
using MatKey = unsigned __int128;
MatKey mat_key(std::uint64_t ell, const OrthMat& M);
OrthMat mat_unkey(std::uint64_t ell, unsigned n, MatKey k);

// BFS closure over all reflections; throws budget_error when the closed-form
// order exceeds the budget.  Returns keys in sorted order.
std::vector<MatKey> enumerate_group(const QuadSpace& S,
                                    std::uint64_t budget = 20'000'000);

// anisotropic projective representatives (one v per line with Q(v) != 0)
std::vector<std::vector<std::uint32_t>> anisotropic_lines(const QuadSpace& S);

// random isometry as a product of 2 N ceil(log2 l) random reflections,
// conditioned on landing in the coset with the given label
OrthMat random_coset_element(const QuadSpace& S, CosetLabel target, SplitMix64& rng);

}  // namespace ellsieve::orth
