#pragma once

#include <cstdint>
#include <vector>

#include "ellsieve/fqpoly.hpp"

namespace ellsieve::orth {

using ff::Fq;
using ff::FqPoly;
using ff::SquareClass;

// Membership in M_{N,l}: b_0 = 1, b_N^2 = 1 and b_{N-i} = b_N b_i for the
// indices strictly below the middle.  Reversed characteristic polynomials of
// isometries always satisfy this (with the middle coefficient forced to zero
// on the b_N = -1 sheet).
bool is_palindromic_member(const FqPoly& f);

// b_N of a member (+1 or -1 as a field element check)
bool is_plus_sheet(const FqPoly& f);

// all members of M_{N,l}, plus sheet first; 2 l^floor(N/2) polynomials
std::vector<FqPoly> palindromic_members(const Fq& F, unsigned N);

// plus sheet only: l^floor(N/2) polynomials
std::vector<FqPoly> plus_palindromic_members(const Fq& F, unsigned N);

// h of degree n with T^n h(T + T^(-1)) = f, for plus-palindromic f of
// degree 2n; rejects the b_N = -1 sheet
FqPoly associated_h(const FqPoly& f);

// square class of (-1)^n f(1) f(-1) for plus-palindromic f of degree 2n;
// agrees with the square class of disc(f) whenever the latter is nonzero
SquareClass disc_palindromic(const FqPoly& f);

class QuadSpace;

// a separable plus-palindromic f of degree dim(space) is the reversed
// characteristic polynomial of some element of SO(space) exactly when
// disc(f) and disc(Q) fall in the same square class
bool baeza_realizable(const FqPoly& f, const QuadSpace& space);

}  // namespace ellsieve::orth
