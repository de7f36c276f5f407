#include "ellsieve/palindromic.hpp"

#include <stdexcept>

#include "ellsieve/orth.hpp"

namespace ellsieve::orth {

bool is_palindromic_member(const FqPoly& f) {
    if (f.is_zero() || f.coeff(0) != 1) return false;
    const Fq& F = f.field();
    int N = f.degree();
    std::uint32_t bN = f.coeff(N);
    if (F.mul(bN, bN) != 1) return false;
    for (int i = 0; 2 * i < N; ++i)
        if (f.coeff(N - i) != F.mul(bN, f.coeff(i))) return false;
    return true;
}

bool is_plus_sheet(const FqPoly& f) {
    return !f.is_zero() && f.coeff(f.degree()) == 1;
}

std::vector<FqPoly> plus_palindromic_members(const Fq& F, unsigned N) {
    unsigned half = N / 2;
    std::uint64_t count = 1;
    for (unsigned i = 0; i < half; ++i) count *= F.q();
    std::vector<FqPoly> out;
    out.reserve(count);
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        std::vector<std::uint32_t> c(N + 1, 0);
        c[0] = 1;
        c[N] = 1;
        std::uint64_t t = idx;
        for (unsigned i = 1; i <= half; ++i) {
            c[i] = static_cast<std::uint32_t>(t % F.q());
            t /= F.q();
            c[N - i] = c[i];
        }
        out.emplace_back(F, std::move(c));
    }
    return out;
}

std::vector<FqPoly> palindromic_members(const Fq& F, unsigned N) {
    std::vector<FqPoly> out = plus_palindromic_members(F, N);
    // minus sheet: b_{N-i} = -b_i below the middle; for even N the middle
    // coefficient stays free
    unsigned half = N / 2;
    unsigned free_lo = (N % 2 == 0) ? half - 1 : half;
    std::uint64_t count = 1;
    for (unsigned i = 0; i < half; ++i) count *= F.q();
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        std::vector<std::uint32_t> c(N + 1, 0);
        c[0] = 1;
        c[N] = F.from_int(-1);
        std::uint64_t t = idx;
        for (unsigned i = 1; i <= free_lo; ++i) {
            c[i] = static_cast<std::uint32_t>(t % F.q());
            t /= F.q();
            c[N - i] = F.neg(c[i]);
        }
        if (N % 2 == 0) {
            c[half] = static_cast<std::uint32_t>(t % F.q());
            t /= F.q();
        }
        out.emplace_back(F, std::move(c));
    }
    return out;
}

FqPoly associated_h(const FqPoly& f) {
    const Fq& F = f.field();
    if (f.degree() < 0 || f.degree() % 2 != 0)
        throw std::invalid_argument("associated_h: degree must be even");
    unsigned n = static_cast<unsigned>(f.degree()) / 2;
    if (f.coeff(f.degree()) != 1)
        throw std::invalid_argument("associated_h: leading coefficient must be +1");
    // solve top down against the basis p_j = T^(n-j)(T^2+1)^j
    FqPoly rem = f;
    FqPoly t2p1 = FqPoly::from_ints(F, {1, 0, 1});
    std::vector<std::uint32_t> h(n + 1, 0);
    for (int j = static_cast<int>(n); j >= 0; --j) {
        std::uint32_t hj = rem.coeff(n + j);
        h[j] = hj;
        if (hj != 0) {
            FqPoly basis = FqPoly::one(F);
            for (int i = 0; i < j; ++i) basis = basis * t2p1;
            basis = basis.shifted(static_cast<int>(n) - j);
            rem = rem - basis.scaled(hj);
        }
    }
    if (!rem.is_zero())
        throw std::invalid_argument("associated_h: polynomial is not plus-palindromic");
    return FqPoly(F, std::move(h));
}

bool baeza_realizable(const FqPoly& f, const QuadSpace& space) {
    const Fq& F = f.field();
    if (space.dim() % 2 != 0)
        throw std::invalid_argument("baeza_realizable: space dimension must be even");
    if (f.degree() != static_cast<int>(space.dim()))
        throw std::invalid_argument("baeza_realizable: degree must match the dimension");
    if (!is_palindromic_member(f) || !is_plus_sheet(f))
        throw std::invalid_argument("baeza_realizable: not a plus-palindromic member");
    if (!ff::is_squarefree(f))
        throw std::invalid_argument("baeza_realizable: criterion stated for separable f");
    return F.square_class(ff::discriminant(f)) == space.disc_class();
}

SquareClass disc_palindromic(const FqPoly& f) {
    const Fq& F = f.field();
    if (f.degree() < 0 || f.degree() % 2 != 0)
        throw std::invalid_argument("disc_palindromic: degree must be even");
    if (f.coeff(f.degree()) != 1)
        throw std::invalid_argument("disc_palindromic: leading coefficient must be +1");
    unsigned n = static_cast<unsigned>(f.degree()) / 2;
    std::uint32_t v = F.mul(f.eval(1), f.eval(F.from_int(-1)));
    if (n % 2 == 1) v = F.neg(v);
    return F.square_class(v);
}

}  // namespace ellsieve::orth
