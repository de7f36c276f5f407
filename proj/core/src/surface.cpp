#include "ellsieve/surface.hpp"

#include <algorithm>

#include "ellsieve/errors.hpp"

namespace ellsieve::lfunc {

using ff::divmod;
using ff::gcd;

const char* reduction_name(ReductionType t) {
    switch (t) {
        case ReductionType::Good: return "good";
        case ReductionType::MultiplicativeSplit: return "mult_split";
        case ReductionType::MultiplicativeNonsplit: return "mult_nonsplit";
        case ReductionType::Additive: return "additive";
    }
    return "?";
}

namespace {

// exact division; throws if not divisible
FqPoly exact_div(const FqPoly& a, const FqPoly& b) {
    FqPoly q(a.field()), r(a.field());
    divmod(a, b, q, r);
    if (!r.is_zero()) throw invariant_error("exact_div: remainder nonzero");
    return q;
}

bool divides(const FqPoly& d, const FqPoly& a) {
    if (a.is_zero()) return true;
    FqPoly q(a.field()), r(a.field());
    divmod(a, d, q, r);
    return r.is_zero();
}

FqPoly compute_delta(const Fq& F, const FqPoly& a, const FqPoly& b) {
    // -16 (4 a^3 + 27 b^2)
    FqPoly d = (a * a * a).scaled(F.from_int(4)) + (b * b).scaled(F.from_int(27));
    return d.scaled(F.from_int(-16));
}

// trace over a residue field via the quadratic-character sum,
// a = -sum_x chi(x^3 + A x + B)
std::int64_t char_sum_trace(const ExtField& K, std::uint64_t A_index, std::uint64_t B_index) {
    std::int32_t la = K.log_of(A_index);
    std::int32_t lb = K.log_of(B_index);
    std::int64_t order = static_cast<std::int64_t>(K.size()) - 1;
    std::int64_t sum = K.chi_log(lb);  // x = 0 term
    for (std::int32_t j = 0; j < order; ++j) {
        std::int32_t cube = static_cast<std::int32_t>((3ll * j) % order);
        std::int32_t ax = (la < 0) ? ExtField::kLogZero
                                   : static_cast<std::int32_t>((static_cast<std::int64_t>(la) + j) % order);
        std::int32_t u = K.add_log(cube, ax);
        std::int32_t w = K.add_log(u, lb);
        sum += K.chi_log(w);
    }
    return -sum;
}

}  // namespace

EllipticSurface::EllipticSurface(const Fq& F, FqPoly a, FqPoly b)
    : F_(&F), a_(std::move(a)), b_(std::move(b)) {
    if (F.p() < 5) throw std::invalid_argument("EllipticSurface: residue characteristic must be >= 5");
    delta_ = compute_delta(F, a_, b_);
    c4_ = a_.scaled(F.from_int(-48));
    if (delta_.is_zero())
        throw std::invalid_argument("EllipticSurface: discriminant vanishes identically");
}

EllipticSurface EllipticSurface::legendre(const Fq& F) {
    // depress y^2 = x(x-1)(x-t):
    //   a = -(t^2 - t + 1)/3,  b = -(t-2)(t+1)(2t-1)/27
    FqPoly num_a = FqPoly::from_ints(F, {1, -1, 1});
    FqPoly a = num_a.scaled(F.neg(F.inv(F.from_int(3))));
    FqPoly num_b = FqPoly::from_ints(F, {-2, 1}) * FqPoly::from_ints(F, {1, 1}) *
                   FqPoly::from_ints(F, {-1, 2});
    FqPoly b = num_b.scaled(F.neg(F.inv(F.from_int(27))));
    return EllipticSurface(F, std::move(a), std::move(b));
}

std::pair<FqPoly, FqPoly> EllipticSurface::j_invariant() const {
    const Fq& F = *F_;
    FqPoly num = c4_ * c4_ * c4_;
    FqPoly den = delta_;
    if (num.is_zero()) {
        // j = 0 identically: constant
        throw std::invalid_argument("j_invariant: constant j (family outside the hypotheses)");
    }
    FqPoly g = gcd(num, den);
    num = exact_div(num, g);
    den = exact_div(den, g);
    // normalize the denominator monic
    std::uint32_t lc = den.leading();
    den = den.monic();
    num = num.scaled(F.inv(lc));
    if (num.degree() == 0 && den.degree() == 0)
        throw std::invalid_argument("j_invariant: constant j (family outside the hypotheses)");
    return {num, den};
}

bool EllipticSurface::j_is_constant() const {
    if (c4_.is_zero()) return true;
    FqPoly num = c4_ * c4_ * c4_;
    FqPoly g = gcd(num, delta_);
    return (num.degree() == g.degree()) && (delta_.degree() == g.degree());
}

EllipticSurface EllipticSurface::infinite_model() const {
    const Fq& F = *F_;
    int da = a_.degree(), db = b_.degree();
    unsigned e = 0;
    auto ceil_div = [](int x, int y) { return x <= 0 ? 0u : static_cast<unsigned>((x + y - 1) / y); };
    e = std::max(ceil_div(da, 4), ceil_div(db, 6));
    // A(s) = s^(4e) a(1/s), B(s) = s^(6e) b(1/s)
    std::vector<std::uint32_t> A(4 * e + 1, 0), B(6 * e + 1, 0);
    for (int j = 0; j <= da; ++j) A[4 * e - j] = a_.coeff(j);
    for (int j = 0; j <= db; ++j) B[6 * e - j] = b_.coeff(j);
    return EllipticSurface(F, FqPoly(F, std::move(A)), FqPoly(F, std::move(B)));
}

EllipticSurface EllipticSurface::quadratic_twist(const FqPoly& f) const {
    if (f.is_zero()) throw std::invalid_argument("quadratic_twist: zero twisting polynomial");
    if (!ff::is_squarefree(f))
        throw std::invalid_argument("quadratic_twist: twisting polynomial must be squarefree");
    return EllipticSurface(*F_, a_ * f * f, b_ * f * f * f);
}

LocalReduction EllipticSurface::reduce_at(const Place& v) const {
    LocalReduction red = classify_at(v);
    if (red.type == ReductionType::Good && !v.at_infinity) {
        const Fq& F = *F_;
        std::uint64_t qd = 1;
        bool qd_small = true;
        for (int i = 0; i < v.prime.degree(); ++i) {
            qd *= F.q();
            if (qd > (1ull << 22)) { qd_small = false; break; }
        }
        if (qd_small) {
            FqPoly abar(F), bbar(F), q(F);
            divmod(red.a_min, v.prime, q, abar);
            divmod(red.b_min, v.prime, q, bbar);
            ExtField K(F, v.prime);
            red.local_trace = char_sum_trace(K, K.from_poly(abar), K.from_poly(bbar));
        }
    }
    return red;
}

LocalReduction EllipticSurface::classify_at(const Place& v) const {
    if (v.at_infinity) {
        EllipticSurface inf = infinite_model();
        Place s{false, FqPoly::t(*F_)};
        LocalReduction red = inf.reduce_at(s);
        red.place = v;
        return red;
    }
    const Fq& F = *F_;
    const FqPoly& P = v.prime;
    LocalReduction red;
    red.place = v;
    FqPoly a = a_, b = b_;
    FqPoly P4 = P * P * P * P;
    FqPoly P6 = P4 * P * P;
    while (divides(P4, a) && divides(P6, b)) {
        a = exact_div(a, P4);
        b = exact_div(b, P6);
        red.was_minimalized = true;
    }
    red.a_min = a;
    red.b_min = b;
    FqPoly delta = compute_delta(F, a, b);

    FqPoly abar(F), bbar(F), q(F);
    divmod(a, P, q, abar);
    divmod(b, P, q, bbar);
    FqPoly dbar(F);
    divmod(delta, P, q, dbar);

    std::uint64_t qd = 1;
    bool qd_small = true;
    for (int i = 0; i < P.degree(); ++i) {
        qd *= F.q();
        if (qd > (1ull << 22)) { qd_small = false; break; }
    }

    if (!dbar.is_zero()) {
        red.type = ReductionType::Good;
        return red;
    }
    if (!abar.is_zero()) {
        // node at x0 = -3b/(2a) mod P; split iff 3 x0 is a square in the
        // residue field
        if (!qd_small)
            throw budget_error("reduce_at: residue field too large for the split test");
        FqPoly x0 = bbar.scaled(F.from_int(-3)) * FqPoly::constant(F, F.inv(F.from_int(2)));
        FqPoly r(F);
        divmod(x0, P, q, r);
        // divide by abar mod P: multiply by abar^(q^d - 2)
        FqPoly ainv = ff::powmod(abar, qd - 2, P);
        FqPoly prod = r * ainv;
        divmod(prod, P, q, r);
        FqPoly slope = r.scaled(F.from_int(3));
        divmod(slope, P, q, r);
        FqPoly cls = ff::powmod(r, (qd - 1) / 2, P);
        if (cls == FqPoly::one(F)) {
            red.type = ReductionType::MultiplicativeSplit;
            red.split_sign = +1;
            red.local_trace = +1;
        } else {
            red.type = ReductionType::MultiplicativeNonsplit;
            red.split_sign = -1;
            red.local_trace = -1;
        }
        return red;
    }
    red.type = ReductionType::Additive;
    red.local_trace = 0;
    return red;
}

std::vector<LocalReduction> EllipticSurface::bad_places() const {
    std::vector<LocalReduction> out;
    for (const auto& [P, mult] : ff::factor(delta_)) {
        (void)mult;
        LocalReduction red = reduce_at(Place{false, P});
        if (red.type != ReductionType::Good || red.was_minimalized) out.push_back(std::move(red));
    }
    LocalReduction inf = reduce_at(Place{true, FqPoly(*F_)});
    if (inf.type != ReductionType::Good || inf.was_minimalized) out.push_back(std::move(inf));
    return out;
}

int EllipticSurface::degree_of_L() const {
    int deg_m = 0, deg_a = 0;
    for (const auto& red : bad_places()) {
        unsigned d = red.place.degree();
        if (red.type == ReductionType::MultiplicativeSplit ||
            red.type == ReductionType::MultiplicativeNonsplit)
            deg_m += static_cast<int>(d);
        else if (red.type == ReductionType::Additive)
            deg_a += static_cast<int>(d);
    }
    int N = deg_m + 2 * deg_a - 4;
    if (N < 0)
        throw invariant_error("degree_of_L: negative degree, model outside the hypotheses");
    return N;
}

std::uint64_t ell0_of_curve(const EllipticSurface& E, bool legendre_family) {
    if (legendre_family) return 5;
    auto [num, den] = E.j_invariant();
    (void)num;
    std::uint64_t best = 13;
    for (const auto& [P, mult] : ff::factor(den)) {
        (void)P;
        unsigned m = mult;
        for (unsigned r = 2; r <= m; ++r) {
            if (m % r) continue;
            while (m % r == 0) m /= r;
            if (r > best) best = r;
        }
    }
    return best;
}

TwistFamily::TwistFamily(EllipticSurface base, FqPoly m, FqPoly g, unsigned d)
    : base_(std::move(base)), m_(std::move(m)), g_(std::move(g)), d_(d) {
    const Fq& F = base_.field();
    if (d < 1) throw std::invalid_argument("TwistFamily: d must be >= 1");
    if (g_.degree() != static_cast<int>(d) - 1)
        throw std::invalid_argument("TwistFamily: deg g must be d - 1");
    if (!ff::is_squarefree(g_)) throw std::invalid_argument("TwistFamily: g must be squarefree");
    if (m_.is_zero()) throw std::invalid_argument("TwistFamily: m must be nonzero");
    if (gcd(g_, m_).degree() != 0)
        throw std::invalid_argument("TwistFamily: g must be coprime to m");
    // m must vanish at a multiplicative place of the base
    bool hits_mult = false;
    for (const auto& red : base_.bad_places()) {
        if (red.place.at_infinity) continue;
        if (red.type == ReductionType::MultiplicativeSplit ||
            red.type == ReductionType::MultiplicativeNonsplit) {
            if (divides(red.place.prime, m_)) { hits_mult = true; break; }
        }
    }
    if (!hits_mult)
        throw std::invalid_argument("TwistFamily: m does not vanish on the multiplicative locus");
    (void)F;
}

TwistFamily TwistFamily::legendre(const Fq& F, unsigned d, FqPoly g) {
    return TwistFamily(EllipticSurface::legendre(F),
                       FqPoly::from_ints(F, {0, -1, 1}),  // t(t-1) up to sign
                       std::move(g), d);
}

std::vector<std::uint32_t> TwistFamily::parameter_points() const {
    const Fq& F = base_.field();
    std::vector<std::uint32_t> out;
    for (std::uint32_t c = 0; c < F.q(); ++c)
        if (g_.eval(c) != 0 && m_.eval(c) != 0) out.push_back(c);
    return out;
}

FqPoly TwistFamily::twist_poly(std::uint32_t c) const {
    const Fq& F = base_.field();
    return FqPoly(F, {c, F.from_int(-1)}) * g_;
}

EllipticSurface TwistFamily::twist(std::uint32_t c) const {
    return base_.quadratic_twist(twist_poly(c));
}

FqPoly canonical_g(const Fq& F, unsigned d, const FqPoly& m) {
    if (d < 1) throw std::invalid_argument("canonical_g: d must be >= 1");
    unsigned deg = d - 1;
    std::uint64_t count = 1;
    for (unsigned i = 0; i < deg; ++i) count *= F.q();
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        std::vector<std::uint32_t> c(deg + 1);
        std::uint64_t t = idx;
        for (unsigned i = 0; i < deg; ++i) { c[i] = static_cast<std::uint32_t>(t % F.q()); t /= F.q(); }
        c[deg] = 1;
        FqPoly g(F, std::move(c));
        if (!ff::is_squarefree(g)) continue;
        if (gcd(g, m).degree() != 0) continue;
        return g;
    }
    throw std::invalid_argument("canonical_g: no valid g exists");
}

}  // namespace ellsieve::lfunc
