#include "ellsieve/theta.hpp"

#include <cmath>

#include "ellsieve/errors.hpp"

namespace ellsieve::orth {

const char* theta_name(ThetaClass c) {
    switch (c) {
        case ThetaClass::T1: return "T1";
        case ThetaClass::T2: return "T2";
        case ThetaClass::T3: return "T3";
        case ThetaClass::T4: return "T4";
    }
    return "?";
}

namespace {

struct Factored {
    std::vector<std::pair<FqPoly, unsigned>> fac;
    bool separable;
    bool totally_split;
};

Factored analyze(const FqPoly& f) {
    Factored out;
    out.fac = ff::factor(f);
    out.separable = true;
    out.totally_split = true;
    for (const auto& [g, m] : out.fac) {
        if (m > 1) out.separable = false;
        if (g.degree() > 1) out.totally_split = false;
    }
    return out;
}

bool is_prime_deg(unsigned d) {
    if (d < 2) return false;
    for (unsigned r = 2; r * r <= d; ++r)
        if (d % r == 0) return false;
    return true;
}

}  // namespace

ThetaFlags classify_theta(const FqPoly& f, const ThetaContext& ctx) {
    const Fq& F = f.field();
    unsigned N_red = ctx.n_reduced();
    if (f.degree() != static_cast<int>(N_red))
        throw std::invalid_argument("classify_theta: degree does not match the context");
    if (!is_palindromic_member(f) || !is_plus_sheet(f))
        throw std::invalid_argument("classify_theta: not a plus-palindromic member");

    ThetaFlags flags;
    Factored fd = analyze(f);
    flags.separable = fd.separable;
    flags.totally_split = fd.totally_split;

    std::uint32_t f_at_m1 = f.eval(F.from_int(-1));
    std::uint32_t f_at_p1 = f.eval(1);
    flags.value_at_minus1_vanishes = (f_at_m1 == 0);
    flags.value_at_plus1_vanishes = (f_at_p1 == 0);

    SquareClass class_m1 = F.square_class(f_at_m1);
    SquareClass disc_f = fd.separable ? disc_palindromic(f) : ff::kZeroClass;

    SquareClass eps2 = ctx.eps2;
    SquareClass disc_q = ctx.disc_q;
    if (ctx.infer_from_poly) {
        eps2 = class_m1;
        disc_q = disc_f;
    }
    bool side_conditions = (class_m1 != ff::kZeroClass) && (class_m1 == eps2) &&
                           (disc_f != ff::kZeroClass) && (disc_f == disc_q);

    // T1: irreducibility-flavored class, four variants
    bool odd_or_minus = (ctx.N_ambient % 2 == 1) || (ctx.N_ambient % 2 == 0 && ctx.eps1 == -1);
    if (odd_or_minus) {
        flags.in[0] = (fd.fac.size() == 1 && fd.fac[0].second == 1 &&
                       fd.fac[0].first.degree() == static_cast<int>(N_red));
    } else if (ctx.reduced_type == SpaceType::NonSplit) {
        bool irred = (fd.fac.size() == 1 && fd.fac[0].second == 1 &&
                      fd.fac[0].first.degree() == static_cast<int>(N_red));
        flags.in[0] = irred && (class_m1 != ff::kZeroClass) && (class_m1 == eps2) &&
                      (disc_f != ff::kZeroClass) && (disc_f == disc_q);
    } else if (F.p() % 4 == 1) {
        // two distinct irreducibles of half degree
        flags.in[0] = (fd.fac.size() == 2 && fd.fac[0].second == 1 && fd.fac[1].second == 1 &&
                       fd.fac[0].first.degree() == static_cast<int>(N_red / 2) &&
                       fd.fac[1].first.degree() == static_cast<int>(N_red / 2));
    } else {
        // irreducible quadratic times an irreducible of degree N_red - 2
        bool ok = (fd.fac.size() == 2 && fd.fac[0].second == 1 && fd.fac[1].second == 1);
        if (ok) {
            int d0 = fd.fac[0].first.degree();
            int d1 = fd.fac[1].first.degree();
            ok = (d0 == 2 && d1 == static_cast<int>(N_red) - 2) ||
                 (d1 == 2 && d0 == static_cast<int>(N_red) - 2);
        }
        flags.in[0] = ok;
    }

    // T2: irreducible quadratic times distinct irreducibles of odd degree
    if (fd.separable) {
        unsigned even_factors = 0;
        bool even_is_quadratic = true;
        for (const auto& [g, m] : fd.fac) {
            (void)m;
            if (g.degree() % 2 == 0) {
                ++even_factors;
                if (g.degree() != 2) even_is_quadratic = false;
            }
        }
        flags.in[1] = (even_factors == 1) && even_is_quadratic && side_conditions;
    }

    // T3, T4: conditions on the associated polynomial h
    if (is_plus_sheet(f)) {
        FqPoly h = associated_h(f);
        auto hd = analyze(h);
        if (hd.separable) {
            bool big_prime = false;
            unsigned quad_factors = 0, other_even = 0;
            for (const auto& [g, m] : hd.fac) {
                (void)m;
                unsigned d = static_cast<unsigned>(g.degree());
                if (is_prime_deg(d) && 4 * d > N_red) big_prime = true;
                if (d == 2) ++quad_factors;
                else if (d % 2 == 0) ++other_even;
            }
            flags.in[2] = big_prime && side_conditions;
            flags.in[3] = (quad_factors == 1) && (other_even == 0) && side_conditions;
        }
    }
    return flags;
}

PolyCensus theta_poly_census(std::uint64_t ell, unsigned N_red, const ThetaContext& ctx) {
    Fq F = Fq::prime(ell);
    PolyCensus census;
    ThetaContext pattern_ctx = ctx;
    pattern_ctx.infer_from_poly = true;  // side conditions satisfied by construction
    for (const FqPoly& f : plus_palindromic_members(F, N_red)) {
        ++census.total;
        ThetaFlags full = classify_theta(f, ctx);
        ThetaFlags pat = classify_theta(f, pattern_ctx);
        for (int i = 0; i < 4; ++i) {
            census.in_class[i] += full.in[i];
            census.pattern_only[i] += pat.in[i];
        }
        census.not_totally_split += !full.totally_split;
    }
    return census;
}

FqPoly reduce_reversed_charpoly(const FqPoly& f, std::uint32_t det_value) {
    const Fq& F = f.field();
    unsigned N = static_cast<unsigned>(f.degree());
    FqPoly divisor(F);
    if (N % 2 == 1) {
        divisor = FqPoly(F, {1, F.neg(det_value)});  // 1 - det T
    } else if (det_value == F.from_int(-1)) {
        divisor = FqPoly::from_ints(F, {1, 0, -1});  // 1 - T^2
    } else {
        return f;
    }
    FqPoly q(F), r(F);
    ff::divmod(f, divisor, q, r);
    if (!r.is_zero())
        throw invariant_error("reduce_reversed_charpoly: trivial factor does not divide");
    return q;
}

MatrixCensus theta_matrix_census(const QuadSpace& S, CosetLabel coset,
                                 const ThetaContext& ctx, std::uint64_t budget) {
    const Fq& F = S.field();
    MatrixCensus census;
    auto keys = enumerate_group(S, budget);
    for (auto k : keys) {
        OrthMat M = mat_unkey(S.ell(), S.dim(), k);
        CosetLabel lab = coset_label(S, M);
        if (!(lab == coset)) continue;
        ++census.coset_size;
        FqPoly f = char_poly_reversed(F, M);
        std::uint32_t d = (lab.det == 1) ? 1u : F.from_int(-1);
        FqPoly fred = reduce_reversed_charpoly(f, d);
        ThetaFlags flags = classify_theta(fred, ctx);
        for (int i = 0; i < 4; ++i) census.in_class[i] += flags.in[i];
    }
    return census;
}

MonteCarloDensity theta_montecarlo_density(const QuadSpace& S, CosetLabel coset,
                                           ThetaClass cls, const ThetaContext& ctx,
                                           std::uint64_t samples, std::uint64_t seed) {
    if (samples < 1000)
        throw std::invalid_argument("theta_montecarlo_density: need at least 10^3 samples");
    const Fq& F = S.field();
    SplitMix64 rng(seed);
    std::uint64_t hits = 0;
    for (std::uint64_t i = 0; i < samples; ++i) {
        OrthMat M = random_coset_element(S, coset, rng);
        FqPoly f = char_poly_reversed(F, M);
        std::uint32_t d = (coset.det == 1) ? 1u : F.from_int(-1);
        FqPoly fred = reduce_reversed_charpoly(f, d);
        ThetaFlags flags = classify_theta(fred, ctx);
        hits += flags.in[static_cast<int>(cls)];
    }
    MonteCarloDensity out;
    out.samples = samples;
    out.estimate = static_cast<double>(hits) / static_cast<double>(samples);
    out.ci_halfwidth =
        1.96 * std::sqrt(out.estimate * (1.0 - out.estimate) / static_cast<double>(samples));
    return out;
}

double theta_lemma_lower_bound(ThetaClass cls, unsigned N, unsigned N_red) {
    double n = static_cast<double>(N);
    switch (cls) {
        case ThetaClass::T1: return 1.0 / (4.0 * n * n);
        case ThetaClass::T2: return 1.0 / (5.0 * n);
        case ThetaClass::T3: return 7.0 / (3.0 * n);
        case ThetaClass::T4:
            if (N_red >= 10) return 1.0 / (9.0 * n * (n - 6.0));
            return 1.0 / (n * n);
    }
    return 0.0;
}

bool theta_lemma_valid(std::uint64_t ell, unsigned N) {
    return ell >= 5ull * N * N;
}

}  // namespace ellsieve::orth
