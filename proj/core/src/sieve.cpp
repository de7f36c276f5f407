#include "ellsieve/sieve.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ellsieve/errors.hpp"

namespace ellsieve::sieve {

PrimeWindow PrimeWindow::make(std::uint64_t ell_min, std::uint64_t ell_max, std::uint64_t p,
                              std::vector<std::uint64_t> extra) {
    if (ell_min < 5) throw std::invalid_argument("PrimeWindow: ell_min must be >= 5");
    if (ell_max < ell_min) throw std::invalid_argument("PrimeWindow: empty window");
    PrimeWindow w;
    w.ell_min = ell_min;
    w.ell_max = ell_max;
    w.excluded = std::move(extra);
    w.excluded.push_back(p);
    std::sort(w.excluded.begin(), w.excluded.end());
    w.excluded.erase(std::unique(w.excluded.begin(), w.excluded.end()), w.excluded.end());
    return w;
}

std::vector<std::uint64_t> PrimeWindow::members() const {
    std::vector<std::uint64_t> out;
    for (std::uint64_t ell = ell_min; ell <= ell_max; ++ell) {
        if (!ff::is_prime_u64(ell)) continue;
        if (std::binary_search(excluded.begin(), excluded.end(), ell)) continue;
        out.push_back(ell);
    }
    return out;
}

ff::FqPoly reduce_mod_ell(const ReducedL& L, const ff::Fq& Fl) {
    const ff::Fq& F = Fl;
    if (F.k() != 1 || F.p() < 3)
        throw std::invalid_argument("reduce_mod_ell: l must be an odd prime");
    if (L.q % F.p() == 0)
        throw std::invalid_argument("reduce_mod_ell: l divides q");
    std::vector<std::uint32_t> c(L.reduced.size());
    for (std::size_t i = 0; i < L.reduced.size(); ++i) {
        const Rational& r = L.reduced[i];
        std::uint32_t num = F.from_int(r.num);
        std::uint32_t den = F.from_int(r.den);
        c[i] = F.mul(num, F.inv(den));
    }
    ff::FqPoly f(F, std::move(c));
    if (f.degree() != static_cast<int>(L.N_red))
        throw invariant_error("reduce_mod_ell: degree dropped");
    return f;
}

const char* verdict_name(Verdict v) {
    return v == Verdict::MaximalCertified ? "MaximalCertified" : "Undetermined";
}

WitnessOutcome witness(const ReducedL& L, std::uint64_t ell) {
    WitnessOutcome out;
    out.ell = ell;
    ff::Fq F = ff::Fq::prime(ell);
    ff::FqPoly fbar = reduce_mod_ell(L, F);

    orth::ThetaContext ctx;
    ctx.N_ambient = static_cast<unsigned>(L.unitarized.size()) - 1;
    ctx.eps1 = L.sign;
    ctx.infer_from_poly = true;
    orth::ThetaFlags flags = orth::classify_theta(fbar, ctx);
    out.classes = flags.in;
    out.eps2 = F.square_class(fbar.eval(F.from_int(-1)));
    out.disc_cls = flags.separable ? orth::disc_palindromic(fbar) : ff::kZeroClass;
    out.exceptional = flags.value_at_minus1_vanishes || flags.value_at_plus1_vanishes ||
                      !flags.separable;

    std::ostringstream os;
    bool first = true;
    for (const auto& [g, m] : ff::factor(fbar)) {
        if (!first) os << ".";
        first = false;
        os << g.degree();
        if (m > 1) os << "^" << m;
    }
    out.factorization = os.str();
    return out;
}

WitnessRecord galois_maximality(const ReducedL& L, const PrimeWindow& window) {
    auto ells = window.members();
    if (ells.empty()) throw std::invalid_argument("galois_maximality: empty window");
    WitnessRecord rec;
    std::optional<ff::SquareClass> seen_eps2;
    for (std::uint64_t ell : ells) {
        WitnessOutcome w = witness(L, ell);
        for (int i = 0; i < 4; ++i) rec.accumulated[i] = rec.accumulated[i] || w.classes[i];
        if (!w.exceptional) {
            if (seen_eps2 && !(*seen_eps2 == w.eps2)) rec.eps2_constant = false;
            seen_eps2 = w.eps2;
        }
        rec.per_ell.push_back(std::move(w));
    }
    return rec;
}

HBoundResult h_lower_bound(unsigned N, unsigned N_red, ThetaClass cls,
                           const std::vector<HBoundInput>& window) {
    HBoundResult out;
    // exact rational lemma bounds
    auto lemma = [&](std::uint64_t) -> Rational {
        std::int64_t n = static_cast<std::int64_t>(N);
        switch (cls) {
            case ThetaClass::T1: return Rational(1, 4 * n * n);
            case ThetaClass::T2: return Rational(1, 5 * n);
            case ThetaClass::T3: return Rational(7, 3 * n);
            case ThetaClass::T4:
                if (N_red >= 10) return Rational(1, 9 * n * (n - 6));
                return Rational(1, n * n);
        }
        return Rational(0);
    };
    for (const auto& in : window) {
        Rational delta(0);
        if (orth::theta_lemma_valid(in.ell, N)) {
            delta = lemma(in.ell);
        } else if (in.measured) {
            delta = *in.measured;
            out.fallback_used = true;
        } else {
            out.skipped.push_back(in.ell);
            continue;
        }
        if (delta.num <= 0) continue;
        if (!(delta.num < delta.den))
            throw std::invalid_argument("h_lower_bound: density must lie in (0, 1)");
        out.value = out.value + delta / (Rational(1) - delta);
    }
    return out;
}

Rational exponent_identity(unsigned N) {
    std::int64_t n = static_cast<std::int64_t>(N);
    return Rational(7 * n * n - 7 * n + 4);
}

SieveBound sieve_bound(const BoundParams& params) {
    if (params.N < 5) throw std::invalid_argument("sieve_bound: N must be >= 5");
    SieveBound out;
    std::int64_t n = static_cast<std::int64_t>(params.N);
    out.d_prime = static_cast<unsigned>(n * (n - 1) / 2);
    std::int64_t dp = static_cast<std::int64_t>(out.d_prime);
    out.A = params.prime_order_case ? Rational(7 * dp + 2, 2) : Rational(3 * dp + 2, 2);
    out.gamma = Rational(1) / (Rational(2) * out.A);
    out.two_over_gamma = Rational(4) * out.A;
    double Ad = out.A.to_double();
    out.L = std::pow(static_cast<double>(params.q), 1.0 / (2.0 * Ad));
    out.trivial_regime = out.L < static_cast<double>(params.ell0);
    double qd = static_cast<double>(params.q);
    out.bound = static_cast<double>(params.cover_order) *
                (qd + params.C * std::sqrt(qd) * std::pow(out.L + 1.0, Ad)) / params.H;
    out.headline = static_cast<double>(params.N) * params.N *
                   static_cast<double>(params.cover_order) *
                   std::pow(qd, 1.0 - out.gamma.to_double()) * std::log(qd);
    return out;
}

}  // namespace ellsieve::sieve
