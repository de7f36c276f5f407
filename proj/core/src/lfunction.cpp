#include "ellsieve/lfunction.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <sstream>

#include "ellsieve/errors.hpp"

namespace ellsieve::lfunc {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    __int128 p = static_cast<__int128>(a) * b;
    if (p > INT64_MAX || p < INT64_MIN) throw invariant_error("integer overflow");
    return static_cast<std::int64_t>(p);
}

std::int64_t gcd64(std::int64_t a, std::int64_t b) {
    a = a < 0 ? -a : a;
    b = b < 0 ? -b : b;
    while (b) { std::int64_t t = a % b; a = b; b = t; }
    return a;
}

std::int64_t ipow(std::uint64_t base, unsigned e) {
    std::int64_t r = 1;
    for (unsigned i = 0; i < e; ++i) r = checked_mul(r, static_cast<std::int64_t>(base));
    return r;
}

}  // namespace

Rational::Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    if (den < 0) { num = -num; den = -den; }
    std::int64_t g = gcd64(num, den);
    if (g > 1) { num /= g; den /= g; }
    if (num == 0) den = 1;
}

Rational operator+(const Rational& a, const Rational& b) {
    std::int64_t g = gcd64(a.den, b.den);
    std::int64_t lcm = checked_mul(a.den / g, b.den);
    std::int64_t n = checked_mul(a.num, lcm / a.den);
    __int128 sum = static_cast<__int128>(n) + checked_mul(b.num, lcm / b.den);
    if (sum > INT64_MAX || sum < INT64_MIN) throw invariant_error("integer overflow");
    return Rational(static_cast<std::int64_t>(sum), lcm);
}

Rational operator-(const Rational& a, const Rational& b) {
    return a + Rational(-b.num, b.den);
}

Rational operator*(const Rational& a, const Rational& b) {
    std::int64_t g1 = gcd64(a.num, b.den);
    std::int64_t g2 = gcd64(b.num, a.den);
    return Rational(checked_mul(a.num / g1, b.num / g2), checked_mul(a.den / g2, b.den / g1));
}

Rational operator/(const Rational& a, const Rational& b) {
    if (b.num == 0) throw std::invalid_argument("Rational: division by zero");
    return a * Rational(b.den, b.num);
}

std::string Rational::to_string() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
}

std::string LPolynomial::csv_row() const {
    std::ostringstream os;
    os << q << "," << degree() << "," << sign;
    for (auto v : c) os << "," << v;
    return os.str();
}

std::string LPolynomial::json() const {
    std::ostringstream os;
    os << "{\"q\":" << q << ",\"N\":" << degree() << ",\"coeffs\":[";
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i) os << ",";
        os << c[i];
    }
    os << "],\"sign\":" << sign << "}";
    return os.str();
}

std::uint64_t trace_cost(std::uint64_t q, unsigned n_max) {
    std::uint64_t total = 0;
    std::uint64_t qn = 1;
    for (unsigned n = 1; n <= n_max; ++n) {
        qn *= q;
        if (qn > (1ull << 31)) return UINT64_MAX;
        total += (qn + 1) * qn;
    }
    return total;
}

namespace {

// local data needed to evaluate the trace of one bad (or non-minimal)
// fiber over any constant-field extension
struct BadFiber {
    bool at_infinity;
    FqPoly prime;           // finite places
    unsigned degree;
    ReductionType type;
    FqPoly a_min, b_min;    // minimal model there (good-after-minimalization)
};

std::vector<BadFiber> collect_bad_fibers(const EllipticSurface& E) {
    std::vector<BadFiber> out;
    const Fq& F = E.field();
    for (const auto& [P, mult] : ff::factor(E.delta())) {
        (void)mult;
        LocalReduction red = E.classify_at(Place{false, P});
        out.push_back(BadFiber{false, P, static_cast<unsigned>(P.degree()), red.type,
                               red.a_min, red.b_min});
    }
    EllipticSurface inf = E.infinite_model();
    LocalReduction red = inf.classify_at(Place{false, FqPoly::t(F)});
    out.push_back(BadFiber{true, FqPoly(F), 1, red.type, red.a_min, red.b_min});
    return out;
}

// S_n = sum of local traces over P^1(F_{q^n})
std::int64_t trace_sum(const EllipticSurface& E, const std::vector<BadFiber>& bad, unsigned n) {
    const Fq& F = E.field();
    ExtField K(F, n);
    const std::int64_t order = static_cast<std::int64_t>(K.size()) - 1;

    auto a_logs = K.coeff_logs(E.a());
    auto b_logs = K.coeff_logs(E.b());
    auto d_logs = K.coeff_logs(E.delta());

    struct FiniteBad {
        std::vector<std::int32_t> p_logs;
        const BadFiber* fiber;
        std::vector<std::int32_t> amin_logs, bmin_logs;
        std::int64_t nonsplit_sign;  // trace contribution for mult over F_{q^n}
    };
    std::vector<FiniteBad> finite;
    const BadFiber* infinity = nullptr;
    for (const auto& bf : bad) {
        if (bf.at_infinity) { infinity = &bf; continue; }
        if (n % bf.degree != 0) continue;  // no F_{q^n} points above this place
        FiniteBad fb;
        fb.p_logs = K.coeff_logs(bf.prime);
        fb.fiber = &bf;
        fb.amin_logs = K.coeff_logs(bf.a_min);
        fb.bmin_logs = K.coeff_logs(bf.b_min);
        unsigned rel = n / bf.degree;
        fb.nonsplit_sign = (rel % 2 == 0) ? +1 : -1;
        finite.push_back(std::move(fb));
    }

    // character sum for one good fiber, everything in the log domain
    auto fiber_trace = [&](std::int32_t la, std::int32_t lb) -> std::int64_t {
        std::int64_t sum = K.chi_log(lb);
        for (std::int32_t j = 0; j < order; ++j) {
            std::int32_t cube = static_cast<std::int32_t>((3ll * j) % order);
            std::int32_t ax = (la < 0) ? ExtField::kLogZero
                                       : static_cast<std::int32_t>((static_cast<std::int64_t>(la) + j) % order);
            std::int32_t u = K.add_log(cube, ax);
            std::int32_t w = K.add_log(u, lb);
            sum += K.chi_log(w);
        }
        return -sum;
    };

    std::int64_t S = 0;
    // lambda = 0 first, then lambda = g^t
    for (std::int64_t t = -1; t < order; ++t) {
        std::int32_t lx = (t < 0) ? ExtField::kLogZero : static_cast<std::int32_t>(t);
        std::int32_t ldelta = K.eval_log(d_logs, lx);
        if (ldelta >= 0) {
            S += fiber_trace(K.eval_log(a_logs, lx), K.eval_log(b_logs, lx));
            continue;
        }
        // singular fiber of the global model: locate its place
        const FiniteBad* home = nullptr;
        for (const auto& fb : finite)
            if (K.eval_log(fb.p_logs, lx) < 0) { home = &fb; break; }
        if (!home) throw invariant_error("trace_sum: singular fiber not matched to a place");
        switch (home->fiber->type) {
            case ReductionType::Good:
                S += fiber_trace(K.eval_log(home->amin_logs, lx), K.eval_log(home->bmin_logs, lx));
                break;
            case ReductionType::MultiplicativeSplit: S += 1; break;
            case ReductionType::MultiplicativeNonsplit: S += home->nonsplit_sign; break;
            case ReductionType::Additive: break;
        }
    }

    // the fiber at infinity
    if (!infinity) throw invariant_error("trace_sum: missing infinity data");
    switch (infinity->type) {
        case ReductionType::Good: {
            std::int32_t la = K.log_of(infinity->a_min.coeff(0));
            std::int32_t lb = K.log_of(infinity->b_min.coeff(0));
            S += fiber_trace(la, lb);
            break;
        }
        case ReductionType::MultiplicativeSplit: S += 1; break;
        case ReductionType::MultiplicativeNonsplit: S += (n % 2 == 0) ? +1 : -1; break;
        case ReductionType::Additive: break;
    }
    return S;
}

}  // namespace

bool functional_equation_holds(const LPolynomial& L) {
    int N = L.degree();
    int parity = (N % 2 == 0) ? +1 : -1;
    for (int i = 0; 2 * i <= N; ++i) {
        std::int64_t rhs = checked_mul(parity * L.sign * ipow(L.q, N - 2 * i), L.c[i]);
        if (L.c[N - i] != rhs) return false;
    }
    return true;
}

double weil_modulus_error(const LPolynomial& L) {
    // work with the unitarized polynomial: reciprocal roots on |z| = 1
    int N = L.degree();
    if (N == 0) return 0.0;
    std::vector<Rational> u = unitarize(L);
    // deflate exact roots at T = 1 and T = -1
    std::vector<Rational> cur = u;
    auto value_at = [](const std::vector<Rational>& poly, int x) {
        Rational v(0);
        for (std::size_t i = poly.size(); i-- > 0;) v = v * Rational(x) + poly[i];
        return v;
    };
    for (int root : {1, -1}) {
        // T = root is a root of the polynomial exactly when the reciprocal
        // root root^(-1) = root sits on the unit circle; peel those off
        while (cur.size() > 1 && value_at(cur, root).is_zero()) {
            // synthetic division by (1 - root T): r_i = u_i + root r_{i-1}
            std::vector<Rational> div(cur.size() - 1);
            Rational prev(0);
            for (std::size_t i = 0; i + 1 < cur.size(); ++i) {
                div[i] = cur[i] + Rational(root) * prev;
                prev = div[i];
            }
            cur = div;
        }
    }
    if (cur.size() <= 1) return 0.0;
    // Durand-Kerner on the remaining part
    int n = static_cast<int>(cur.size()) - 1;
    std::vector<std::complex<double>> coef(n + 1);
    for (int i = 0; i <= n; ++i) coef[i] = cur[static_cast<std::size_t>(i)].to_double();
    // monic normalization in the reversed variable: roots of sum coef[i] z^i
    std::vector<std::complex<double>> roots(n);
    for (int i = 0; i < n; ++i)
        roots[i] = std::polar(1.1, 0.7 + 2.39996 * i);  // spread starting points
    for (int iter = 0; iter < 2000; ++iter) {
        double moved = 0;
        for (int i = 0; i < n; ++i) {
            std::complex<double> p = coef[n];
            for (int k = n - 1; k >= 0; --k) p = p * roots[i] + coef[k];
            std::complex<double> d = coef[n];
            for (int j = 0; j < n; ++j)
                if (j != i) d *= (roots[i] - roots[j]);
            if (std::abs(d) < 1e-300) continue;
            std::complex<double> delta = p / d;
            roots[i] -= delta;
            moved = std::max(moved, std::abs(delta));
        }
        if (moved < 1e-14) break;
    }
    double worst = 0.0;
    for (const auto& r : roots) worst = std::max(worst, std::abs(std::abs(r) - 1.0));
    return worst;
}

std::vector<Rational> unitarize(const LPolynomial& L) {
    std::vector<Rational> u(L.c.size());
    for (std::size_t i = 0; i < L.c.size(); ++i)
        u[i] = Rational(L.c[i], ipow(L.q, static_cast<unsigned>(i)));
    return u;
}

ReducedL reduce_l(const LPolynomial& L) {
    ReducedL out;
    out.q = L.q;
    out.sign = L.sign;
    out.unitarized = unitarize(L);
    int N = L.degree();
    const std::vector<Rational>& u = out.unitarized;
    std::vector<Rational> r;
    if (N % 2 == 1) {
        // divide by (1 - sign T)
        r.resize(static_cast<std::size_t>(N));
        Rational prev(0);
        for (int i = 0; i < N; ++i) {
            r[static_cast<std::size_t>(i)] = u[static_cast<std::size_t>(i)] + Rational(L.sign) * prev;
            prev = r[static_cast<std::size_t>(i)];
        }
        Rational rem = u[static_cast<std::size_t>(N)] + Rational(L.sign) * prev;
        if (!rem.is_zero()) throw invariant_error("reduce_l: (1 - sign T) does not divide L_u");
    } else if (L.sign == -1) {
        // divide by (1 - T^2): r_i = u_i + r_{i-2}
        r.resize(static_cast<std::size_t>(N) - 1);
        for (int i = 0; i <= N - 2; ++i) {
            Rational prev2 = (i >= 2) ? r[static_cast<std::size_t>(i - 2)] : Rational(0);
            r[static_cast<std::size_t>(i)] = u[static_cast<std::size_t>(i)] + prev2;
        }
        Rational rem1 = u[static_cast<std::size_t>(N) - 1] +
                        ((N >= 3) ? r[static_cast<std::size_t>(N - 3)] : Rational(0));
        Rational rem0 = u[static_cast<std::size_t>(N)] + r[static_cast<std::size_t>(N - 2)];
        if (!rem1.is_zero() || !rem0.is_zero())
            throw invariant_error("reduce_l: (1 - T^2) does not divide L_u");
    } else {
        r = u;
    }
    out.reduced = std::move(r);
    out.N_red = static_cast<unsigned>(out.reduced.size()) - 1;
    // the reduced polynomial must be plus-palindromic
    for (unsigned i = 0; i <= out.N_red; ++i) {
        if (!(out.reduced[i] == out.reduced[out.N_red - i]))
            throw invariant_error("reduce_l: reduced polynomial is not plus-palindromic");
    }
    return out;
}

LPolynomial l_function(const EllipticSurface& E, const LOptions& opts) {
    const Fq& F = E.field();
    int N = E.degree_of_L();
    LPolynomial L;
    L.q = F.q();
    if (N == 0) {
        L.c = {1};
        L.sign = +1;
        return L;
    }

    auto bad = collect_bad_fibers(E);
    unsigned m = static_cast<unsigned>(N) / 2;

    if (!opts.budget_override && trace_cost(F.q(), m) > opts.budget)
        throw budget_error("l_function: trace-sum cost exceeds the budget");

    std::vector<std::int64_t> S(1, 0);  // S[n], 1-based
    std::vector<std::int64_t> c(1, 1);  // c[0..], grows as traces arrive
    auto extend = [&](unsigned upto) {
        while (S.size() <= upto) {
            unsigned n = static_cast<unsigned>(S.size());
            if (!opts.budget_override && trace_cost(F.q(), n) > opts.budget)
                throw budget_error("l_function: sign resolution exceeds the budget");
            S.push_back(trace_sum(E, bad, n));
            // k c_k = sum S_i c_{k-i}
            __int128 acc = 0;
            for (unsigned i = 1; i <= n; ++i)
                acc += static_cast<__int128>(S[i]) * c[n - i];
            if (acc % static_cast<int>(n) != 0)
                throw invariant_error("l_function: non-integer coefficient, convention error");
            __int128 ck = acc / static_cast<int>(n);
            if (ck > INT64_MAX || ck < INT64_MIN) throw invariant_error("integer overflow");
            c.push_back(static_cast<std::int64_t>(ck));
        }
    };
    extend(m);

    // resolve the functional-equation sign
    int parity = (N % 2 == 0) ? +1 : -1;
    int sign = 0;
    if (N % 2 == 0 && c[m] != 0) sign = +1;  // middle coefficient survives only when det = +1
    unsigned k = m;
    while (sign == 0) {
        ++k;
        if (static_cast<int>(k) > N)
            throw invariant_error("l_function: sign resolution ran past the degree");
        extend(k);
        std::int64_t partner = c[static_cast<unsigned>(N) - k];
        std::int64_t scale = ipow(L.q, 2 * k - static_cast<unsigned>(N));
        if (partner != 0) {
            std::int64_t expect = checked_mul(parity * scale, partner);
            if (c[k] == expect) sign = +1;
            else if (c[k] == -expect) sign = -1;
            else throw invariant_error("l_function: functional equation violated");
        } else if (c[k] != 0) {
            throw invariant_error("l_function: functional equation violated");
        }
    }
    L.sign = sign;

    // fill the upper half by the functional equation and cross-check the
    // part already computed
    L.c.assign(static_cast<std::size_t>(N) + 1, 0);
    for (unsigned i = 0; i < c.size() && i <= static_cast<unsigned>(N); ++i) L.c[i] = c[i];
    for (int i = 0; 2 * i <= N; ++i) {
        std::int64_t rhs = checked_mul(parity * sign * ipow(L.q, static_cast<unsigned>(N - 2 * i)),
                                       L.c[static_cast<std::size_t>(i)]);
        std::size_t hi = static_cast<std::size_t>(N - i);
        if (hi < c.size()) {
            if (L.c[hi] != rhs) throw invariant_error("l_function: functional equation violated");
        } else {
            L.c[hi] = rhs;
        }
    }
    if (!functional_equation_holds(L))
        throw invariant_error("l_function: functional equation violated");

    if (opts.check_roots) {
        double err = weil_modulus_error(L);
        if (err > 1e-6)
            throw invariant_error("l_function: reciprocal root off the Weil circle, error " +
                                  std::to_string(err));
    }
    return L;
}

std::vector<std::int64_t> euler_product_series(const EllipticSurface& E, unsigned order) {
    const Fq& F = E.field();
    std::vector<std::int64_t> acc(order + 1, 0);
    acc[0] = 1;
    auto mul_in = [&](const std::vector<std::int64_t>& local, unsigned deg) {
        // acc *= sum_j local[j] T^(j deg), truncated
        std::vector<std::int64_t> next(order + 1, 0);
        for (unsigned i = 0; i <= order; ++i) {
            if (acc[i] == 0) continue;
            for (unsigned j = 0; i + j * deg <= order && j < local.size(); ++j) {
                __int128 add = static_cast<__int128>(acc[i]) * local[j];
                __int128 tot = static_cast<__int128>(next[i + j * deg]) + add;
                if (tot > INT64_MAX || tot < INT64_MIN) throw invariant_error("integer overflow");
                next[i + j * deg] = static_cast<std::int64_t>(tot);
            }
        }
        acc = std::move(next);
    };

    auto local_factor = [&](const LocalReduction& red, unsigned deg) {
        unsigned terms = order / deg + 1;
        std::vector<std::int64_t> u;
        switch (red.type) {
            case ReductionType::Good: {
                // inverse of 1 - a x + q_v x^2
                std::int64_t qv = ipow(F.q(), deg);
                u.assign(terms, 0);
                u[0] = 1;
                if (terms > 1) u[1] = red.local_trace;
                for (unsigned j = 2; j < terms; ++j) {
                    __int128 v = static_cast<__int128>(red.local_trace) * u[j - 1] -
                                 static_cast<__int128>(qv) * u[j - 2];
                    if (v > INT64_MAX || v < INT64_MIN) throw invariant_error("integer overflow");
                    u[j] = static_cast<std::int64_t>(v);
                }
                break;
            }
            case ReductionType::MultiplicativeSplit:
                u.assign(terms, 1);
                break;
            case ReductionType::MultiplicativeNonsplit:
                u.assign(terms, 1);
                for (unsigned j = 1; j < terms; j += 2) u[j] = -1;
                break;
            case ReductionType::Additive:
                u.assign(1, 1);
                break;
        }
        mul_in(u, deg);
    };

    for (unsigned deg = 1; deg <= order; ++deg) {
        ff::ExtField K(F, deg);  // one residue-field model per degree
        const std::int64_t ext_order = static_cast<std::int64_t>(K.size()) - 1;
        for (const auto& P : ff::monic_irreducibles(F, deg)) {
            LocalReduction red = E.classify_at(Place{false, P});
            if (red.type == ReductionType::Good) {
                // any root of P identifies kappa(v) with the canonical model;
                // the character sum is Galois invariant, so the choice is
                // immaterial
                auto p_logs = K.coeff_logs(P);
                std::int32_t root = ExtField::kLogZero;
                bool found = false;
                for (std::int64_t t = -1; t < ext_order && !found; ++t) {
                    std::int32_t lx = (t < 0) ? ExtField::kLogZero : static_cast<std::int32_t>(t);
                    if (K.eval_log(p_logs, lx) < 0) {
                        root = lx;
                        found = true;
                    }
                }
                if (!found) throw invariant_error("euler_product_series: no root in the residue field");
                std::int32_t la = K.eval_log(K.coeff_logs(red.a_min), root);
                std::int32_t lb = K.eval_log(K.coeff_logs(red.b_min), root);
                std::int64_t sum = K.chi_log(lb);
                for (std::int32_t j = 0; j < ext_order; ++j) {
                    std::int32_t cube = static_cast<std::int32_t>((3ll * j) % ext_order);
                    std::int32_t ax = (la < 0) ? ExtField::kLogZero
                                               : static_cast<std::int32_t>(
                                                     (static_cast<std::int64_t>(la) + j) % ext_order);
                    std::int32_t w = K.add_log(K.add_log(cube, ax), lb);
                    sum += K.chi_log(w);
                }
                red.local_trace = -sum;
            }
            local_factor(red, deg);
        }
    }
    EllipticSurface inf = E.infinite_model();
    LocalReduction red = inf.reduce_at(Place{false, FqPoly::t(F)});
    local_factor(red, 1);
    return acc;
}

}  // namespace ellsieve::lfunc
