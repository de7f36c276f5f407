#include "ellsieve/fqpoly.hpp"

#include <algorithm>
#include <sstream>

#include "ellsieve/rng.hpp"

namespace ellsieve::ff {

FqPoly::FqPoly(const Fq& F, std::vector<std::uint32_t> coeffs) : F_(&F), c_(std::move(coeffs)) {
    trim();
}

FqPoly FqPoly::from_ints(const Fq& F, const std::vector<std::int64_t>& coeffs) {
    std::vector<std::uint32_t> c(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) c[i] = F.from_int(coeffs[i]);
    return FqPoly(F, std::move(c));
}

FqPoly FqPoly::constant(const Fq& F, std::uint32_t c) {
    return FqPoly(F, {c});
}

void FqPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

std::uint32_t FqPoly::leading() const {
    if (c_.empty()) throw std::invalid_argument("FqPoly::leading: zero polynomial");
    return c_.back();
}

std::uint32_t FqPoly::eval(std::uint32_t x) const {
    const Fq& F = *F_;
    std::uint32_t r = 0;
    for (std::size_t i = c_.size(); i-- > 0;) r = F.add(F.mul(r, x), c_[i]);
    return r;
}

FqPoly operator+(const FqPoly& a, const FqPoly& b) {
    const Fq& F = a.field();
    std::vector<std::uint32_t> c(std::max(a.c_.size(), b.c_.size()), 0);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = F.add(a.coeff(static_cast<int>(i)), b.coeff(static_cast<int>(i)));
    return FqPoly(F, std::move(c));
}

FqPoly operator-(const FqPoly& a, const FqPoly& b) {
    const Fq& F = a.field();
    std::vector<std::uint32_t> c(std::max(a.c_.size(), b.c_.size()), 0);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = F.sub(a.coeff(static_cast<int>(i)), b.coeff(static_cast<int>(i)));
    return FqPoly(F, std::move(c));
}

FqPoly operator*(const FqPoly& a, const FqPoly& b) {
    if (a.is_zero() || b.is_zero()) return FqPoly::zero(a.field());
    const Fq& F = a.field();
    std::vector<std::uint32_t> c(a.c_.size() + b.c_.size() - 1, 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j)
            c[i + j] = F.add(c[i + j], F.mul(a.c_[i], b.c_[j]));
    }
    return FqPoly(F, std::move(c));
}

bool operator==(const FqPoly& a, const FqPoly& b) { return a.c_ == b.c_; }

FqPoly FqPoly::scaled(std::uint32_t s) const {
    std::vector<std::uint32_t> c(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) c[i] = F_->mul(c_[i], s);
    return FqPoly(*F_, std::move(c));
}

FqPoly FqPoly::monic() const {
    if (is_zero()) throw std::invalid_argument("FqPoly::monic: zero polynomial");
    return scaled(F_->inv(leading()));
}

FqPoly FqPoly::derivative() const {
    if (c_.size() <= 1) return FqPoly::zero(*F_);
    std::vector<std::uint32_t> c(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) {
        std::uint32_t m = F_->from_int(static_cast<std::int64_t>(i));
        c[i - 1] = F_->mul(c_[i], m);
    }
    return FqPoly(*F_, std::move(c));
}

FqPoly FqPoly::shifted(int n) const {
    if (is_zero()) return *this;
    std::vector<std::uint32_t> c(c_.size() + n, 0);
    std::copy(c_.begin(), c_.end(), c.begin() + n);
    return FqPoly(*F_, std::move(c));
}

bool FqPoly::less(const FqPoly& a, const FqPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (int i = a.degree(); i >= 0; --i)
        if (a.coeff(i) != b.coeff(i)) return a.coeff(i) < b.coeff(i);
    return false;
}

std::string FqPoly::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (i) os << ",";
        os << c_[i];
    }
    return os.str();
}

FqPoly FqPoly::parse(const Fq& F, const std::string& s) {
    std::vector<std::int64_t> c;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        c.push_back(std::stoll(tok));
    }
    return FqPoly::from_ints(F, c);
}

void divmod(const FqPoly& a, const FqPoly& b, FqPoly& quot, FqPoly& rem) {
    if (b.is_zero()) throw std::invalid_argument("divmod: division by zero polynomial");
    const Fq& F = a.field();
    if (a.degree() < b.degree()) {
        quot = FqPoly::zero(F);
        rem = a;
        return;
    }
    std::vector<std::uint32_t> r(a.coeffs());
    std::vector<std::uint32_t> q(a.degree() - b.degree() + 1, 0);
    std::uint32_t lb_inv = F.inv(b.leading());
    for (int i = a.degree(); i >= b.degree(); --i) {
        std::uint32_t c = F.mul(r[i], lb_inv);
        q[i - b.degree()] = c;
        if (c != 0) {
            for (int j = 0; j <= b.degree(); ++j)
                r[i - b.degree() + j] = F.sub(r[i - b.degree() + j], F.mul(c, b.coeff(j)));
        }
    }
    r.resize(b.degree() > 0 ? b.degree() : 0);
    quot = FqPoly(F, std::move(q));
    rem = FqPoly(F, std::move(r));
}

FqPoly gcd(FqPoly a, FqPoly b) {
    const Fq& F = a.field();
    while (!b.is_zero()) {
        FqPoly q(F), r(F);
        divmod(a, b, q, r);
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero()) return a;
    return a.monic();
}

FqPoly powmod(const FqPoly& base, std::uint64_t e, const FqPoly& mod) {
    const Fq& F = base.field();
    FqPoly result = FqPoly::one(F);
    FqPoly q(F), b(F);
    divmod(base, mod, q, b);
    while (e) {
        if (e & 1) {
            FqPoly t = result * b;
            divmod(t, mod, q, result);
        }
        FqPoly t = b * b;
        divmod(t, mod, q, b);
        e >>= 1;
    }
    return result;
}

FqPoly compose_mod(const FqPoly& f, const FqPoly& g, const FqPoly& mod) {
    const Fq& F = f.field();
    FqPoly result = FqPoly::zero(F);
    FqPoly q(F);
    for (int i = f.degree(); i >= 0; --i) {
        FqPoly t = result * g + FqPoly::constant(F, f.coeff(i));
        divmod(t, mod, q, result);
    }
    return result;
}

FqPoly frobenius_power(const FqPoly& f, unsigned e) {
    const Fq& F = f.field();
    FqPoly x = FqPoly::t(F);
    FqPoly xq = powmod(x, F.q(), f);
    FqPoly result = xq;
    for (unsigned i = 1; i < e; ++i) result = compose_mod(result, xq, f);
    return e == 0 ? x : result;
}

bool is_irreducible(const FqPoly& f) {
    if (f.is_zero() || f.degree() == 0) return false;
    unsigned n = static_cast<unsigned>(f.degree());
    if (n == 1) return true;
    const Fq& F = f.field();
    FqPoly x = FqPoly::t(F);
    // T^(q^n) == T mod f, and gcd(T^(q^(n/r)) - T, f) = 1 for primes r | n
    if (!(frobenius_power(f, n) == x)) return false;
    unsigned m = n;
    for (unsigned r = 2; m > 1; ++r) {
        if (r * r > m) r = m;
        if (m % r) continue;
        while (m % r == 0) m /= r;
        FqPoly g = gcd(frobenius_power(f, n / r) - x, f);
        if (g.degree() != 0) return false;
    }
    return true;
}

namespace {

// f = g^p detection and p-th root for the squarefree split
FqPoly pth_root(const FqPoly& f) {
    const Fq& F = f.field();
    std::uint64_t p = F.p();
    std::uint64_t root_exp = 1;
    for (unsigned i = 0; i + 1 < F.k(); ++i) root_exp *= p;  // a^(p^(k-1)) is the p-th root in F_q
    std::vector<std::uint32_t> c(f.degree() / static_cast<int>(p) + 1);
    for (std::size_t i = 0; i < c.size(); ++i)
        c[i] = F.pow(f.coeff(static_cast<int>(i * p)), root_exp);
    return FqPoly(F, std::move(c));
}

// squarefree decomposition (Yun, with characteristic-p fallback):
// returns list of (squarefree part, multiplicity)
void squarefree_decompose(const FqPoly& f, unsigned mult,
                          std::vector<std::pair<FqPoly, unsigned>>& out) {
    const Fq& F = f.field();
    if (f.degree() == 0) return;
    FqPoly df = f.derivative();
    if (df.is_zero()) {
        squarefree_decompose(pth_root(f), mult * static_cast<unsigned>(F.p()), out);
        return;
    }
    FqPoly c = gcd(f, df);
    FqPoly w(F), q(F), r(F);
    divmod(f, c, w, r);
    unsigned i = 1;
    while (w.degree() > 0) {
        FqPoly y = gcd(w, c);
        FqPoly fac(F);
        divmod(w, y, fac, r);
        if (fac.degree() > 0) out.emplace_back(fac.monic(), mult * i);
        divmod(c, y, c, r);
        w = std::move(y);
        ++i;
    }
    if (c.degree() > 0)
        squarefree_decompose(pth_root(c), mult * static_cast<unsigned>(F.p()), out);
}

// distinct-degree on a squarefree monic f
void distinct_degree(const FqPoly& f, std::vector<std::pair<FqPoly, unsigned>>& out) {
    const Fq& F = f.field();
    FqPoly x = FqPoly::t(F);
    FqPoly rem = f;
    FqPoly h = x;  // will hold T^(q^d) mod rem
    unsigned d = 0;
    while (rem.degree() > 0) {
        ++d;
        if (2 * d > static_cast<unsigned>(rem.degree())) {
            out.emplace_back(rem, static_cast<unsigned>(rem.degree()));
            return;
        }
        h = powmod(h, F.q(), rem);
        FqPoly g = gcd(h - x, rem);
        if (g.degree() > 0) {
            out.emplace_back(g, d);
            FqPoly q(F), r(F);
            divmod(rem, g, q, r);
            rem = q;
            divmod(h, rem, q, h);
        }
    }
}

// Cantor-Zassenhaus equal-degree split of a product of irreducibles of degree d
void equal_degree(const FqPoly& f, unsigned d, SplitMix64& rng, std::vector<FqPoly>& out) {
    const Fq& F = f.field();
    if (f.degree() == static_cast<int>(d)) {
        out.push_back(f.monic());
        return;
    }
    std::uint64_t qd = 1;
    for (unsigned i = 0; i < d; ++i) qd *= F.q();
    for (;;) {
        std::vector<std::uint32_t> rc(f.degree());
        for (auto& c : rc) c = static_cast<std::uint32_t>(rng.next() % F.q());
        FqPoly r(F, std::move(rc));
        if (r.degree() < 1) continue;
        FqPoly g = gcd(r, f);
        if (g.degree() == 0) {
            FqPoly h = powmod(r, (qd - 1) / 2, f);
            g = gcd(h - FqPoly::one(F), f);
        }
        if (g.degree() > 0 && g.degree() < f.degree()) {
            FqPoly q(F), rem(F);
            divmod(f, g, q, rem);
            equal_degree(g, d, rng, out);
            equal_degree(q, d, rng, out);
            return;
        }
    }
}

}  // namespace

std::vector<std::pair<FqPoly, unsigned>> factor(const FqPoly& f, std::uint64_t seed) {
    if (f.is_zero()) throw std::invalid_argument("factor: zero polynomial");
    std::vector<std::pair<FqPoly, unsigned>> result;
    if (f.degree() == 0) return result;
    SplitMix64 rng(seed ^ 0x9e3779b97f4a7c15ull);
    std::vector<std::pair<FqPoly, unsigned>> sqf;
    squarefree_decompose(f.monic(), 1, sqf);
    for (const auto& [part, mult] : sqf) {
        std::vector<std::pair<FqPoly, unsigned>> dd;
        distinct_degree(part, dd);
        for (const auto& [prod, d] : dd) {
            std::vector<FqPoly> irr;
            equal_degree(prod, d, rng, irr);
            for (auto& g : irr) result.emplace_back(std::move(g), mult);
        }
    }
    std::sort(result.begin(), result.end(), [](const auto& a, const auto& b) {
        return FqPoly::less(a.first, b.first);
    });
    return result;
}

bool is_squarefree(const FqPoly& f) {
    if (f.is_zero()) throw std::invalid_argument("is_squarefree: zero polynomial");
    if (f.degree() == 0) return true;
    FqPoly df = f.derivative();
    if (df.is_zero()) return false;  // p-th power
    return gcd(f, df).degree() == 0;
}

std::uint32_t resultant(const FqPoly& f, const FqPoly& g) {
    const Fq& F = f.field();
    if (f.is_zero() || g.is_zero()) return 0;
    // Euclidean: Res(f,g) = lc(g)^(deg f - deg r) * (-1)^(deg f * deg g) * Res(g, r)
    FqPoly a = f, b = g;
    std::uint32_t acc = 1;
    bool sign_flip = false;
    while (b.degree() > 0) {
        FqPoly q(F), r(F);
        divmod(a, b, q, r);
        if (r.is_zero()) return 0;
        acc = F.mul(acc, F.pow(b.leading(), static_cast<std::uint64_t>(a.degree() - r.degree())));
        if ((a.degree() & 1) && (b.degree() & 1)) sign_flip = !sign_flip;
        a = std::move(b);
        b = std::move(r);
    }
    // b is a nonzero constant
    acc = F.mul(acc, F.pow(b.coeff(0), static_cast<std::uint64_t>(a.degree())));
    if (sign_flip) acc = F.neg(acc);
    return acc;
}

std::uint32_t discriminant(const FqPoly& f) {
    if (f.degree() < 1) throw std::invalid_argument("discriminant: constant polynomial");
    const Fq& F = f.field();
    FqPoly df = f.derivative();
    if (df.is_zero()) return 0;
    std::uint32_t res = resultant(f, df);
    std::uint32_t r = F.div(res, f.leading());
    unsigned n = static_cast<unsigned>(f.degree());
    if (((n * (n - 1)) / 2) % 2 == 1) r = F.neg(r);
    return r;
}

std::vector<FqPoly> monic_irreducibles(const Fq& F, unsigned degree) {
    std::vector<FqPoly> out;
    std::uint64_t count = 1;
    for (unsigned i = 0; i < degree; ++i) count *= F.q();
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        std::vector<std::uint32_t> c(degree + 1);
        std::uint64_t t = idx;
        for (unsigned i = 0; i < degree; ++i) { c[i] = static_cast<std::uint32_t>(t % F.q()); t /= F.q(); }
        c[degree] = 1;
        FqPoly f(F, std::move(c));
        if (is_irreducible(f)) out.push_back(std::move(f));
    }
    std::sort(out.begin(), out.end(), FqPoly::less);
    return out;
}

std::uint64_t irreducible_count(std::uint64_t q, unsigned n) {
    // (1/n) sum_{d | n} mu(d) q^(n/d)
    std::int64_t total = 0;
    for (unsigned d = 1; d <= n; ++d) {
        if (n % d) continue;
        // mu(d)
        int mu = 1;
        unsigned m = d;
        for (unsigned r = 2; r * r <= m; ++r) {
            if (m % r == 0) {
                m /= r;
                if (m % r == 0) { mu = 0; break; }
                mu = -mu;
            }
        }
        if (mu != 0 && m > 1) mu = -mu;
        if (mu == 0) continue;
        std::int64_t qe = 1;
        for (unsigned i = 0; i < n / d; ++i) qe *= static_cast<std::int64_t>(q);
        total += mu * qe;
    }
    return static_cast<std::uint64_t>(total / n);
}

}  // namespace ellsieve::ff
