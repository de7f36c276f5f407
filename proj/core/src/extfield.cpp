#include "ellsieve/extfield.hpp"

#include <algorithm>

#include "ellsieve/errors.hpp"

namespace ellsieve::ff {

namespace {

// first monic irreducible of degree n over the base, tuples compared from
// the top coefficient down (same rule as the base-field modulus)
FqPoly canonical_modulus(const Fq& F, unsigned n) {
    if (n == 1) return FqPoly::t(F);
    std::uint64_t count = 1;
    for (unsigned i = 0; i < n; ++i) count *= F.q();
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        std::vector<std::uint32_t> c(n + 1);
        std::uint64_t t = idx;
        for (unsigned i = 0; i < n; ++i) { c[i] = static_cast<std::uint32_t>(t % F.q()); t /= F.q(); }
        c[n] = 1;
        FqPoly f(F, std::move(c));
        if (is_irreducible(f)) return f;
    }
    throw invariant_error("canonical_modulus: none found");
}

std::uint64_t encode(const Fq& F, const FqPoly& f, unsigned n) {
    std::uint64_t idx = 0;
    for (unsigned i = n; i-- > 0;) idx = idx * F.q() + f.coeff(static_cast<int>(i));
    return idx;
}

FqPoly decode(const Fq& F, std::uint64_t idx, unsigned n) {
    std::vector<std::uint32_t> c(n);
    for (unsigned i = 0; i < n; ++i) {
        c[i] = static_cast<std::uint32_t>(idx % F.q());
        idx /= F.q();
    }
    return FqPoly(F, std::move(c));
}

}  // namespace

ExtField::ExtField(const Fq& base, unsigned n)
    : ExtField(base, canonical_modulus(base, n)) {}

ExtField::ExtField(const Fq& base, FqPoly modulus)
    : base_(&base), modulus_(std::move(modulus)) {
    if (modulus_.degree() < 1 || !modulus_.is_monic())
        throw std::invalid_argument("ExtField: modulus must be monic of degree >= 1");
    n_ = static_cast<unsigned>(modulus_.degree());
    std::uint64_t size = 1;
    for (unsigned i = 0; i < n_; ++i) {
        size *= base.q();
        if (size > (1ull << 26))
            throw budget_error("ExtField: field exceeds the table budget");
    }
    size_ = size;
    order_ = static_cast<std::int64_t>(size_) - 1;
    build_tables();
}

void ExtField::build_tables() {
    const Fq& F = *base_;
    exp_.assign(static_cast<std::size_t>(order_), 0);
    log_.assign(size_, kLogZero);
    zech_.assign(static_cast<std::size_t>(order_), kLogZero);

    // factor q^n - 1 for the order test
    std::vector<std::uint64_t> prime_factors;
    {
        std::uint64_t m = static_cast<std::uint64_t>(order_);
        for (std::uint64_t r = 2; r * r <= m; ++r) {
            if (m % r == 0) {
                prime_factors.push_back(r);
                while (m % r == 0) m /= r;
            }
        }
        if (m > 1) prime_factors.push_back(m);
    }

    auto mul_poly = [&](const FqPoly& a, const FqPoly& b) {
        FqPoly prod = a * b;
        FqPoly quot(F), rem(F);
        divmod(prod, modulus_, quot, rem);
        return rem;
    };
    auto pow_poly = [&](FqPoly a, std::uint64_t e) {
        FqPoly r = FqPoly::one(F);
        while (e) {
            if (e & 1) r = mul_poly(r, a);
            a = mul_poly(a, a);
            e >>= 1;
        }
        return r;
    };

    // find a generator of the multiplicative group
    FqPoly gen(F);
    for (std::uint64_t cand = 1;; ++cand) {
        if (cand >= size_) throw invariant_error("ExtField: no generator found");
        FqPoly g = decode(F, cand, n_);
        if (g.is_zero()) continue;
        bool ok = true;
        for (std::uint64_t r : prime_factors) {
            FqPoly pe = pow_poly(g, static_cast<std::uint64_t>(order_) / r);
            if (pe == FqPoly::one(F)) { ok = false; break; }
        }
        if (ok) { gen = g; break; }
    }

    FqPoly cur = FqPoly::one(F);
    for (std::int64_t i = 0; i < order_; ++i) {
        std::uint64_t idx = encode(F, cur, n_);
        exp_[static_cast<std::size_t>(i)] = idx;
        log_[idx] = static_cast<std::int32_t>(i);
        cur = mul_poly(cur, gen);
    }
    if (!(cur == FqPoly::one(F)))
        throw invariant_error("ExtField: generator order mismatch");

    // zech[i] = log(1 + g^i): add 1 in the index domain (digit 0 over F_p
    // when the base is prime, base-field add on digit 0 in general)
    for (std::int64_t i = 0; i < order_; ++i) {
        std::uint64_t idx = exp_[static_cast<std::size_t>(i)];
        std::uint32_t d0 = static_cast<std::uint32_t>(idx % F.q());
        std::uint64_t plus_one = idx - d0 + F.add(d0, 1);
        zech_[static_cast<std::size_t>(i)] = log_[plus_one];
    }
}

std::uint64_t ExtField::from_poly(const FqPoly& f) const {
    const Fq& F = *base_;
    FqPoly quot(F), rem(F);
    divmod(f, modulus_, quot, rem);
    return encode(F, rem, n_);
}

std::vector<std::int32_t> ExtField::coeff_logs(const FqPoly& f) const {
    std::vector<std::int32_t> out(f.degree() + 1);
    for (int i = 0; i <= f.degree(); ++i) out[static_cast<std::size_t>(i)] = log_[f.coeff(i)];
    return out;
}

std::uint64_t ExtField::add_index(std::uint64_t a, std::uint64_t b) const {
    const Fq& F = *base_;
    std::uint64_t out = 0, mult = 1;
    for (unsigned i = 0; i < n_; ++i) {
        std::uint32_t da = static_cast<std::uint32_t>(a % F.q());
        std::uint32_t db = static_cast<std::uint32_t>(b % F.q());
        out += static_cast<std::uint64_t>(F.add(da, db)) * mult;
        mult *= F.q();
        a /= F.q();
        b /= F.q();
    }
    return out;
}

}  // namespace ellsieve::ff
