#include "ellsieve/fq.hpp"

#include <algorithm>

namespace ellsieve::ff {

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

SquareClass square_class_mod(std::int64_t x, std::uint64_t ell) {
    if (ell < 3 || !is_prime_u64(ell))
        throw std::invalid_argument("square_class_mod: l must be an odd prime");
    std::int64_t m = static_cast<std::int64_t>(ell);
    std::uint64_t a = static_cast<std::uint64_t>(((x % m) + m) % m);
    if (a == 0) return kZeroClass;
    std::uint64_t r = 1, b = a, e = (ell - 1) / 2;
    while (e) {
        if (e & 1) r = (r * b) % ell;
        b = (b * b) % ell;
        e >>= 1;
    }
    return r == 1 ? kSquare : kNonSquare;
}

namespace {

// multiply residue polynomials (base-p digit vectors) mod the monic modulus
std::vector<std::uint32_t> polymul_mod(const std::vector<std::uint32_t>& a,
                                       const std::vector<std::uint32_t>& b,
                                       const std::vector<std::uint32_t>& mod,
                                       std::uint64_t p) {
    unsigned k = static_cast<unsigned>(mod.size()) - 1;
    std::vector<std::uint64_t> prod(2 * k - 1, 0);
    for (unsigned i = 0; i < k; ++i)
        for (unsigned j = 0; j < k; ++j)
            prod[i + j] += static_cast<std::uint64_t>(a[i]) * b[j];
    for (auto& c : prod) c %= p;
    // reduce: T^k = -(mod_0 + mod_1 T + ... + mod_{k-1} T^{k-1})
    for (unsigned d = 2 * k - 2; d >= k; --d) {
        std::uint64_t c = prod[d] % p;
        if (c) {
            for (unsigned j = 0; j < k; ++j) {
                std::uint64_t t = prod[d - k + j] + (p - mod[j] % p) * c % p;
                prod[d - k + j] = t % p;
            }
        }
        prod[d] = 0;
        if (d == k) break;
    }
    std::vector<std::uint32_t> out(k);
    for (unsigned i = 0; i < k; ++i) out[i] = static_cast<std::uint32_t>(prod[i] % p);
    return out;
}

std::vector<std::uint32_t> decode(std::uint32_t a, std::uint64_t p, unsigned k) {
    std::vector<std::uint32_t> v(k);
    for (unsigned i = 0; i < k; ++i) {
        v[i] = static_cast<std::uint32_t>(a % p);
        a = static_cast<std::uint32_t>(a / p);
    }
    return v;
}

std::uint32_t encode(const std::vector<std::uint32_t>& v, std::uint64_t p) {
    std::uint64_t a = 0;
    for (std::size_t i = v.size(); i-- > 0;) a = a * p + v[i];
    return static_cast<std::uint32_t>(a);
}

// root test over F_p, enough to decide irreducibility for degree 2 and 3;
// for higher degree do trial division by all lower-degree monics
bool is_irreducible_over_prime(const std::vector<std::uint32_t>& f, std::uint64_t p) {
    unsigned deg = static_cast<unsigned>(f.size()) - 1;
    if (deg == 1) return true;
    // no roots in F_p
    for (std::uint64_t x = 0; x < p; ++x) {
        std::uint64_t v = 0;
        for (std::size_t i = f.size(); i-- > 0;) v = (v * x + f[i]) % p;
        if (v == 0) return false;
    }
    if (deg <= 3) return true;
    // trial division by monic polynomials of degree 2..deg/2
    for (unsigned d = 2; d <= deg / 2; ++d) {
        std::uint64_t count = 1;
        for (unsigned i = 0; i < d; ++i) count *= p;
        for (std::uint64_t idx = 0; idx < count; ++idx) {
            std::vector<std::uint64_t> g(d + 1, 0);
            std::uint64_t t = idx;
            for (unsigned i = 0; i < d; ++i) { g[i] = t % p; t /= p; }
            g[d] = 1;
            // remainder of f mod g (g monic)
            std::vector<std::uint64_t> r(f.begin(), f.end());
            for (std::size_t i = r.size() - 1; i >= d; --i) {
                std::uint64_t c = r[i] % p;
                if (c) {
                    for (unsigned j = 0; j <= d; ++j)
                        r[i - d + j] = (r[i - d + j] + p * p - (g[j] * c) % p) % p;
                }
                if (i == d) break;
            }
            bool zero = true;
            for (unsigned j = 0; j < d; ++j)
                if (r[j] % p) { zero = false; break; }
            if (zero) return false;
        }
    }
    return true;
}

// lexicographically first monic irreducible of degree k over F_p,
// tuples (c_{k-1},...,c_0) in increasing order
std::vector<std::uint32_t> first_irreducible(std::uint64_t p, unsigned k) {
    std::uint64_t count = 1;
    for (unsigned i = 0; i < k; ++i) count *= p;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        std::vector<std::uint32_t> f(k + 1);
        std::uint64_t t = idx;
        for (unsigned i = 0; i < k; ++i) { f[i] = static_cast<std::uint32_t>(t % p); t /= p; }
        f[k] = 1;
        if (is_irreducible_over_prime(f, p)) return f;
    }
    throw invariant_error("first_irreducible: none found");
}

}  // namespace

Fq Fq::make(std::uint64_t p, unsigned k) {
    if (!is_prime_u64(p)) throw std::invalid_argument("Fq::make: p must be prime");
    if (p < 5) throw std::invalid_argument("Fq::make: p must be >= 5");
    if (k < 1) throw std::invalid_argument("Fq::make: k must be >= 1");
    return Fq(p, k, false);
}

Fq Fq::prime(std::uint64_t ell) {
    if (!is_prime_u64(ell) || ell < 3)
        throw std::invalid_argument("Fq::prime: l must be an odd prime >= 3");
    return Fq(ell, 1, true);
}

Fq::Fq(std::uint64_t p, unsigned k, bool) : p_(p), k_(k) {
    std::uint64_t q = 1;
    for (unsigned i = 0; i < k; ++i) {
        q *= p;
        if (q > (1u << 20))
            throw std::invalid_argument("Fq: field too large for table representation");
    }
    q_ = static_cast<std::uint32_t>(q);
    if (static_cast<std::uint64_t>(q_) * q_ > (1ull << 26))
        throw std::invalid_argument("Fq: field too large for table representation");

    if (k_ > 1) modulus_ = first_irreducible(p_, k_);

    add_.resize(static_cast<std::size_t>(q_) * q_);
    mul_.resize(static_cast<std::size_t>(q_) * q_);
    neg_.resize(q_);
    inv_.assign(q_, 0);

    for (std::uint32_t a = 0; a < q_; ++a) {
        auto va = decode(a, p_, k_);
        std::vector<std::uint32_t> vn(k_);
        for (unsigned i = 0; i < k_; ++i) vn[i] = static_cast<std::uint32_t>((p_ - va[i]) % p_);
        neg_[a] = encode(vn, p_);
        for (std::uint32_t b = 0; b < q_; ++b) {
            auto vb = decode(b, p_, k_);
            std::vector<std::uint32_t> vs(k_);
            for (unsigned i = 0; i < k_; ++i) vs[i] = static_cast<std::uint32_t>((va[i] + vb[i]) % p_);
            add_[idx(a, b)] = encode(vs, p_);
            if (k_ == 1) {
                mul_[idx(a, b)] = static_cast<std::uint32_t>((static_cast<std::uint64_t>(a) * b) % p_);
            } else {
                mul_[idx(a, b)] = encode(polymul_mod(va, vb, modulus_, p_), p_);
            }
        }
    }
    for (std::uint32_t a = 1; a < q_; ++a) {
        // a^(q-2)
        std::uint32_t r = 1, b = a;
        std::uint64_t e = q_ - 2;
        while (e) {
            if (e & 1) r = mul_[idx(r, b)];
            b = mul_[idx(b, b)];
            e >>= 1;
        }
        inv_[a] = r;
    }
}

std::uint32_t Fq::pow(std::uint32_t a, std::uint64_t e) const {
    std::uint32_t r = 1;
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

std::uint32_t Fq::from_int(std::int64_t n) const {
    std::int64_t m = static_cast<std::int64_t>(p_);
    return static_cast<std::uint32_t>(((n % m) + m) % m);
}

SquareClass Fq::square_class(std::uint32_t a) const {
    if (a == 0) return kZeroClass;
    return pow(a, (static_cast<std::uint64_t>(q_) - 1) / 2) == 1 ? kSquare : kNonSquare;
}

std::string Fq::to_string() const {
    return std::to_string(p_) + "^" + std::to_string(k_);
}

}  // namespace ellsieve::ff
