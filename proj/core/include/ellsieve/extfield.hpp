#pragma once

#include <cstdint>
#include <vector>

#include "ellsieve/fqpoly.hpp"

namespace ellsieve::ff {

// F_{q^n} presented as F_q[y]/(M) with discrete-log tables for a fixed
// generator of the multiplicative group plus Zech logarithms, so the hot
// loops (quadratic-character sums over every element) run entirely in the
// log domain.  Elements are indices 0..q^n-1 encoding coefficient vectors
// base q; logarithms are ints with -1 standing for the zero element.
//
// Immutable after construction, shareable between threads.
class ExtField {
public:
    static constexpr std::int32_t kLogZero = -1;

    // canonical modulus: first monic irreducible of degree n over the base
    ExtField(const Fq& base, unsigned n);
    // explicit modulus (residue fields F_q[t]/P use P itself)
    ExtField(const Fq& base, FqPoly modulus);

    const Fq& base() const { return *base_; }
    unsigned n() const { return n_; }
    std::uint64_t size() const { return size_; }
    const FqPoly& modulus() const { return modulus_; }

    std::int32_t log_of(std::uint64_t index) const { return log_[index]; }
    std::uint64_t exp_of(std::int32_t lg) const { return lg < 0 ? 0 : exp_[lg]; }

    std::int32_t mul_log(std::int32_t a, std::int32_t b) const {
        if (a < 0 || b < 0) return kLogZero;
        std::int64_t s = static_cast<std::int64_t>(a) + b;
        if (s >= order_) s -= order_;
        return static_cast<std::int32_t>(s);
    }

    std::int32_t add_log(std::int32_t a, std::int32_t b) const {
        if (a < 0) return b;
        if (b < 0) return a;
        if (a < b) std::swap(a, b);
        std::int32_t z = zech_[a - b];  // 1 + g^(a-b)
        if (z < 0) return kLogZero;
        std::int64_t s = static_cast<std::int64_t>(b) + z;
        if (s >= order_) s -= order_;
        return static_cast<std::int32_t>(s);
    }

    // quadratic character: chi(g^i) = (-1)^i, chi(0) = 0
    int chi_log(std::int32_t lg) const { return lg < 0 ? 0 : 1 - 2 * static_cast<int>(lg & 1); }

    // embed a base-field element as a constant
    std::uint64_t embed(std::uint32_t base_elem) const { return base_elem; }

    // reduce a base-coefficient polynomial modulo the modulus
    std::uint64_t from_poly(const FqPoly& f) const;

    // Horner evaluation at the element with the given log; coefficients are
    // base-field values lifted through embed()
    std::int32_t eval_log(const std::vector<std::int32_t>& coeff_logs, std::int32_t x_log) const {
        std::int32_t r = kLogZero;
        for (std::size_t i = coeff_logs.size(); i-- > 0;)
            r = add_log(mul_log(r, x_log), coeff_logs[i]);
        return r;
    }

    std::vector<std::int32_t> coeff_logs(const FqPoly& f) const;

    // index-domain arithmetic (used off the hot path)
    std::uint64_t add_index(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t mul_index(std::uint64_t a, std::uint64_t b) const {
        return exp_of(mul_log(log_of(a), log_of(b)));
    }

private:
    void build_tables();

    const Fq* base_;
    unsigned n_;
    std::uint64_t size_;
    std::int64_t order_;  // q^n - 1
    FqPoly modulus_;
    std::vector<std::uint64_t> exp_;
    std::vector<std::int32_t> log_;
    std::vector<std::int32_t> zech_;
};

}  // namespace ellsieve::ff
