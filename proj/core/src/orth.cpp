#include "ellsieve/orth.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "ellsieve/errors.hpp"

namespace ellsieve::orth {

QuadSpace::QuadSpace(std::uint64_t ell, unsigned N, SpaceType type)
    : F_(Fq::prime(ell)), N_(N), type_(type) {
    if (N < 1) throw std::invalid_argument("QuadSpace: dimension must be >= 1");
    if ((N % 2 == 0) == (type == SpaceType::Odd))
        throw std::invalid_argument("QuadSpace: type does not match dimension parity");
    gram_.assign(static_cast<std::size_t>(N) * N, 0);

    unsigned planes = N / 2;
    bool nonsplit = (type == SpaceType::NonSplit);
    if (nonsplit) --planes;
    unsigned pos = 0;
    for (unsigned i = 0; i < planes; ++i, pos += 2) {
        gram_[pos * N_ + pos + 1] = 1;
        gram_[(pos + 1) * N_ + pos] = 1;
    }
    if (nonsplit) {
        // anisotropic binary block diag(1, -delta), delta the least non-square
        std::uint32_t delta = 2;
        while (F_.square_class(delta) != ff::kNonSquare) ++delta;
        gram_[pos * N_ + pos] = 1;
        gram_[(pos + 1) * N_ + (pos + 1)] = F_.neg(delta);
        pos += 2;
    }
    if (N % 2 == 1) gram_[pos * N_ + pos] = 1;

    OrthMat G{N_, gram_};
    disc_ = F_.square_class(det(F_, G));

    // even-type sanity: split <=> disc = class((-1)^(N/2))
    if (type != SpaceType::Odd) {
        SquareClass split_disc = F_.square_class(F_.from_int((N / 2) % 2 ? -1 : 1));
        bool looks_split = (disc_ == split_disc);
        if (looks_split != (type == SpaceType::Split))
            throw invariant_error("QuadSpace: canonical Gram has wrong discriminant class");
    }
}

std::uint32_t QuadSpace::bilinear(const std::vector<std::uint32_t>& x,
                                  const std::vector<std::uint32_t>& y) const {
    std::uint32_t acc = 0;
    for (unsigned i = 0; i < N_; ++i) {
        if (x[i] == 0) continue;
        std::uint32_t row = 0;
        for (unsigned j = 0; j < N_; ++j)
            row = F_.add(row, F_.mul(gram_[i * N_ + j], y[j]));
        acc = F_.add(acc, F_.mul(x[i], row));
    }
    return acc;
}

std::uint32_t QuadSpace::quad(const std::vector<std::uint32_t>& v) const {
    return bilinear(v, v);
}

OrthMat OrthMat::identity(unsigned n) {
    OrthMat m{n, std::vector<std::uint32_t>(static_cast<std::size_t>(n) * n, 0)};
    for (unsigned i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

std::string mat_to_string(const OrthMat& M) {
    std::string s;
    for (std::size_t i = 0; i < M.a.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(M.a[i]);
    }
    return s;
}

OrthMat matmul(const Fq& F, const OrthMat& A, const OrthMat& B) {
    unsigned n = A.n;
    OrthMat C{n, std::vector<std::uint32_t>(static_cast<std::size_t>(n) * n, 0)};
    for (unsigned i = 0; i < n; ++i)
        for (unsigned k = 0; k < n; ++k) {
            std::uint32_t aik = A.at(i, k);
            if (aik == 0) continue;
            for (unsigned j = 0; j < n; ++j)
                C.at(i, j) = F.add(C.at(i, j), F.mul(aik, B.at(k, j)));
        }
    return C;
}

std::vector<std::uint32_t> matvec(const Fq& F, const OrthMat& A,
                                  const std::vector<std::uint32_t>& v) {
    std::vector<std::uint32_t> w(A.n, 0);
    for (unsigned i = 0; i < A.n; ++i) {
        std::uint32_t acc = 0;
        for (unsigned j = 0; j < A.n; ++j) acc = F.add(acc, F.mul(A.at(i, j), v[j]));
        w[i] = acc;
    }
    return w;
}

bool is_isometry(const QuadSpace& S, const OrthMat& M) {
    const Fq& F = S.field();
    unsigned n = S.dim();
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = i; j < n; ++j) {
            std::uint32_t acc = 0;
            for (unsigned k = 0; k < n; ++k) {
                std::uint32_t row = 0;
                for (unsigned l = 0; l < n; ++l)
                    row = F.add(row, F.mul(S.gram(k, l), M.at(l, j)));
                acc = F.add(acc, F.mul(M.at(k, i), row));
            }
            if (acc != S.gram(i, j)) return false;
        }
    return true;
}

std::uint32_t det(const Fq& F, OrthMat M) {
    unsigned n = M.n;
    std::uint32_t d = 1;
    for (unsigned col = 0; col < n; ++col) {
        unsigned pivot = col;
        while (pivot < n && M.at(pivot, col) == 0) ++pivot;
        if (pivot == n) return 0;
        if (pivot != col) {
            for (unsigned j = 0; j < n; ++j) std::swap(M.at(pivot, j), M.at(col, j));
            d = F.neg(d);
        }
        std::uint32_t inv = F.inv(M.at(col, col));
        d = F.mul(d, M.at(col, col));
        for (unsigned row = col + 1; row < n; ++row) {
            std::uint32_t c = F.mul(M.at(row, col), inv);
            if (c == 0) continue;
            for (unsigned j = col; j < n; ++j)
                M.at(row, j) = F.sub(M.at(row, j), F.mul(c, M.at(col, j)));
        }
    }
    return d;
}

FqPoly char_poly_reversed(const Fq& F, const OrthMat& M) {
    // Berkowitz, division free.  After step k, c[i] is the coefficient of
    // x^(k-i) in det(xI - A_k) for the leading k x k block A_k; then
    // det(1 - TM) = sum_i c[i] T^i.
    unsigned n = M.n;
    std::vector<std::uint32_t> c{1};
    for (unsigned k = 1; k <= n; ++k) {
        unsigned m = k - 1;
        std::uint32_t a = M.at(m, m);
        std::vector<std::uint32_t> t(k + 1, 0);
        t[0] = 1;
        t[1] = F.neg(a);
        std::vector<std::uint32_t> w(m);
        for (unsigned j = 0; j < m; ++j) w[j] = M.at(j, m);
        for (unsigned j = 2; j <= k; ++j) {
            std::uint32_t dot = 0;
            for (unsigned i = 0; i < m; ++i) dot = F.add(dot, F.mul(M.at(m, i), w[i]));
            t[j] = F.neg(dot);
            if (j < k) {
                std::vector<std::uint32_t> w2(m, 0);
                for (unsigned i = 0; i < m; ++i) {
                    std::uint32_t acc = 0;
                    for (unsigned l = 0; l < m; ++l) acc = F.add(acc, F.mul(M.at(i, l), w[l]));
                    w2[i] = acc;
                }
                w = std::move(w2);
            }
        }
        std::vector<std::uint32_t> nc(k + 1, 0);
        for (unsigned i = 0; i <= k; ++i) {
            std::uint32_t acc = 0;
            for (unsigned j = 0; j < c.size() && j <= i; ++j)
                acc = F.add(acc, F.mul(t[i - j], c[j]));
            nc[i] = acc;
        }
        c = std::move(nc);
    }
    return FqPoly(F, std::move(c));
}

OrthMat reflection(const QuadSpace& S, const std::vector<std::uint32_t>& v) {
    const Fq& F = S.field();
    std::uint32_t qv = S.quad(v);
    if (qv == 0) throw std::invalid_argument("reflection: isotropic vector");
    unsigned n = S.dim();
    OrthMat R = OrthMat::identity(n);
    std::uint32_t two_over_q = F.div(F.from_int(2), qv);
    // r_v(e_j) = e_j - (2 B(e_j, v)/Q(v)) v
    for (unsigned j = 0; j < n; ++j) {
        std::uint32_t bj = 0;
        for (unsigned l = 0; l < n; ++l) bj = F.add(bj, F.mul(S.gram(j, l), v[l]));
        std::uint32_t coef = F.mul(two_over_q, bj);
        if (coef == 0) continue;
        for (unsigned i = 0; i < n; ++i)
            R.at(i, j) = F.sub(R.at(i, j), F.mul(coef, v[i]));
    }
    return R;
}

SquareClass spinor_norm(const QuadSpace& S, const OrthMat& M) {
    const Fq& F = S.field();
    unsigned n = S.dim();
    OrthMat W = M;
    OrthMat I = OrthMat::identity(n);
    SquareClass acc = ff::kSquare;
    SplitMix64 rng(0x5eed);
    int guard = 0;
    while (!(W == I)) {
        if (++guard > 512) throw invariant_error("spinor_norm: factorization did not terminate");
        bool progressed = false;
        auto try_vec = [&](const std::vector<std::uint32_t>& x) {
            std::vector<std::uint32_t> wx = matvec(F, W, x);
            std::vector<std::uint32_t> w(n);
            bool nonzero = false;
            for (unsigned i = 0; i < n; ++i) {
                w[i] = F.sub(x[i], wx[i]);
                nonzero |= (w[i] != 0);
            }
            if (!nonzero || S.quad(w) == 0) return false;
            acc = acc * F.square_class(S.quad(w));
            W = matmul(F, reflection(S, w), W);
            return true;
        };
        std::vector<std::uint32_t> x(n, 0);
        for (unsigned i = 0; i < n && !progressed; ++i) {
            std::fill(x.begin(), x.end(), 0);
            x[i] = 1;
            progressed = try_vec(x);
        }
        for (unsigned i = 0; i < n && !progressed; ++i)
            for (unsigned j = i + 1; j < n && !progressed; ++j) {
                std::fill(x.begin(), x.end(), 0);
                x[i] = 1;
                x[j] = 1;
                progressed = try_vec(x);
            }
        if (!progressed) {
            // Wall's degenerate case: premultiply by a reflection and retry
            for (;;) {
                bool nonzero = false;
                for (unsigned i = 0; i < n; ++i) {
                    x[i] = static_cast<std::uint32_t>(rng.below(F.q()));
                    nonzero |= (x[i] != 0);
                }
                if (!nonzero || S.quad(x) == 0) continue;
                break;
            }
            acc = acc * F.square_class(S.quad(x));
            W = matmul(F, reflection(S, x), W);
        }
    }
    return acc;
}

CosetLabel coset_label(const QuadSpace& S, const OrthMat& M) {
    const Fq& F = S.field();
    CosetLabel lab;
    lab.det = (det(F, M) == 1) ? +1 : -1;
    lab.spinor = (spinor_norm(S, M) == ff::kSquare) ? +1 : -1;
    return lab;
}

bool omega_member(const QuadSpace& S, const OrthMat& M) {
    CosetLabel l = coset_label(S, M);
    return l.det == +1 && l.spinor == +1;
}

std::uint64_t group_order(std::uint64_t ell, unsigned N, SpaceType type) {
    if ((N % 2 == 1) != (type == SpaceType::Odd))
        throw std::invalid_argument("group_order: type does not match dimension parity");
    if (N % 2 == 1) {
        unsigned n = N / 2;
        if (N == 1) return 2;
        std::uint64_t order = 2;
        for (unsigned i = 0; i < n * n; ++i) order *= ell;
        for (unsigned i = 1; i <= n; ++i) {
            std::uint64_t e = 1;
            for (unsigned j = 0; j < 2 * i; ++j) e *= ell;
            order *= (e - 1);
        }
        return order;
    }
    unsigned n = N / 2;
    std::int64_t eps = (type == SpaceType::Split) ? +1 : -1;
    std::uint64_t order = 2;
    for (unsigned i = 0; i < n * (n - 1); ++i) order *= ell;
    std::uint64_t en = 1;
    for (unsigned j = 0; j < n; ++j) en *= ell;
    order *= static_cast<std::uint64_t>(static_cast<std::int64_t>(en) - eps);
    for (unsigned i = 1; i + 1 <= n; ++i) {
        std::uint64_t e = 1;
        for (unsigned j = 0; j < 2 * i; ++j) e *= ell;
        order *= (e - 1);
    }
    return order;
}

MatKey mat_key(std::uint64_t ell, const OrthMat& M) {
    MatKey k = 0;
    for (std::size_t i = M.a.size(); i-- > 0;) k = k * ell + M.a[i];
    return k;
}

OrthMat mat_unkey(std::uint64_t ell, unsigned n, MatKey k) {
    OrthMat M{n, std::vector<std::uint32_t>(static_cast<std::size_t>(n) * n)};
    for (std::size_t i = 0; i < M.a.size(); ++i) {
        M.a[i] = static_cast<std::uint32_t>(k % ell);
        k /= ell;
    }
    return M;
}

std::vector<std::vector<std::uint32_t>> anisotropic_lines(const QuadSpace& S) {
    const Fq& F = S.field();
    unsigned n = S.dim();
    std::vector<std::vector<std::uint32_t>> lines;
    std::vector<std::uint32_t> v(n, 0);
    std::uint64_t total = 1;
    for (unsigned i = 0; i < n; ++i) total *= F.q();
    for (std::uint64_t idx = 1; idx < total; ++idx) {
        std::uint64_t t = idx;
        for (unsigned i = 0; i < n; ++i) { v[i] = static_cast<std::uint32_t>(t % F.q()); t /= F.q(); }
        unsigned lead = 0;
        while (v[lead] == 0) ++lead;
        if (v[lead] != 1) continue;  // one representative per projective line
        if (S.quad(v) != 0) lines.push_back(v);
    }
    return lines;
}

std::vector<MatKey> enumerate_group(const QuadSpace& S, std::uint64_t budget) {
    std::uint64_t order = group_order(S.ell(), S.dim(), S.type());
    if (order > budget)
        throw budget_error("enumerate_group: group order " + std::to_string(order) +
                           " exceeds budget " + std::to_string(budget));
    long double bits = S.dim() * S.dim() * std::log2l(static_cast<long double>(S.ell()));
    if (bits > 126)
        throw budget_error("enumerate_group: matrices do not fit the 128-bit key");

    const Fq& F = S.field();
    auto lines = anisotropic_lines(S);
    std::vector<OrthMat> gens;
    gens.reserve(lines.size());
    for (const auto& v : lines) gens.push_back(reflection(S, v));

    struct KeyHash {
        std::size_t operator()(MatKey k) const {
            return std::hash<std::uint64_t>()(static_cast<std::uint64_t>(k) ^
                                              static_cast<std::uint64_t>(k >> 64) * 0x9e3779b97f4a7c15ull);
        }
    };
    std::unordered_set<MatKey, KeyHash> seen;
    seen.reserve(order * 13 / 10);
    std::deque<OrthMat> frontier;
    OrthMat id = OrthMat::identity(S.dim());
    seen.insert(mat_key(S.ell(), id));
    frontier.push_back(id);
    while (!frontier.empty()) {
        OrthMat cur = std::move(frontier.front());
        frontier.pop_front();
        for (const auto& g : gens) {
            OrthMat nxt = matmul(F, g, cur);
            MatKey k = mat_key(S.ell(), nxt);
            if (seen.insert(k).second) frontier.push_back(std::move(nxt));
        }
    }
    if (seen.size() != order)
        throw invariant_error("enumerate_group: BFS closure size " + std::to_string(seen.size()) +
                              " != closed-form order " + std::to_string(order));
    std::vector<MatKey> out(seen.begin(), seen.end());
    std::sort(out.begin(), out.end());
    return out;
}

OrthMat random_coset_element(const QuadSpace& S, CosetLabel target, SplitMix64& rng) {
    const Fq& F = S.field();
    unsigned n = S.dim();
    unsigned logl = 0;
    while ((1ull << logl) < S.ell()) ++logl;
    unsigned count = 2 * n * std::max(1u, logl);
    if (target.det == -1) ++count;  // det of a product of k reflections is (-1)^k
    std::vector<std::uint32_t> v(n);
    for (;;) {
        OrthMat M = OrthMat::identity(n);
        int sp = +1;
        for (unsigned i = 0; i < count; ++i) {
            std::uint32_t qv = 0;
            do {
                bool nonzero = false;
                for (unsigned j = 0; j < n; ++j) {
                    v[j] = static_cast<std::uint32_t>(rng.below(F.q()));
                    nonzero |= (v[j] != 0);
                }
                qv = nonzero ? S.quad(v) : 0;
            } while (qv == 0);
            M = matmul(F, reflection(S, v), M);
            if (F.square_class(qv) == ff::kNonSquare) sp = -sp;
        }
        if (sp == target.spinor) return M;
    }
}

}  // namespace ellsieve::orth
