// ellsieve: batch harness for reduced L-functions of quadratic twists over
// F_q(t), their mod-l sieving classes, orthogonal-group audits, and the
// explicit sieve-bound calculator.  Commands: lfun, twist-scan, group-audit,
// theta-density, bound.

#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "ellsieve/errors.hpp"
#include "ellsieve/scan.hpp"
#include "ellsieve/sieve.hpp"
#include "ellsieve/version.hpp"

using nlohmann::json;
using namespace ellsieve;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitBadConfig = 2;
constexpr int kExitBudget = 3;
constexpr int kExitInvariant = 4;

struct CommonOpts {
    std::uint64_t p = 5;
    unsigned k = 1;
    std::uint64_t q = 0;  // overrides (p, k) when set: a prime power
    std::string curve = "legendre";
    std::string a_coeffs, b_coeffs, m_coeffs;
    unsigned d = 3;
    std::string g_coeffs;
    std::uint64_t g_seed = 0;
    bool g_seeded = false;
    std::uint64_t seed = 0;
    unsigned jobs = 0;
    std::uint64_t budget = 10'000'000'000ull;
    bool budget_override = false;
    std::string format = "csv";
    std::string out_path;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--p", o.p, "characteristic of the base field (>= 5)");
    cmd->add_option("--k", o.k, "extension degree of the base field");
    cmd->add_option("--q", o.q, "base field size p^k (alternative to --p/--k)");
    cmd->add_option("--curve", o.curve, "legendre | custom");
    cmd->add_option("--a-coeffs", o.a_coeffs, "a(t) for custom curves, c0,c1,...");
    cmd->add_option("--b-coeffs", o.b_coeffs, "b(t) for custom curves");
    cmd->add_option("--m-coeffs", o.m_coeffs, "bad-locus polynomial m(t)");
    cmd->add_option("--d", o.d, "twist degree d");
    cmd->add_option("--g-coeffs", o.g_coeffs, "explicit g(t) of degree d-1");
    cmd->add_option("--g-seed", o.g_seed, "choose g pseudo-randomly from the valid set")
        ->each([&o](const std::string&) { o.g_seeded = true; });
    cmd->add_option("--seed", o.seed, "deterministic RNG seed");
    cmd->add_option("--jobs", o.jobs, "worker threads (default: hardware)");
    cmd->add_option("--budget", o.budget, "character-evaluation budget");
    cmd->add_flag("--budget-override", o.budget_override, "ignore the budget guard");
    cmd->add_option("--format", o.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", o.out_path, "output file (default: stdout)");
}

ff::Fq make_field(const CommonOpts& o) {
    std::uint64_t p = o.p;
    unsigned k = o.k;
    if (o.q != 0) {
        std::uint64_t q = o.q;
        std::uint64_t base = 0;
        for (std::uint64_t cand = 2; cand * cand <= q; ++cand)
            if (q % cand == 0) { base = cand; break; }
        if (base == 0) base = q;
        unsigned e = 0;
        std::uint64_t acc = 1;
        while (acc < q) { acc *= base; ++e; }
        if (acc != q) throw std::invalid_argument("--q must be a prime power");
        p = base;
        k = e;
    }
    return ff::Fq::make(p, k);
}

lfunc::EllipticSurface make_curve(const ff::Fq& F, const CommonOpts& o) {
    if (o.curve == "legendre") return lfunc::EllipticSurface::legendre(F);
    if (o.curve != "custom") throw std::invalid_argument("--curve must be legendre or custom");
    if (o.a_coeffs.empty() || o.b_coeffs.empty())
        throw std::invalid_argument("custom curves need --a-coeffs and --b-coeffs");
    return lfunc::EllipticSurface(F, ff::FqPoly::parse(F, o.a_coeffs),
                                  ff::FqPoly::parse(F, o.b_coeffs));
}

ff::FqPoly make_m(const ff::Fq& F, const CommonOpts& o) {
    if (!o.m_coeffs.empty()) return ff::FqPoly::parse(F, o.m_coeffs);
    if (o.curve == "legendre") return ff::FqPoly::from_ints(F, {0, -1, 1});  // t(t-1)
    throw std::invalid_argument("custom curves need --m-coeffs");
}

ff::FqPoly choose_g(const ff::Fq& F, const CommonOpts& o, const ff::FqPoly& m) {
    if (!o.g_coeffs.empty()) return ff::FqPoly::parse(F, o.g_coeffs);
    if (!o.g_seeded) return lfunc::canonical_g(F, o.d, m);
    SplitMix64 rng(o.g_seed ^ 0xe115u);
    unsigned deg = o.d - 1;
    for (int tries = 0; tries < 100000; ++tries) {
        std::vector<std::uint32_t> c(deg + 1);
        for (unsigned i = 0; i < deg; ++i) c[i] = static_cast<std::uint32_t>(rng.below(F.q()));
        c[deg] = 1;
        ff::FqPoly g(F, std::move(c));
        if (!ff::is_squarefree(g)) continue;
        if (ff::gcd(g, m).degree() != 0) continue;
        return g;
    }
    throw std::invalid_argument("no valid g found for the requested seed");
}

json witnesses_json(const sieve::WitnessRecord& rec) {
    json w = json::object();
    json eps2 = json::object();
    json exceptional = json::array();
    for (const auto& o : rec.per_ell) {
        json classes = json::array();
        for (int i = 0; i < 4; ++i)
            if (o.classes[i]) classes.push_back(std::string("T") + std::to_string(i + 1));
        w[std::to_string(o.ell)] = classes;
        eps2[std::to_string(o.ell)] = o.eps2.v;
        if (o.exceptional) exceptional.push_back(o.ell);
    }
    return json{{"witnesses", w}, {"eps2", eps2}, {"exceptional", exceptional}};
}

struct Output {
    std::ostream* os;
    std::ofstream file;

    explicit Output(const std::string& path) {
        if (path.empty()) {
            os = &std::cout;
        } else {
            file.open(path);
            if (!file) throw std::invalid_argument("cannot open output file " + path);
            os = &file;
        }
    }
};

std::string config_echo(const CommonOpts& o, const ff::Fq& F, const std::string& extra) {
    std::ostringstream os;
    os << "version=" << kVersion << " q=" << F.to_string() << " curve=" << o.curve
       << " d=" << o.d << " seed=" << o.seed << " budget=" << o.budget;
    if (!extra.empty()) os << " " << extra;
    return os.str();
}

// ---------------------------------------------------------------- lfun ----

int cmd_lfun(const CommonOpts& o, std::optional<std::int64_t> c_param,
             const std::string& f_coeffs, bool verify) {
    ff::Fq F = make_field(o);
    lfunc::EllipticSurface E = make_curve(F, o);
    ff::FqPoly m = make_m(F, o);

    ff::FqPoly f(F);
    std::uint32_t c_used = 0;
    if (!f_coeffs.empty()) {
        f = ff::FqPoly::parse(F, f_coeffs);
    } else {
        ff::FqPoly g = choose_g(F, o, m);
        lfunc::TwistFamily fam(E, m, g, o.d);
        if (!c_param) throw std::invalid_argument("lfun needs --c or --f-coeffs");
        c_used = F.from_int(*c_param);
        if (g.eval(c_used) == 0 || m.eval(c_used) == 0)
            throw std::invalid_argument("--c lies outside U_g");
        f = fam.twist_poly(c_used);
    }

    lfunc::EllipticSurface Ef = E.quadratic_twist(f);
    lfunc::LOptions lopts;
    lopts.budget = o.budget;
    lopts.budget_override = o.budget_override;
    lfunc::LPolynomial L = lfunc::l_function(Ef, lopts);
    lfunc::ReducedL red = lfunc::reduce_l(L);

    bool euler_ok = false;
    if (verify) {
        auto series = lfunc::euler_product_series(Ef, static_cast<unsigned>(L.degree()) + 1);
        euler_ok = true;
        for (int i = 0; i <= L.degree(); ++i)
            euler_ok = euler_ok && series[static_cast<std::size_t>(i)] == L.c[static_cast<std::size_t>(i)];
        euler_ok = euler_ok && series[static_cast<std::size_t>(L.degree()) + 1] == 0;
        if (!euler_ok) throw invariant_error("lfun: Euler-product oracle disagreement");
    }

    Output out(o.out_path);
    if (o.format == "json") {
        json doc;
        doc["config"] = config_echo(o, F, "");
        doc["f"] = f.to_string();
        doc["c"] = c_used;
        doc["L"] = json::parse(L.json());
        json lu = json::array(), lr = json::array();
        for (const auto& r : red.unitarized) lu.push_back(r.to_string());
        for (const auto& r : red.reduced) lr.push_back(r.to_string());
        doc["L_unitarized"] = lu;
        doc["L_reduced"] = lr;
        doc["N"] = L.degree();
        doc["N_red"] = red.N_red;
        doc["sign"] = L.sign;
        doc["weil_error"] = lfunc::weil_modulus_error(L);
        if (verify) doc["euler_verified"] = euler_ok;
        *out.os << doc.dump() << "\n";
    } else {
        *out.os << "# " << config_echo(o, F, "") << "\n";
        *out.os << "f," << f.to_string() << "\n";
        *out.os << "L," << L.csv_row() << "\n";
        *out.os << "sign," << L.sign << "\n";
        *out.os << "N," << L.degree() << "\n";
        *out.os << "N_red," << red.N_red << "\n";
        std::ostringstream lu, lr;
        for (std::size_t i = 0; i < red.unitarized.size(); ++i)
            lu << (i ? "," : "") << red.unitarized[i].to_string();
        for (std::size_t i = 0; i < red.reduced.size(); ++i)
            lr << (i ? "," : "") << red.reduced[i].to_string();
        *out.os << "L_unitarized," << lu.str() << "\n";
        *out.os << "L_reduced," << lr.str() << "\n";
        if (verify) *out.os << "euler_verified," << (euler_ok ? 1 : 0) << "\n";
    }
    return kExitOk;
}

// ---------------------------------------------------------- twist-scan ----

int cmd_twist_scan(const CommonOpts& o, std::uint64_t ell_min, std::uint64_t ell_max,
                   bool verify, std::uint64_t cover_order) {
    ff::Fq F = make_field(o);
    lfunc::EllipticSurface E = make_curve(F, o);
    ff::FqPoly m = make_m(F, o);
    ff::FqPoly g = choose_g(F, o, m);
    lfunc::TwistFamily fam(E, m, g, o.d);
    sieve::PrimeWindow window = sieve::PrimeWindow::make(ell_min, ell_max, F.p());

    sieve::ScanOptions sopts;
    sopts.lopts.budget = o.budget;
    sopts.lopts.budget_override = o.budget_override;
    sopts.verify_euler = verify;
    sopts.jobs = o.jobs ? o.jobs : std::max(1u, std::thread::hardware_concurrency());
    sieve::ScanResult res = sieve::run_twist_scan(fam, window, sopts);

    // side-by-side theoretical bound, parametric in the cover order and H
    json bound = json::object();
    if (!res.rows.empty() && res.rows.front().N >= 5) {
        sieve::BoundParams bp;
        bp.N = static_cast<unsigned>(res.rows.front().N);
        bp.q = F.q();
        bp.cover_order = cover_order;
        bp.prime_order_case = true;
        bp.H = 1.0;
        bp.ell0 = ell_min;
        sieve::SieveBound sb = sieve::sieve_bound(bp);
        bound = {{"gamma", sb.gamma.to_string()},
                 {"two_over_gamma", sb.two_over_gamma.to_string()},
                 {"L", sb.L},
                 {"trivial_regime", sb.trivial_regime},
                 {"headline_q_term", sb.headline},
                 {"cover_order", cover_order},
                 {"C", "1 (HEURISTIC)"},
                 {"H", "1 (parametric)"}};
    }

    std::string window_str;
    for (auto ell : window.members())
        window_str += (window_str.empty() ? "" : "|") + std::to_string(ell);
    std::string extra = "g=" + g.to_string() + " window=" + window_str;

    Output out(o.out_path);
    if (o.format == "json") {
        for (const auto& row : res.rows) {
            json doc = witnesses_json(row.record);
            doc["c"] = row.c;
            doc["f"] = row.f;
            doc["N"] = row.N;
            doc["N_red"] = row.N_red;
            doc["sign"] = row.sign;
            doc["verdict"] = sieve::verdict_name(row.record.verdict());
            doc["L"] = json::parse(row.L.json());
            if (verify) doc["euler_verified"] = row.euler_verified;
            *out.os << doc.dump() << "\n";
        }
        json agg{{"config", config_echo(o, F, extra)},
                 {"total", res.summary.total},
                 {"certified", res.summary.certified},
                 {"undetermined", res.summary.undetermined},
                 {"undetermined_fraction", res.summary.undetermined_fraction()},
                 {"eps2_varying", res.summary.eps2_varying},
                 {"bound", bound}};
        *out.os << agg.dump() << "\n";
    } else {
        *out.os << "# " << config_echo(o, F, extra) << "\n";
        *out.os << "c,f,N,N_red,sign,verdict,witnessed,per_ell\n";
        for (const auto& row : res.rows) {
            std::string acc;
            for (int i = 0; i < 4; ++i)
                if (row.record.accumulated[i])
                    acc += (acc.empty() ? "" : "|") + std::string("T") + std::to_string(i + 1);
            std::string per;
            for (const auto& w : row.record.per_ell) {
                per += (per.empty() ? "" : ";") + std::to_string(w.ell) + ":";
                bool first = true;
                for (int i = 0; i < 4; ++i)
                    if (w.classes[i]) {
                        per += (first ? "" : "|") + std::string("T") + std::to_string(i + 1);
                        first = false;
                    }
            }
            *out.os << row.c << "," << row.f << "," << row.N << "," << row.N_red << ","
                    << row.sign << "," << sieve::verdict_name(row.record.verdict()) << "," << acc
                    << "," << per << "\n";
        }
        *out.os << "# total=" << res.summary.total << " certified=" << res.summary.certified
                << " undetermined=" << res.summary.undetermined
                << " eps2_varying=" << res.summary.eps2_varying << "\n";
        if (!bound.empty())
            *out.os << "# bound gamma=" << bound["gamma"].get<std::string>()
                    << " L=" << bound["L"].get<double>() << " trivial_regime="
                    << (bound["trivial_regime"].get<bool>() ? 1 : 0) << "\n";
    }
    return kExitOk;
}

// ---------------------------------------------------------- group-audit ----

int run_group_audit(std::ostream& os, std::uint64_t ell, unsigned N, orth::SpaceType type,
                    std::uint64_t budget) {
    using namespace orth;
    QuadSpace S(ell, N, type);
    const ff::Fq& F = S.field();
    auto keys = enumerate_group(S, budget);
    bool ok = true;
    auto report = [&](const char* name, bool pass) {
        os << "audit," << ell << "," << N << ","
           << (type == SpaceType::Split ? "split"
               : type == SpaceType::NonSplit ? "nonsplit" : "odd")
           << "," << name << "," << (pass ? "pass" : "FAIL") << "\n";
        ok = ok && pass;
    };

    report("order", keys.size() == group_order(ell, N, type));

    bool palin = true, zass = true;
    std::map<std::pair<int, int>, std::uint64_t> cosets;
    for (auto k : keys) {
        OrthMat M = mat_unkey(ell, N, k);
        ff::FqPoly f = char_poly_reversed(F, M);
        palin = palin && is_palindromic_member(f);
        CosetLabel lab = coset_label(S, M);
        cosets[{lab.det, lab.spinor}]++;
        std::uint32_t fm1 = f.eval(F.from_int(-1));
        if (fm1 != 0) {
            ff::SquareClass expect = F.square_class(fm1);
            if (N % 2 == 1) expect = expect * F.square_class(F.from_int(2));
            zass = zass && (spinor_norm(S, M) == expect);
        }
    }
    report("palindromic_closure", palin);
    report("zassenhaus", zass);
    if (N >= 3) {
        bool equi = cosets.size() == 4;
        for (const auto& [lab, count] : cosets) {
            (void)lab;
            equi = equi && (count == keys.size() / 4);
        }
        report("coset_equidistribution", equi);
    }

    if (N % 2 == 0) {
        // realizable separable plus-palindromic charpolys in SO are exactly
        // those with disc(f) = disc(Q)
        std::set<std::vector<std::uint32_t>> realized;
        for (auto k : keys) {
            OrthMat M = mat_unkey(ell, N, k);
            if (det(F, M) != 1) continue;
            ff::FqPoly f = char_poly_reversed(F, M);
            if (!is_plus_sheet(f) || !ff::is_squarefree(f)) continue;
            realized.insert(f.coeffs());
        }
        std::set<std::vector<std::uint32_t>> expected;
        for (const auto& f : plus_palindromic_members(F, N)) {
            if (!ff::is_squarefree(f)) continue;
            if (F.square_class(ff::discriminant(f)) == S.disc_class()) expected.insert(f.coeffs());
        }
        report("baeza", realized == expected);
    }
    return ok ? kExitOk : kExitInvariant;
}

int cmd_group_audit(const CommonOpts& o, std::uint64_t ell, unsigned N, const std::string& type) {
    Output out(o.out_path);
    *out.os << "# version=" << kVersion << " l=" << ell << " N=" << N << " type=" << type
            << " budget=" << o.budget << "\n";
    if (N % 2 == 1)
        return run_group_audit(*out.os, ell, N, orth::SpaceType::Odd, o.budget);
    if (type == "split") return run_group_audit(*out.os, ell, N, orth::SpaceType::Split, o.budget);
    if (type == "nonsplit")
        return run_group_audit(*out.os, ell, N, orth::SpaceType::NonSplit, o.budget);
    int a = run_group_audit(*out.os, ell, N, orth::SpaceType::Split, o.budget);
    int b = run_group_audit(*out.os, ell, N, orth::SpaceType::NonSplit, o.budget);
    return std::max(a, b);
}

// -------------------------------------------------------- theta-density ----

int cmd_theta_density(const CommonOpts& o, std::vector<std::uint64_t> ells, unsigned N,
                      const std::string& type_str, const std::string& method,
                      const std::string& coset_str, std::uint64_t samples) {
    using namespace orth;
    if (ells.empty()) throw std::invalid_argument("theta-density needs at least one --l");
    CosetLabel coset{+1, +1};
    if (coset_str.size() == 2) {
        coset.det = coset_str[0] == '-' ? -1 : +1;
        coset.spinor = coset_str[1] == '-' ? -1 : +1;
    } else {
        throw std::invalid_argument("--coset must be two signs, e.g. ++ or -+");
    }
    int eps1 = coset.det;

    Output out(o.out_path);
    *out.os << "# version=" << kVersion << " N=" << N << " coset=" << coset_str
            << " type=" << type_str << " method=" << method << " seed=" << o.seed << "\n";
    *out.os << "N,l,type,coset,class,method,numerator,denominator,estimate,ci_halfwidth,"
               "main_term,lemma_bound,lemma_valid\n";

    for (std::uint64_t ell : ells) {
        ThetaContext ctx;
        ctx.N_ambient = N;
        ctx.eps1 = eps1;
        unsigned N_red = ctx.n_reduced();
        SpaceType rt = SpaceType::Odd;
        if (N % 2 == 0) rt = (type_str == "nonsplit") ? SpaceType::NonSplit : SpaceType::Split;
        if (N % 2 == 1) {
            ctx.infer_from_poly = true;
        } else {
            ctx.reduced_type = rt;
            ctx.eps2 = coset.spinor == 1 ? ff::kSquare : ff::kNonSquare;
            QuadSpace Sred(ell, N_red, rt);
            ctx.disc_q = Sred.disc_class();
        }
        double main_terms[4] = {1.0 / (2 * N), 1.0 / (4 * N), 7.0 / (2 * N),
                                N_red >= 10 ? 1.0 / (8.0 * (N - 6)) : 1.0 / (N * N)};
        auto emit = [&](int cls, std::uint64_t num, std::uint64_t den, double est, double ci) {
            *out.os << N << "," << ell << ","
                    << (N % 2 == 1 ? "odd" : (rt == SpaceType::Split ? "split" : "nonsplit"))
                    << "," << (coset.det == 1 ? "+" : "-") << (coset.spinor == 1 ? "+" : "-")
                    << ",T" << (cls + 1) << "," << method << "," << num << "," << den << ","
                    << est << "," << ci << "," << main_terms[cls] << ","
                    << theta_lemma_lower_bound(static_cast<ThetaClass>(cls), N, N_red) << ","
                    << (theta_lemma_valid(ell, N) ? 1 : 0) << "\n";
        };
        if (method == "exact-poly") {
            PolyCensus c = theta_poly_census(ell, N_red, ctx);
            for (int i = 0; i < 4; ++i)
                emit(i, c.in_class[i], c.total,
                     static_cast<double>(c.in_class[i]) / static_cast<double>(c.total), 0.0);
        } else if (method == "exact-matrix") {
            SpaceType ambient_type = (N % 2 == 1) ? SpaceType::Odd : rt;
            QuadSpace S(ell, N, ambient_type);
            MatrixCensus c = theta_matrix_census(S, coset, ctx, o.budget);
            for (int i = 0; i < 4; ++i)
                emit(i, c.in_class[i], c.coset_size,
                     static_cast<double>(c.in_class[i]) / static_cast<double>(c.coset_size), 0.0);
        } else if (method == "montecarlo") {
            SpaceType ambient_type = (N % 2 == 1) ? SpaceType::Odd : rt;
            QuadSpace S(ell, N, ambient_type);
            for (int i = 0; i < 4; ++i) {
                MonteCarloDensity mc = theta_montecarlo_density(
                    S, coset, static_cast<ThetaClass>(i), ctx, samples, o.seed + static_cast<std::uint64_t>(i));
                emit(i,
                     static_cast<std::uint64_t>(mc.estimate * static_cast<double>(mc.samples) + 0.5),
                     mc.samples, mc.estimate, mc.ci_halfwidth);
            }
        } else {
            throw std::invalid_argument("--method must be exact-poly, exact-matrix or montecarlo");
        }
    }
    return kExitOk;
}

// ---------------------------------------------------------------- bound ----

int cmd_bound(const CommonOpts& o, unsigned N, std::uint64_t cover_order, double C, int case_sel,
              double H, std::uint64_t ell0) {
    sieve::BoundParams bp;
    bp.N = N;
    bp.q = make_field(o).q();
    bp.cover_order = cover_order;
    bp.C = C;
    bp.prime_order_case = (case_sel == 1);
    bp.H = H;
    bp.ell0 = ell0;
    sieve::SieveBound b = sieve::sieve_bound(bp);
    Output out(o.out_path);
    if (o.format == "json") {
        json doc{{"N", N},
                 {"q", bp.q},
                 {"d_prime", b.d_prime},
                 {"A", b.A.to_string()},
                 {"gamma", b.gamma.to_string()},
                 {"two_over_gamma", b.two_over_gamma.to_string()},
                 {"L", b.L},
                 {"trivial_regime", b.trivial_regime},
                 {"bound", b.bound},
                 {"headline", b.headline},
                 {"cover_order", cover_order},
                 {"C", C},
                 {"C_note", "HEURISTIC"},
                 {"H", H}};
        *out.os << doc.dump() << "\n";
    } else {
        *out.os << "# version=" << kVersion << " N=" << N << " q=" << bp.q << " C=" << C
                << " (HEURISTIC) cover_order=" << cover_order << " H=" << H << "\n";
        *out.os << "d_prime," << b.d_prime << "\n";
        *out.os << "A," << b.A.to_string() << "\n";
        *out.os << "gamma," << b.gamma.to_string() << "\n";
        *out.os << "two_over_gamma," << b.two_over_gamma.to_string() << "\n";
        *out.os << "L," << b.L << "\n";
        *out.os << "trivial_regime," << (b.trivial_regime ? 1 : 0) << "\n";
        *out.os << "bound," << b.bound << "\n";
        *out.os << "headline," << b.headline << "\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"reduced L-functions of quadratic twists over F_q(t) and their sieving classes"};
    app.set_config("--config", "", "plain key=value config file; flags win");
    app.require_subcommand(1);
    bool dump_config = false;
    app.add_flag("--dump-config", dump_config,
                 "print the resolved configuration in config-file form and exit")
        ->configurable(false);

    CommonOpts common;

    auto* lfun = app.add_subcommand("lfun", "L-function of a single twist");
    add_common(lfun, common);
    std::int64_t c_param = INT64_MIN;
    std::string f_coeffs;
    bool verify = false;
    lfun->add_option("--c", c_param, "twist parameter c");
    lfun->add_option("--f-coeffs", f_coeffs, "explicit twisting polynomial");
    lfun->add_flag("--verify", verify, "run the Euler-product oracle");

    auto* scan = app.add_subcommand("twist-scan", "scan c in U_g(F_q)");
    add_common(scan, common);
    std::uint64_t ell_min = 7, ell_max = 23, cover_order = 1;
    scan->add_option("--ell-min", ell_min, "window lower end");
    scan->add_option("--ell-max", ell_max, "window upper end");
    scan->add_flag("--verify", verify, "run the Euler-product oracle per twist");
    scan->add_option("--cover-order", cover_order, "|G(V/U)| for the reported bound");

    auto* audit = app.add_subcommand("group-audit", "exhaustive orthogonal-group audits");
    add_common(audit, common);
    std::uint64_t audit_ell = 5;
    unsigned audit_N = 3;
    std::string audit_type = "both";
    audit->add_option("--l", audit_ell, "odd prime l");
    audit->add_option("--n", audit_N, "dimension N");
    audit->add_option("--type", audit_type, "split | nonsplit | both (even N)");

    auto* density = app.add_subcommand("theta-density", "sieving-class densities");
    add_common(density, common);
    std::vector<std::uint64_t> ells;
    unsigned density_N = 5;
    std::string dtype = "nonsplit", method = "exact-poly", coset = "++";
    std::uint64_t samples = 10000;
    density->add_option("--l", ells, "primes l (repeatable)");
    density->add_option("--n", density_N, "ambient dimension N");
    density->add_option("--type", dtype, "split | nonsplit for even N");
    density->add_option("--method", method, "exact-poly | exact-matrix | montecarlo");
    density->add_option("--coset", coset, "coset label, e.g. ++ or -+");
    density->add_option("--samples", samples, "montecarlo sample count");

    auto* bound = app.add_subcommand("bound", "sieve-bound calculator");
    add_common(bound, common);
    unsigned bound_N = 5;
    std::uint64_t bcover = 1, bell0 = 13;
    double bC = 1.0, bH = 1.0;
    int bcase = 1;
    bound->add_option("--n", bound_N, "degree N of the L-functions (>= 5)");
    bound->add_option("--cover-order", bcover, "order of the covering group G(V/U); no default semantics");
    bound->add_option("--c-const", bC, "constant C (HEURISTIC, defaults to 1)");
    bound->add_option("--case", bcase, "1: prime-to-p order, 2: compatible-system");
    bound->add_option("--h-value", bH, "density mass H");
    bound->add_option("--ell0", bell0, "first admissible prime for the trivial-regime flag");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitBadConfig;
    }

    if (dump_config) {
        std::cout << app.config_to_str(false, false);
        return kExitOk;
    }

    try {
        if (lfun->parsed())
            return cmd_lfun(common,
                            c_param == INT64_MIN ? std::nullopt
                                                 : std::optional<std::int64_t>(c_param),
                            f_coeffs, verify);
        if (scan->parsed()) return cmd_twist_scan(common, ell_min, ell_max, verify, cover_order);
        if (audit->parsed()) return cmd_group_audit(common, audit_ell, audit_N, audit_type);
        if (density->parsed())
            return cmd_theta_density(common, ells, density_N, dtype, method, coset, samples);
        if (bound->parsed()) return cmd_bound(common, bound_N, bcover, bC, bcase, bH, bell0);
    } catch (const budget_error& e) {
        std::cerr << "resource refusal: " << e.what() << "\n";
        return kExitBudget;
    } catch (const invariant_error& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return kExitInvariant;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadConfig;
    }
    return kExitBadConfig;
}
