#include "ellsieve/scan.hpp"

#include <atomic>
#include <mutex>
#include <thread>

#include "ellsieve/errors.hpp"

namespace ellsieve::sieve {

ScanResult run_twist_scan(const lfunc::TwistFamily& family, const PrimeWindow& window,
                          const ScanOptions& opts) {
    auto points = family.parameter_points();
    ScanResult result;
    result.rows.resize(points.size());

    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::string error_message;
    std::mutex error_mutex;

    auto work = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= points.size() || failed.load()) return;
            try {
                std::uint32_t c = points[i];
                TwistRow row;
                row.c = c;
                ff::FqPoly f = family.twist_poly(c);
                row.f = f.to_string();
                lfunc::EllipticSurface Ec = family.base().quadratic_twist(f);
                row.L = lfunc::l_function(Ec, opts.lopts);
                row.N = row.L.degree();
                row.sign = row.L.sign;
                lfunc::ReducedL red = lfunc::reduce_l(row.L);
                row.N_red = red.N_red;
                row.record = galois_maximality(red, window);
                if (opts.verify_euler) {
                    auto series = lfunc::euler_product_series(Ec, static_cast<unsigned>(row.N) + 1);
                    for (int j = 0; j <= row.N; ++j)
                        if (series[static_cast<std::size_t>(j)] != row.L.c[static_cast<std::size_t>(j)])
                            throw invariant_error("twist scan: Euler-product oracle disagrees");
                    if (series[static_cast<std::size_t>(row.N) + 1] != 0)
                        throw invariant_error("twist scan: Euler series does not terminate");
                    row.euler_verified = true;
                }
                result.rows[i] = std::move(row);
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(error_mutex);
                failed.store(true);
                if (error_message.empty()) error_message = e.what();
            }
        }
    };

    unsigned jobs = std::max(1u, opts.jobs);
    if (jobs == 1 || points.size() <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
    if (failed.load()) throw invariant_error("twist scan failed: " + error_message);

    for (const auto& row : result.rows) {
        ++result.summary.total;
        if (row.record.verdict() == Verdict::MaximalCertified)
            ++result.summary.certified;
        else
            ++result.summary.undetermined;
        if (!row.record.eps2_constant) ++result.summary.eps2_varying;
    }
    return result;
}

}  // namespace ellsieve::sieve
