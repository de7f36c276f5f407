#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ellsieve/sieve.hpp"
#include "ellsieve/surface.hpp"

namespace ellsieve::sieve {

// one row of a twist scan
struct TwistRow {
    std::uint32_t c = 0;
    std::string f;  // twisting polynomial, serialized
    int N = 0;
    unsigned N_red = 0;
    int sign = +1;
    lfunc::LPolynomial L;
    WitnessRecord record;
    bool euler_verified = false;
};

struct ScanSummary {
    std::size_t total = 0;
    std::size_t certified = 0;
    std::size_t undetermined = 0;
    std::size_t eps2_varying = 0;  // twists whose coset datum moved across the window
    double undetermined_fraction() const {
        return total ? static_cast<double>(undetermined) / static_cast<double>(total) : 0.0;
    }
};

struct ScanResult {
    std::vector<TwistRow> rows;
    ScanSummary summary;
};

struct ScanOptions {
    lfunc::LOptions lopts;
    bool verify_euler = false;  // run the inverted-Euler-product cross-check per twist
    unsigned jobs = 1;
};

ScanResult run_twist_scan(const lfunc::TwistFamily& family, const PrimeWindow& window,
                          const ScanOptions& opts);

}  // namespace ellsieve::sieve
