#include <benchmark/benchmark.h>

#include "ellsieve/scan.hpp"

using namespace ellsieve;
using ff::Fq;
using ff::FqPoly;

namespace {

void BM_LFunctionQ5D3(benchmark::State& state) {
    Fq F = Fq::make(5, 1);
    FqPoly g = FqPoly::from_ints(F, {1, 1, 1});
    lfunc::TwistFamily fam = lfunc::TwistFamily::legendre(F, 3, g);
    for (auto _ : state) {
        benchmark::DoNotOptimize(lfunc::l_function(fam.twist(2)));
    }
}
BENCHMARK(BM_LFunctionQ5D3);

void BM_LFunctionQ13D3(benchmark::State& state) {
    Fq F = Fq::make(13, 1);
    FqPoly m = FqPoly::from_ints(F, {0, -1, 1});
    FqPoly g = lfunc::canonical_g(F, 3, m);
    lfunc::TwistFamily fam = lfunc::TwistFamily::legendre(F, 3, g);
    std::uint32_t c = fam.parameter_points().front();
    for (auto _ : state) {
        benchmark::DoNotOptimize(lfunc::l_function(fam.twist(c)));
    }
}
BENCHMARK(BM_LFunctionQ13D3);

void BM_EulerOracleQ5(benchmark::State& state) {
    Fq F = Fq::make(5, 1);
    FqPoly g = FqPoly::from_ints(F, {1, 1, 1});
    lfunc::TwistFamily fam = lfunc::TwistFamily::legendre(F, 3, g);
    lfunc::EllipticSurface E = fam.twist(2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(lfunc::euler_product_series(E, 6));
    }
}
BENCHMARK(BM_EulerOracleQ5);

void BM_EnumerateO37(benchmark::State& state) {
    orth::QuadSpace S(7, 3, orth::SpaceType::Odd);
    for (auto _ : state) {
        benchmark::DoNotOptimize(orth::enumerate_group(S));
    }
}
BENCHMARK(BM_EnumerateO37);

void BM_SpinorNorm(benchmark::State& state) {
    orth::QuadSpace S(5, 4, orth::SpaceType::NonSplit);
    SplitMix64 rng(1);
    orth::OrthMat M = orth::random_coset_element(S, {+1, +1}, rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(orth::spinor_norm(S, M));
    }
}
BENCHMARK(BM_SpinorNorm);

void BM_ThetaCensus53(benchmark::State& state) {
    orth::ThetaContext ctx;
    ctx.N_ambient = 4;
    ctx.eps1 = +1;
    ctx.reduced_type = orth::SpaceType::NonSplit;
    ctx.eps2 = ff::kSquare;
    ctx.disc_q = ff::kNonSquare;
    for (auto _ : state) {
        benchmark::DoNotOptimize(orth::theta_poly_census(53, 4, ctx));
    }
}
BENCHMARK(BM_ThetaCensus53);

void BM_FactorDeg8(benchmark::State& state) {
    Fq F = Fq::prime(101);
    FqPoly f = FqPoly::from_ints(F, {3, 1, 4, 1, 5, 9, 2, 6, 1});
    for (auto _ : state) {
        benchmark::DoNotOptimize(ff::factor(f));
    }
}
BENCHMARK(BM_FactorDeg8);

}  // namespace

int main(int argc, char** argv) {
    benchmark::Initialize(&argc, argv);
    benchmark::RunSpecifiedBenchmarks();
    return 0;
}
