#include <benchmark/benchmark.h>

#include <random>

#include <Eigen/Dense>

#include <conicstab/combinatorics.hpp>
#include <conicstab/polynomial.hpp>
#include <conicstab/stability.hpp>
#include <conicstab/symmetric.hpp>

using namespace conicstab;

namespace {

Polynomial dense_poly(int nvars, int terms, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    Polynomial f(nvars);
    for (int k = 0; k < terms; ++k) {
        ExponentVec e(nvars);
        for (auto& x : e) x = static_cast<int>(rng() % 3);
        f += Polynomial::monomial(nvars, e, Complex(u(rng), u(rng)));
    }
    return f;
}

void BM_PolynomialMultiply(benchmark::State& state) {
    Polynomial a = dense_poly(4, 24, 11u);
    Polynomial b = dense_poly(4, 24, 12u);
    for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_PolynomialMultiply);

void BM_SymbolicDeterminant(benchmark::State& state) {
    const int order = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(symbolic_determinant(order));
}
BENCHMARK(BM_SymbolicDeterminant)->Arg(3)->Arg(4)->Arg(5);

void BM_RestrictionRoots(benchmark::State& state) {
    SymVarSpace s(4);
    Polynomial det4 = symbolic_determinant(4);
    detail::TrialRng rng(7u, 0u);
    auto sample = sample_interior(ConeSpec::psd(4), rng);
    std::vector<Complex> base(s.var_count());
    std::vector<double> dir(s.var_count());
    for (int k = 0; k < s.var_count(); ++k) {
        base[k] = Complex(rng.normal(), 0.0);
        dir[k] = sample.point[k];
    }
    for (auto _ : state) {
        auto coeffs = det4.univariate_restriction(
            std::vector<double>(s.var_count(), 0.5), dir);
        benchmark::DoNotOptimize(univariate_roots(coeffs));
    }
}
BENCHMARK(BM_RestrictionRoots);

void BM_PsdFalsifier(benchmark::State& state) {
    SymVarSpace s(3);
    Polynomial det3 = symbolic_determinant(3);
    FalsifierOptions opt;
    opt.trials = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(check_psd_stability(det3, s, opt));
}
BENCHMARK(BM_PsdFalsifier)->Arg(50)->Arg(200);

void BM_JumpSystemCheck(benchmark::State& state) {
    Polynomial det4 = symbolic_determinant(4);
    SupportSet support = det4.support();
    for (auto _ : state) benchmark::DoNotOptimize(is_jump_system(support));
}
BENCHMARK(BM_JumpSystemCheck);

void BM_InversionImage(benchmark::State& state) {
    const int order = static_cast<int>(state.range(0));
    SymVarSpace s(order);
    Polynomial det = symbolic_determinant(order);
    for (auto _ : state) benchmark::DoNotOptimize(inversion_image(det, s));
}
BENCHMARK(BM_InversionImage)->Arg(2)->Arg(3);

}  // namespace

BENCHMARK_MAIN();
