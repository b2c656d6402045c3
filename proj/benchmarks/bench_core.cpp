#include <benchmark/benchmark.h>

#include "gasket/experiments.hpp"
#include "gasket/tensor.hpp"

using namespace gasket;

static void BM_BuildLattice(benchmark::State& state) {
    int g = (int)state.range(0);
    for (auto _ : state) {
        Lattice lat = Lattice::build(g);
        benchmark::DoNotOptimize(lat.vertex_count());
    }
}
BENCHMARK(BM_BuildLattice)->Arg(3)->Arg(5)->Arg(6);

static void BM_SystemRank(benchmark::State& state) {
    int g = (int)state.range(0);
    Lattice lat = Lattice::build(g);
    for (auto _ : state) {
        GF2System sys(lat, zero_syndrome(lat));
        benchmark::DoNotOptimize(sys.rank());
    }
}
BENCHMARK(BM_SystemRank)->Arg(3)->Arg(5)->Arg(6);

static void BM_CountWithAssignment(benchmark::State& state) {
    Lattice lat = Lattice::build((int)state.range(0));
    GF2System sys(lat, zero_syndrome(lat));
    for (auto _ : state) {
        auto c = sys.count_with_assignment({{0, 1}, {4, 2}});
        benchmark::DoNotOptimize(c.log2);
    }
}
BENCHMARK(BM_CountWithAssignment)->Arg(3)->Arg(4)->Arg(5);

static void BM_MatrixElement(benchmark::State& state) {
    Lattice lat = Lattice::build(3);
    CosetState psi = make_psi_state(lat);
    LocalOperator a = LocalOperator::dyad({0}, 1, 1);
    LocalOperator b = LocalOperator::dyad({13}, 2, 2);
    LocalOperator ab = tensor_product(a, b);
    for (auto _ : state) {
        auto v = matrix_element(psi, ab, psi);
        benchmark::DoNotOptimize(v.a);
    }
}
BENCHMARK(BM_MatrixElement);

static void BM_ContractNetwork(benchmark::State& state) {
    Lattice lat = Lattice::build(2);
    for (auto _ : state) {
        SparseState s = contract_network(lat);
        benchmark::DoNotOptimize(s.term_count());
    }
}
BENCHMARK(BM_ContractNetwork);

static void BM_Canonicalize(benchmark::State& state) {
    Lattice lat = Lattice::build((int)state.range(0));
    GF2System psi(lat, zero_syndrome(lat));
    Configuration c = psi.sample_solution(11);
    for (auto _ : state) {
        auto r = canonicalize(lat, c, true);
        benchmark::DoNotOptimize(r.forms.size());
    }
}
BENCHMARK(BM_Canonicalize)->Arg(3)->Arg(5);

static void BM_Enumerate4096(benchmark::State& state) {
    Lattice lat = Lattice::build(2);
    GF2System sys(lat, zero_syndrome(lat));
    for (auto _ : state) {
        long long n = 0;
        sys.enumerate_solutions([&](const Configuration&) { ++n; });
        benchmark::DoNotOptimize(n);
    }
}
BENCHMARK(BM_Enumerate4096);

BENCHMARK_MAIN();
