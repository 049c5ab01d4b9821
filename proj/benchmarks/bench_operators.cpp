// Copyright 2026 The ltl Authors
// SPDX-License-Identifier: Apache-2.0

#include <ltl/diffusion.hpp>
#include <ltl/generators.hpp>
#include <ltl/highorder.hpp>
#include <ltl/operator.hpp>
#include <ltl/spectral.hpp>

#include <benchmark/benchmark.h>

#include <vector>

namespace {

// Edge lengths indexed by the benchmark argument, coarse to fine.
constexpr double edges[] = {0.16, 0.08, 0.04};

const ltl::TriMesh& sphere(int level)
{
    static const std::vector<ltl::TriMesh> meshes = [] {
        std::vector<ltl::TriMesh> out;
        for (double h : edges) out.push_back(ltl::generate_mesh(ltl::SurfaceKind::sphere, {}, h));
        return out;
    }();
    return meshes.at(static_cast<std::size_t>(level));
}

void BM_AssembleFirstOrder(benchmark::State& state)
{
    const ltl::TriMesh& m = sphere(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(ltl::assemble_laplacian(m, {2, 5}));
    state.counters["vertices"] = m.num_vertices();
    state.SetItemsProcessed(state.iterations() * m.num_vertices());
}
BENCHMARK(BM_AssembleFirstOrder)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

void BM_AssembleHighOrder(benchmark::State& state)
{
    const ltl::TriMesh& m = sphere(1);
    const int degree = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(ltl::assemble_highorder_laplacian(m, degree, ltl::default_jet_spec(degree)));
    state.SetItemsProcessed(state.iterations() * m.num_vertices());
}
BENCHMARK(BM_AssembleHighOrder)->Arg(2)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_HeightJet(benchmark::State& state)
{
    const ltl::TriMesh& m = sphere(1);
    const int degree = static_cast<int>(state.range(0));
    const ltl::NeighborhoodSpec spec = ltl::default_jet_spec(degree);
    int v = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(ltl::fit_height(m, v, degree, spec));
        v = (v + 1) % m.num_vertices();
    }
}
BENCHMARK(BM_HeightJet)->DenseRange(2, 6, 2);

void BM_Eigenpairs(benchmark::State& state)
{
    const ltl::SparseOperator op = ltl::assemble_laplacian(sphere(static_cast<int>(state.range(0))), {2, 5});
    for (auto _ : state) benchmark::DoNotOptimize(ltl::eigenpairs(op, 16));
    state.counters["dim"] = op.dim();
}
BENCHMARK(BM_Eigenpairs)->DenseRange(0, 1)->Unit(benchmark::kMillisecond);

void BM_ImplicitStep(benchmark::State& state)
{
    const ltl::TriMesh& m = sphere(1);
    const ltl::SparseOperator op = ltl::assemble_laplacian(m, {2, 5});
    std::vector<double> u(static_cast<std::size_t>(op.dim()));
    for (int i = 0; i < m.num_vertices(); ++i) u[static_cast<std::size_t>(i)] = m.vertex(i).z();
    const std::vector<double> f(u.size(), 0.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(ltl::diffusion_solve(op, u, f, 0.01, 10, ltl::TimeScheme::implicit_euler));
}
BENCHMARK(BM_ImplicitStep)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
