#include <benchmark/benchmark.h>

#include <random>

#include "semiprox/baselines.hpp"
#include "semiprox/problems/toy.hpp"
#include "semiprox/proxnewton.hpp"

using namespace semiprox;

static void BM_AssembleInnerProduct(benchmark::State& state) {
  const hilbert::Mesh mesh(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto ip = hilbert::assemble_inner_product(mesh);
    benchmark::DoNotOptimize(ip.matrix().nonZeros());
  }
  state.counters["dofs"] = static_cast<double>(mesh.num_dofs());
}
BENCHMARK(BM_AssembleInnerProduct)->DenseRange(3, 7)->Unit(benchmark::kMillisecond);

// one damped step subproblem of the toy problem at a random iterate
static void BM_ScaledProx(benchmark::State& state) {
  const CompositeProblem p = problems::make_toy_problem(
      {.alpha = 40.0, .refinement_level = static_cast<int>(state.range(0))});
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-0.05, 0.05);
  Eigen::VectorXd v(p.size());
  for (auto& x : v) x = u(rng);
  const LocalModel model = linearize(p, PrimalVector(v));
  int cycles = 0;
  for (auto _ : state) {
    const SecondOrderForm damped = model.hessian.plus(1.0, p.ip->matrix());
    const ProxSubproblem sp{damped, damped.apply(model.x) - model.gradient, p.nonsmooth, *p.ip};
    const ProxResult r = solve_scaled_prox(sp, model.x);
    cycles = r.cycles;
    benchmark::DoNotOptimize(r.y.values().data());
  }
  state.counters["cycles"] = cycles;
}
BENCHMARK(BM_ScaledProx)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);

static void BM_ProxNewtonSolve(benchmark::State& state) {
  const CompositeProblem p = problems::make_toy_problem(
      {.alpha = static_cast<double>(state.range(1)), .refinement_level = static_cast<int>(state.range(0))});
  int accepted = 0;
  for (auto _ : state) {
    const SolveResult r = solve(p, PrimalVector::zero(p.size()));
    accepted = r.accepted_count();
    benchmark::DoNotOptimize(r.x_final.values().data());
  }
  state.counters["N"] = accepted;
}
BENCHMARK(BM_ProxNewtonSolve)->ArgsProduct({{4, 5, 6}, {0, 80}})->Unit(benchmark::kMillisecond);

static void BM_FirstOrderSolve(benchmark::State& state) {
  const CompositeProblem p = problems::make_toy_problem({.refinement_level = 4});
  int accepted = 0;
  for (auto _ : state) {
    const SolveResult r = state.range(0) == 0 ? prox_gradient_solve(p, PrimalVector::zero(p.size()))
                                              : fista_solve(p, PrimalVector::zero(p.size()));
    accepted = r.accepted_count();
    benchmark::DoNotOptimize(r.x_final.values().data());
  }
  state.counters["N"] = accepted;
}
BENCHMARK(BM_FirstOrderSolve)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
