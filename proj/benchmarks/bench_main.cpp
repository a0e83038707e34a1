#include <benchmark/benchmark.h>

#include "pottslab/checks.hpp"
#include "pottslab/dp.hpp"
#include "pottslab/exact.hpp"
#include "pottslab/local_weight.hpp"
#include "pottslab/recursion.hpp"
#include "pottslab/rng.hpp"

using namespace pottslab;

namespace {

struct Fixture {
  RootedTree tree;
  BoundaryCondition bc;
  PottsParams params;
};

Fixture make_fixture(int vertices, int d, double w, std::uint64_t seed) {
  Rng rng(seed);
  RootedTree tree = random_tree(rng, vertices, d);
  BoundaryCondition bc = random_boundary(rng, tree, 3, 0.35);
  return Fixture{std::move(tree), std::move(bc), PottsParams{3, w, d}};
}

void BM_root_marginals_dp(benchmark::State& state) {
  const Fixture f = make_fixture(static_cast<int>(state.range(0)), 4, 0.6, 1);
  for (auto _ : state) benchmark::DoNotOptimize(root_marginals_dp(f.tree, f.bc, f.params));
}
BENCHMARK(BM_root_marginals_dp)->Arg(64)->Arg(1024)->Arg(16384);

void BM_brute_force_partition(benchmark::State& state) {
  const Fixture f = make_fixture(static_cast<int>(state.range(0)), 4, 0.6, 2);
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_partition(f.tree, f.bc, f.params));
}
BENCHMARK(BM_brute_force_partition)->Arg(8)->Arg(11);

void BM_apply_f(benchmark::State& state) {
  const PottsParams p{static_cast<int>(state.range(0)), 0.6, 4};
  Rng rng(3);
  Vec x(p.q);
  for (double& v : x) v = rng.next_range(0.1, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(apply_f(x, p));
}
BENCHMARK(BM_apply_f)->Arg(3)->Arg(8);

void BM_complete_tree_iterate(benchmark::State& state) {
  const PottsParams p{3, 0.93, 29};
  const RatioVector leaf = RatioVector::basis(3, 0);
  for (auto _ : state)
    benchmark::DoNotOptimize(complete_tree_iterate(p, leaf, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_complete_tree_iterate)->Arg(40)->Arg(400);

void BM_local_weight(benchmark::State& state) {
  Rng rng(4);
  const int q = 3;
  Vec x(q), y(q);
  for (int i = 0; i < q; ++i) {
    x[i] = rng.next_range(0.3, 1.0);
    y[i] = rng.next_range(0.3, 1.0);
  }
  const Segment seg{SqrtRatioVector{x}, SqrtRatioVector{y}};
  const PottsParams p{q, 0.6, 4};
  for (auto _ : state) benchmark::DoNotOptimize(local_weight(seg, p));
}
BENCHMARK(BM_local_weight);

void BM_verify_norm_bound(benchmark::State& state) {
  Rng rng(5);
  const PottsParams p{3, 0.6, 5};
  const PairedInstance inst = random_paired_instance(rng, p, PairedInstanceOptions{});
  for (auto _ : state) benchmark::DoNotOptimize(verify_norm_bound(inst, p));
}
BENCHMARK(BM_verify_norm_bound);

}  // namespace

BENCHMARK_MAIN();
