#include <benchmark/benchmark.h>

#include <random>

#include "wdist/exponential_sums.hpp"
#include "wdist/quadratic_forms.hpp"
#include "wdist/weight_distribution.hpp"

using namespace wdist;

namespace {

void BM_FieldMul(benchmark::State& state) {
  const auto ctx = FieldCtx::make(static_cast<std::uint32_t>(state.range(0)), static_cast<std::uint32_t>(state.range(1)));
  std::mt19937 rng(1);
  std::uniform_int_distribution<std::uint32_t> pick(0, ctx.size() - 1);
  std::vector<Element> xs(1024);
  for (auto& x : xs) x = Element{pick(rng)};
  Element acc = ctx.one();
  std::size_t i = 0;
  for (auto _ : state) {
    acc = ctx.add(ctx.mul(acc, xs[i++ & 1023]), ctx.one());
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_FieldMul)->Args({3, 3})->Args({3, 6})->Args({5, 6})->Args({3, 12});

void BM_TransformPerPair(benchmark::State& state) {
  const auto p = static_cast<std::uint32_t>(state.range(0)), n = static_cast<std::uint32_t>(state.range(1));
  const auto params = validate_params(p, n, static_cast<std::int64_t>(state.range(2)));
  const auto ctx = FieldCtx::make(p, n);
  FormEvaluator evaluator(params, ctx);
  EpsilonTransform transform(evaluator);
  std::uint32_t g = 1;
  for (auto _ : state) {
    auto out = transform.run(Element{g}, Element{(g * 7) % ctx.size()});
    benchmark::DoNotOptimize(out.data());
    g = g % (ctx.size() - 1) + 1;
  }
}
BENCHMARK(BM_TransformPerPair)->Args({3, 3, 1})->Args({5, 3, 1})->Args({3, 5, 1})->Args({3, 6, 2});

void BM_KernelDim(benchmark::State& state) {
  const auto p = static_cast<std::uint32_t>(state.range(0)), n = static_cast<std::uint32_t>(state.range(1));
  const auto params = validate_params(p, n, static_cast<std::int64_t>(state.range(2)));
  const auto ctx = FieldCtx::make(p, n);
  std::uint32_t g = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernel_dim_m(params, ctx, {Element{g}, Element{(g * 5) % ctx.size()}}));
    g = g % (ctx.size() - 1) + 1;
  }
}
BENCHMARK(BM_KernelDim)->Args({3, 3, 1})->Args({3, 6, 2})->Args({3, 9, 3});

void BM_Enumerate(benchmark::State& state) {
  const auto params = validate_params(3, 3, 1);
  const auto ctx = FieldCtx::make(3, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(empirical_weight_distribution(params, ctx, WeightMethod::Enumerate));
  }
}
BENCHMARK(BM_Enumerate)->Unit(benchmark::kMillisecond);

void BM_TransformSweep(benchmark::State& state) {
  const auto params = validate_params(5, 3, 1);
  const auto ctx = FieldCtx::make(5, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(empirical_weight_distribution(params, ctx, WeightMethod::Transform));
  }
}
BENCHMARK(BM_TransformSweep)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
