#include <benchmark/benchmark.h>

#include <random>

#include "maxleak/leakage.hpp"
#include "maxleak/lz78.hpp"
#include "maxleak/presets.hpp"
#include "maxleak/scheme.hpp"

using namespace maxleak;

namespace {

Sequence random_sequence(uint32_t alpha, size_t n, uint64_t seed) {
  std::mt19937_64 rng(seed);
  Sequence x;
  x.alpha = alpha;
  x.symbols.reserve(n);
  for (size_t i = 0; i < n; ++i) x.symbols.push_back(uint32_t(rng() % alpha));
  return x;
}

void BM_Parse(benchmark::State& state) {
  Sequence x = random_sequence(2, size_t(state.range(0)), 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(lz78::parse(x));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Parse)->Arg(1 << 10)->Arg(1 << 14)->Arg(1 << 18);

void BM_EncodeDecode(benchmark::State& state) {
  Sequence x = random_sequence(2, size_t(state.range(0)), 2);
  for (auto _ : state) {
    Bitstring body = lz78::encode_body(x);
    benchmark::DoNotOptimize(lz78::decode_body(body, 2, x.size()));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EncodeDecode)->Arg(1 << 10)->Arg(1 << 14);

void BM_SchemeEncrypt(benchmark::State& state) {
  Sequence x = random_sequence(2, size_t(state.range(0)), 3);
  scheme::SchemeConfig cfg{scheme::Rational{1, 4}, 2,
                           scheme::Compressor::capped_lz78, false};
  for (auto _ : state) {
    scheme::KeySource key = scheme::KeySource::seeded(7);
    benchmark::DoNotOptimize(scheme::encrypt(x, cfg, key));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SchemeEncrypt)->Arg(1 << 10)->Arg(1 << 14);

void BM_InducedChannel(benchmark::State& state) {
  auto spec = presets::toggle_machine();
  size_t n = size_t(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(leakage::induced_channel(spec, n));
  }
}
BENCHMARK(BM_InducedChannel)->Arg(4)->Arg(6)->Arg(8);

void BM_SchemeChannelLeakage(benchmark::State& state) {
  scheme::SchemeConfig cfg{scheme::Rational{1, 2}, 2,
                           scheme::Compressor::capped_lz78, false};
  size_t n = size_t(state.range(0));
  for (auto _ : state) {
    auto ch = leakage::scheme_channel(cfg, n);
    benchmark::DoNotOptimize(leakage::maximal_leakage(ch));
  }
}
BENCHMARK(BM_SchemeChannelLeakage)->Arg(6)->Arg(8);

}  // namespace

BENCHMARK_MAIN();
