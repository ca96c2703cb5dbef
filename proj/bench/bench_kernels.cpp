#include <benchmark/benchmark.h>

#include "sperner_epi/entropy.hpp"
#include "sperner_epi/poset.hpp"
#include "sperner_epi/verify.hpp"

using namespace sepi;

namespace {

Execution exec_of(const benchmark::State& state) {
	return state.range(0) == 0 ? Execution::serial : Execution::parallel;
}

void label(benchmark::State& state) {
	state.SetLabel(state.range(0) == 0 ? "serial" : "parallel");
}

void BM_SweepSets(benchmark::State& state) {
	for(auto _ : state) {
		benchmark::DoNotOptimize(sweep_sets(0, 6, exec_of(state)).passes);
	}
	label(state);
}

void BM_SweepMain1(benchmark::State& state) {
	Main1SweepConfig cfg;
	cfg.trials = 500;
	for(auto _ : state) {
		benchmark::DoNotOptimize(sweep_main1(cfg, exec_of(state)).passes);
	}
	label(state);
}

void BM_SweepEntropyMain2(benchmark::State& state) {
	const std::vector<std::vector<int>> ms{{1, 1, 1}, {2, 2, 1}};
	const auto orders = parse_orders("0,0.5,1,2,inf");
	for(auto _ : state) {
		benchmark::DoNotOptimize(sweep_entropy_main2(8, ms, orders, kDefaultTolerance, exec_of(state)).passes);
	}
	label(state);
}

// Weighted S(4,4): 25 elements, the largest instance under the default budget.
void BM_KFamilyChainProduct(benchmark::State& state) {
	std::vector<Rational> w1{1, 3, 4, 3, 1};
	std::vector<Rational> w2{2, 5, 6, 4, 1};
	const auto p = product(chain(w1), chain(w2));
	for(auto _ : state) {
		for(int k = 1; k <= p.rank_count(); ++k) {
			benchmark::DoNotOptimize(max_k_family_weight(p, k, exec_of(state)));
		}
	}
	label(state);
}

void BM_KFamilyBoolean(benchmark::State& state) {
	const auto b = boolean_lattice(4);
	const auto m = build_M(4);
	for(auto _ : state) {
		benchmark::DoNotOptimize(is_strongly_sperner(b, exec_of(state)));
		benchmark::DoNotOptimize(is_strongly_sperner(m, exec_of(state)));
	}
	label(state);
}

}  // namespace

BENCHMARK(BM_SweepSets)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepMain1)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepEntropyMain2)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_KFamilyChainProduct)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_KFamilyBoolean)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
