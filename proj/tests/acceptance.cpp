// Runs the ten acceptance criteria at their stated sizes and tolerances and
// prints one PASS/FAIL line per criterion. Exit status is nonzero if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "sperner_epi/entropy.hpp"
#include "sperner_epi/errors.hpp"
#include "sperner_epi/poset.hpp"
#include "sperner_epi/random.hpp"
#include "sperner_epi/verify.hpp"

using namespace sepi;

namespace {

using Clock = std::chrono::steady_clock;

constexpr std::uint64_t kSeed = 20240601;
constexpr double kTolerance = 1e-9;

const std::vector<RenyiOrder> kConsistencyOrders{RenyiOrder::zero(), RenyiOrder::finite(0.5), RenyiOrder::one(),
	RenyiOrder::finite(2), RenyiOrder::infinity()};
const std::vector<std::vector<int>> kMain2Vectors{{1, 1, 1}, {2, 1, 1}, {2, 2, 1}};

struct Outcome {
	bool ok = false;
	std::string detail;
};

// Majorization-passing instances from criteria 1-6, re-checked by criterion 9.
struct ConsistencyPool {
	std::vector<std::vector<IntegerPmf>> hash_instances;
	bool main2_swept = false;
};

ConsistencyPool g_pool;

std::vector<IntegerPmf> indicators(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
	return {IntegerPmf::indicator(a), IntegerPmf::indicator(b)};
}

Outcome criterion1() {
	const Main1SweepConfig cfg;
	const auto instances = main1_instances(cfg);
	const auto s = sweep_main1(cfg);
	for(std::size_t i = 0; i < s.reports.size(); ++i) {
		if(s.reports[i].passed()) {
			g_pool.hash_instances.push_back(instances[i]);
		}
	}
	std::ostringstream os;
	os << s.passes << "/" << s.instances << " random instances majorized exactly (seed " << cfg.seed << ")";
	return {s.instances == 1000 && s.fails == 0, os.str()};
}

Outcome criterion2() {
	const auto s = sweep_sets(0, 7);
	std::size_t i = 0;
	std::vector<std::vector<std::int64_t>> subsets;
	for(std::uint32_t mask = 1; mask < 256; ++mask) {
		std::vector<std::int64_t> set;
		for(int x = 0; x < 8; ++x) {
			if((mask >> x) & 1U) {
				set.push_back(x);
			}
		}
		subsets.push_back(set);
	}
	for(const auto& a : subsets) {
		for(const auto& b : subsets) {
			if(i < s.reports.size() && s.reports[i].passed()) {
				g_pool.hash_instances.push_back(indicators(a, b));
			}
			++i;
		}
	}
	std::ostringstream os;
	os << s.passes << "/" << s.instances << " ordered subset pairs of {0..7} majorized exactly";
	return {s.instances == 255 * 255 && s.fails == 0, os.str()};
}

Outcome criterion3() {
	bool ok = true;
	for(int m = 1; m <= 10; ++m) {
		const auto p = build_M(m);
		// Coefficients of Π (1 + q^i), computed here by direct polynomial multiplication.
		std::vector<std::int64_t> c{1};
		for(int i = 1; i <= m; ++i) {
			std::vector<std::int64_t> next(c.size() + static_cast<std::size_t>(i), 0);
			for(std::size_t j = 0; j < c.size(); ++j) {
				next[j] += c[j];
				next[j + static_cast<std::size_t>(i)] += c[j];
			}
			c = next;
		}
		std::vector<Rational> expected;
		for(auto x : c) {
			expected.emplace_back(static_cast<long>(x));
		}
		ok = ok && p.size() == (std::size_t{1} << m) && p.whitney() == expected;
	}
	std::vector<Rational> m5;
	for(long x : {1, 1, 1, 2, 2, 3, 3, 3, 3, 3, 3, 2, 2, 1, 1, 1}) {
		m5.emplace_back(x);
	}
	ok = ok && build_M(5).whitney() == m5;
	return {ok, "M(m) profiles equal the coefficients of prod(1+q^i) for m <= 10; |M(m)| = 2^m; M(5) profile matches"};
}

Outcome criterion4() {
	bool ok = true;
	std::ostringstream os;
	for(int m = 1; m <= 4; ++m) {
		const bool peck = is_peck(build_M(m));
		ok = ok && peck;
		os << "M(" << m << ") peck=" << peck << "; ";
	}
	const std::vector<int> mm{2, 2};
	const bool prod = is_peck(m_product(mm));
	const auto b4 = max_k_family_weight(boolean_lattice(4), 1);
	os << "M(2)xM(2) peck=" << prod << "; B_4 max antichain=" << b4 << " (budget " << kDefaultSearchBudget
	   << " elements)";
	return {ok && prod && b4 == 6, os.str()};
}

Outcome criterion5() {
	const auto s = sweep_main2(8, kMain2Vectors);
	if(s.fails == 0) {
		g_pool.main2_swept = true;
	}
	std::ostringstream os;
	os << s.passes << "/" << s.instances << " weight triples x m-vectors (1,1,1),(2,1,1),(2,2,1) majorized exactly";
	return {s.instances == 56 * 3 && s.fails == 0, os.str()};
}

Outcome criterion6() {
	const auto r3 = check_corollary_erdos_moser(3, 1, 8);
	const auto r5 = check_corollary_erdos_moser(5, 1, 5);
	const auto& d3 = *r3.details;
	const bool attained = d3.at("max_point_probability") == "1/4" && d3.at("argmax_weights") == nlohmann::json{1, 2, 3} &&
		d3.at("argmax_k") == 3 && d3.at("midpoint") == 3;
	const bool n5 = r5.passed() && r5.details->at("bound") == "3/32" && r5.details->at("max_point_probability") == "3/32";
	std::ostringstream os;
	os << "N=3: " << d3.at("weight_sets_checked").get<std::size_t>() << " weight sets, max point probability "
	   << d3.at("max_point_probability").get<std::string>() << " at k=" << d3.at("argmax_k")
	   << "; N=5 canonical max " << r5.details->at("max_point_probability").get<std::string>();
	return {r3.passed() && attained && n5, os.str()};
}

Outcome criterion7() {
	const std::vector<RenyiOrder> orders{RenyiOrder::one(), RenyiOrder::finite(1.5), RenyiOrder::finite(2),
		RenyiOrder::finite(3), RenyiOrder::finite(10)};
	std::vector<std::pair<int, int>> grid;
	for(int n = 1; n <= 50; ++n) {
		for(int m = 1; m <= n; ++m) {
			grid.emplace_back(n, m);
		}
	}
	std::vector<int> fails(grid.size(), 0);
	std::vector<int> sharp_fails(grid.size(), 0);
#pragma omp parallel for schedule(dynamic)
	for(std::int64_t i = 0; i < static_cast<std::int64_t>(grid.size()); ++i) {
		const auto [n, m] = grid[static_cast<std::size_t>(i)];
		for(const auto& o : orders) {
			const auto rec = uniform_epi_evaluate(n, m, o, kTolerance);
			if(!rec.verdict) {
				++fails[static_cast<std::size_t>(i)];
			}
			if(m == 1 && abs(rec.margin) > kTolerance) {
				++sharp_fails[static_cast<std::size_t>(i)];
			}
		}
	}
	int f = 0;
	int sf = 0;
	for(std::size_t i = 0; i < grid.size(); ++i) {
		f += fails[i];
		sf += sharp_fails[i];
	}
	std::ostringstream os;
	os << grid.size() * orders.size() << " (n, m, order) cases, " << f << " violations, " << sf
	   << " non-sharp m=1 cases (tolerance 1e-9)";
	return {f == 0 && sf == 0, os.str()};
}

Outcome criterion8() {
	Engine rng = make_engine(kSeed, 8);
	int fails = 0;
	int not_carry_free = 0;
	const int pairs = 200;
	for(int t = 0; t < pairs; ++t) {
		auto draw = [&] {
			std::vector<LatticePoint> pts;
			const auto size = uniform_draw(rng, 1, 6);
			while(static_cast<std::int64_t>(pts.size()) < size) {
				LatticePoint z{uniform_draw(rng, 0, 3), uniform_draw(rng, 0, 3)};
				if(std::find(pts.begin(), pts.end(), z) == pts.end()) {
					pts.push_back(z);
				}
			}
			return LatticePmf::uniform(pts);
		};
		const auto a = draw();
		const auto b = draw();
		for(const auto& o : {RenyiOrder::one(), RenyiOrder::finite(2)}) {
			const auto rec = lattice_epi_evaluate(a, b, o, kTolerance);
			fails += rec.inequality.verdict ? 0 : 1;
			not_carry_free += rec.carry_free ? 0 : 1;
		}
	}
	std::ostringstream os;
	os << pairs << " random pairs in {0..3}^2 at orders 1, 2: " << fails << " violations, " << not_carry_free
	   << " embeddings not carry-free";
	return {fails == 0 && not_carry_free == 0, os.str()};
}

Outcome criterion9() {
	std::vector<int> violations(g_pool.hash_instances.size(), 0);
#pragma omp parallel for schedule(dynamic)
	for(std::int64_t i = 0; i < static_cast<std::int64_t>(g_pool.hash_instances.size()); ++i) {
		const auto rep = check_prop_entropy_hash(g_pool.hash_instances[static_cast<std::size_t>(i)],
			kConsistencyOrders, kTolerance);
		if(!rep.passed()) {
			violations[static_cast<std::size_t>(i)] = 1;
		}
	}
	std::size_t checked = g_pool.hash_instances.size();
	std::size_t bad = 0;
	for(int v : violations) {
		bad += static_cast<std::size_t>(v);
	}
	if(g_pool.main2_swept) {
		const auto s = sweep_entropy_main2(8, kMain2Vectors, kConsistencyOrders, kTolerance);
		checked += s.instances;
		bad += s.fails;
	}
	std::ostringstream os;
	os << checked << " majorization passes from criteria 1, 2, 5 re-checked at orders 0, 1/2, 1, 2, inf: " << bad
	   << " entropy violations";
	return {g_pool.main2_swept && checked == 1000 + 255 * 255 + 168 && bad == 0, os.str()};
}

Outcome criterion10() {
	int posets = 0;
	int bad = 0;
	Engine rng = make_engine(kSeed, 10);
	for(int n1 = 1; n1 <= 4; ++n1) {
		for(int n2 = 1; n2 <= 4; ++n2) {
			for(int rep = 0; rep < 2; ++rep) {
				const auto w1 = random_hash_log_concave(n1 + 1, 1, 8, rng()).mass();
				const auto w2 = random_hash_log_concave(n2 + 1, 1, 8, rng()).mass();
				if(!is_log_concave(w1) || !is_log_concave(w2)) {
					++bad;
					continue;
				}
				const auto s = product(chain(w1), chain(w2));
				const bool ok = is_normal(s) && is_strongly_sperner(s);
				++posets;
				bad += ok ? 0 : 1;
			}
		}
	}
	std::ostringstream os;
	os << posets << " weighted S(n1,n2), n_i <= 4: " << bad << " not normal or not strongly Sperner";
	return {bad == 0 && posets == 32, os.str()};
}

struct Criterion {
	int id;
	const char* name;
	double limit_seconds;  // 0 for no runtime bound
	std::function<Outcome()> run;
};

}  // namespace

int main() {
	const std::vector<Criterion> criteria{
		{1, "main1 random sweep", 30, criterion1},
		{2, "subset sumset exhaustive", 60, criterion2},
		{3, "M(m) structure", 5, criterion3},
		{4, "Peck certification", 120, criterion4},
		{5, "main2 exhaustive", 60, criterion5},
		{6, "Erdos-Moser bound", 60, criterion6},
		{7, "uniform EPI grid", 60, criterion7},
		{8, "lattice EPI", 60, criterion8},
		{9, "majorization/entropy consistency", 0, criterion9},
		{10, "normality closure", 120, criterion10},
	};
	int failed = 0;
	for(const auto& c : criteria) {
		const auto start = Clock::now();
		Outcome out;
		try {
			out = c.run();
		} catch(const std::exception& e) {
			out = {false, std::string("exception: ") + e.what()};
		}
		const double secs = std::chrono::duration<double>(Clock::now() - start).count();
		const bool in_time = c.limit_seconds == 0 || secs < c.limit_seconds;
		const bool ok = out.ok && in_time;
		failed += ok ? 0 : 1;
		char timing[64];
		if(c.limit_seconds > 0) {
			std::snprintf(timing, sizeof timing, "%.2f s, limit %.0f s", secs, c.limit_seconds);
		} else {
			std::snprintf(timing, sizeof timing, "%.2f s", secs);
		}
		std::cout << "criterion " << c.id << " " << (ok ? "PASS" : "FAIL") << "  " << c.name << ": " << out.detail
				  << " [" << timing << (in_time ? "" : ", over time") << "]" << std::endl;
	}
	std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
	return failed == 0 ? 0 : 1;
}
