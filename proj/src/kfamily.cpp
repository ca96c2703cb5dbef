// Exact maximum-weight k-family search.
//
// A subset is a union of at most k antichains iff it contains no chain of
// k + 1 elements. Elements are visited in rank order, so when an element is
// added the longest chain ending at it is 1 + the longest chain ending at any
// chosen element below it. Branches are cut when the chosen weight plus an
// upper bound on the rest cannot beat the incumbent, which starts at the sum of
// the k largest Whitney numbers (a union of k rank levels is always a k-family).
//
// The upper bound for the undecided suffix uses a fixed chain partition: a
// k-family meets every chain in at most k elements, so each chain contributes
// at most its k heaviest undecided elements.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <vector>

#include <omp.h>

#include "sperner_epi/errors.hpp"
#include "sperner_epi/poset.hpp"

namespace sepi {

namespace {

using Mask = std::uint64_t;

// Number of leading decisions enumerated up front by the parallel kernel.
constexpr std::size_t kSplitDepth = 10;

template <typename W>
struct SearchProblem {
	std::size_t n = 0;
	int k = 0;
	std::vector<W> weight;        // by position in rank order
	std::vector<Mask> below;      // strictly-below elements, as position masks
	std::vector<W> suffix_bound;  // bound on any k-family inside positions [t, n)
	W lower_bound{};
};

template <typename W>
class BranchAndBound {
public:
	explicit BranchAndBound(const SearchProblem<W>& prob) : prob_(prob), chain_len_(prob.n, 0), best_(prob.lower_bound) {}

	// Explores every completion of a fixed prefix of decisions.
	void run_from(std::size_t start, Mask chosen, const W& current) {
		for(std::size_t t = 0; t < start; ++t) {
			if((chosen >> t) & 1U) {
				chain_len_[t] = longest_below(t, chosen) + 1;
			}
		}
		dfs(start, chosen, current);
	}

	const W& best() const { return best_; }

	// Checks that a prefix decision vector is itself chain-free.
	bool prefix_feasible(std::size_t depth, Mask chosen) {
		for(std::size_t t = 0; t < depth; ++t) {
			if((chosen >> t) & 1U) {
				chain_len_[t] = longest_below(t, chosen) + 1;
				if(chain_len_[t] > prob_.k) {
					return false;
				}
			}
		}
		return true;
	}

private:
	int longest_below(std::size_t t, Mask chosen) const {
		int best = 0;
		for(Mask m = prob_.below[t] & chosen; m != 0; m &= m - 1) {
			best = std::max(best, chain_len_[static_cast<std::size_t>(__builtin_ctzll(m))]);
		}
		return best;
	}

	void dfs(std::size_t t, Mask chosen, const W& current) {
		if(t == prob_.n) {
			if(current > best_) {
				best_ = current;
			}
			return;
		}
		if(current + prob_.suffix_bound[t] <= best_) {
			return;
		}
		const int len = longest_below(t, chosen) + 1;
		if(len <= prob_.k) {
			chain_len_[t] = len;
			dfs(t + 1, chosen | (Mask{1} << t), current + prob_.weight[t]);
		}
		dfs(t + 1, chosen, current);
	}

	const SearchProblem<W>& prob_;
	std::vector<int> chain_len_;
	W best_;
};

// Greedy chain partition: repeatedly peel off a heaviest-first longest chain.
std::vector<std::vector<std::size_t>> chain_partition(const WeightedPoset& p, const std::vector<std::size_t>& order) {
	const std::size_t n = order.size();
	std::vector<bool> used(n, false);
	std::vector<std::vector<std::size_t>> chains;
	std::size_t remaining = n;
	while(remaining > 0) {
		std::vector<int> len(n, 0);
		std::vector<std::ptrdiff_t> prev(n, -1);
		std::size_t end = n;
		for(std::size_t t = 0; t < n; ++t) {
			if(used[t]) {
				continue;
			}
			len[t] = 1;
			for(std::size_t s = 0; s < t; ++s) {
				if(!used[s] && p.above(order[s])[order[t]] && len[s] + 1 > len[t]) {
					len[t] = len[s] + 1;
					prev[t] = static_cast<std::ptrdiff_t>(s);
				}
			}
			if(end == n || len[t] > len[end]) {
				end = t;
			}
		}
		std::vector<std::size_t> c;
		for(auto t = static_cast<std::ptrdiff_t>(end); t >= 0; t = prev[static_cast<std::size_t>(t)]) {
			c.push_back(static_cast<std::size_t>(t));
			used[static_cast<std::size_t>(t)] = true;
			--remaining;
		}
		chains.push_back(std::move(c));
	}
	return chains;
}

template <typename W>
SearchProblem<W> make_problem(const WeightedPoset& p, int k, const std::vector<std::size_t>& order,
	const std::vector<W>& weight_by_element, const W& lower_bound) {
	SearchProblem<W> prob;
	prob.n = order.size();
	prob.k = k;
	prob.lower_bound = lower_bound;
	std::vector<std::size_t> pos(prob.n);
	for(std::size_t t = 0; t < prob.n; ++t) {
		pos[order[t]] = t;
		prob.weight.push_back(weight_by_element[order[t]]);
	}
	prob.below.assign(prob.n, 0);
	for(std::size_t t = 0; t < prob.n; ++t) {
		const auto& b = p.below(order[t]);
		for(auto e = b.find_first(); e != boost::dynamic_bitset<>::npos; e = b.find_next(e)) {
			prob.below[t] |= Mask{1} << pos[e];
		}
	}

	const auto chains = chain_partition(p, order);
	prob.suffix_bound.assign(prob.n + 1, W{});
	for(std::size_t t = 0; t <= prob.n; ++t) {
		W bound{};
		for(const auto& c : chains) {
			std::vector<W> ws;
			for(std::size_t s : c) {
				if(s >= t) {
					ws.push_back(prob.weight[s]);
				}
			}
			std::sort(ws.begin(), ws.end(), std::greater<>());
			for(std::size_t i = 0; i < ws.size() && i < static_cast<std::size_t>(k); ++i) {
				bound += ws[i];
			}
		}
		prob.suffix_bound[t] = bound;
	}
	return prob;
}

template <typename W>
W solve(const SearchProblem<W>& prob, Execution exec) {
	if(exec == Execution::serial || prob.n <= kSplitDepth) {
		BranchAndBound<W> bb(prob);
		bb.run_from(0, 0, W{});
		return bb.best();
	}

	const std::size_t depth = kSplitDepth;
	const auto tasks = static_cast<std::int64_t>(Mask{1} << depth);
	std::vector<W> results(static_cast<std::size_t>(tasks), prob.lower_bound);
#pragma omp parallel for schedule(dynamic)
	for(std::int64_t task = 0; task < tasks; ++task) {
		const auto chosen = static_cast<Mask>(task);
		BranchAndBound<W> bb(prob);
		if(!bb.prefix_feasible(depth, chosen)) {
			continue;
		}
		W current{};
		for(std::size_t t = 0; t < depth; ++t) {
			if((chosen >> t) & 1U) {
				current += prob.weight[t];
			}
		}
		bb.run_from(depth, chosen, current);
		results[static_cast<std::size_t>(task)] = bb.best();
	}
	return *std::max_element(results.begin(), results.end());
}

// Common-denominator integer weights when every partial sum fits in int64.
std::optional<std::pair<std::vector<std::int64_t>, BigInt>> integer_weights(const WeightedPoset& p) {
	BigInt lcm = 1;
	for(std::size_t i = 0; i < p.size(); ++i) {
		lcm = boost::multiprecision::lcm(lcm, BigInt(boost::multiprecision::denominator(p.weight(i))));
	}
	std::vector<std::int64_t> out;
	BigInt total = 0;
	const BigInt limit = BigInt(1) << 62;
	for(std::size_t i = 0; i < p.size(); ++i) {
		const BigInt scaled = boost::multiprecision::numerator(p.weight(i)) * (lcm / boost::multiprecision::denominator(p.weight(i)));
		total += scaled;
		if(total >= limit) {
			return std::nullopt;
		}
		out.push_back(scaled.convert_to<std::int64_t>());
	}
	return std::make_pair(std::move(out), lcm);
}

}  // namespace

Rational top_k_whitney_sum(const WeightedPoset& p, int k) {
	auto profile = p.whitney();
	std::sort(profile.begin(), profile.end(), std::greater<>());
	Rational sum = 0;
	for(std::size_t i = 0; i < profile.size() && i < static_cast<std::size_t>(std::max(k, 0)); ++i) {
		sum += profile[i];
	}
	return sum;
}

Rational max_k_family_weight(const WeightedPoset& p, int k, Execution exec, std::size_t budget) {
	if(k < 1) {
		throw InvalidInput("k-family search needs k >= 1");
	}
	budget = std::min<std::size_t>(budget, 63);
	if(p.size() > budget) {
		throw BudgetExceeded("exhaustive k-family search refused: " + std::to_string(p.size()) +
			" elements exceeds the budget of " + std::to_string(budget));
	}
	if(k >= p.rank_count()) {
		return p.total_weight();
	}

	std::vector<std::size_t> order(p.size());
	for(std::size_t i = 0; i < order.size(); ++i) {
		order[i] = i;
	}
	std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return p.rank(a) < p.rank(b); });

	const Rational lower = top_k_whitney_sum(p, k);
	if(auto scaled = integer_weights(p)) {
		const auto& [weights, lcm] = *scaled;
		const BigInt lower_scaled = boost::multiprecision::numerator(lower) * (lcm / boost::multiprecision::denominator(lower));
		const auto prob = make_problem<std::int64_t>(p, k, order, weights, lower_scaled.convert_to<std::int64_t>());
		return Rational(BigInt(solve(prob, exec)), lcm);
	}
	std::vector<Rational> weights;
	for(std::size_t i = 0; i < p.size(); ++i) {
		weights.push_back(p.weight(i));
	}
	const auto prob = make_problem<Rational>(p, k, order, weights, lower);
	return solve(prob, exec);
}

bool is_k_sperner(const WeightedPoset& p, int k, Execution exec, std::size_t budget) {
	return max_k_family_weight(p, k, exec, budget) == top_k_whitney_sum(p, k);
}

bool is_strongly_sperner(const WeightedPoset& p, Execution exec, std::size_t budget) {
	if(p.size() > std::min<std::size_t>(budget, 63)) {
		throw BudgetExceeded("strong Sperner certification refused: " + std::to_string(p.size()) +
			" elements exceeds the budget of " + std::to_string(budget));
	}
	for(int k = 1; k <= p.rank_count(); ++k) {
		if(!is_k_sperner(p, k, exec, budget)) {
			return false;
		}
	}
	return true;
}

bool is_peck(const WeightedPoset& p, Execution exec, std::size_t budget) {
	const auto profile = p.whitney();
	if(!is_rank_symmetric(profile) || !is_rank_unimodal(profile)) {
		return false;
	}
	return is_strongly_sperner(p, exec, budget);
}

}  // namespace sepi
