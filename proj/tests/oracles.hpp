#pragma once

// Brute-force reference computations used only by the tests. None of these go
// through the library code path they are compared against.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "sperner_epi/rational.hpp"

namespace oracle {

using sepi::Rational;

/// Distribution of X_1 + ... + X_N by enumerating every outcome tuple.
inline std::map<std::int64_t, Rational> enumerate_sum(
	const std::vector<std::vector<std::pair<std::int64_t, Rational>>>& factors) {
	std::map<std::int64_t, Rational> out;
	std::function<void(std::size_t, std::int64_t, Rational)> rec = [&](std::size_t f, std::int64_t x, Rational p) {
		if(f == factors.size()) {
			out[x] += p;
			return;
		}
		for(const auto& [v, q] : factors[f]) {
			rec(f + 1, x + v, p * q);
		}
	};
	rec(0, 0, Rational(1));
	return out;
}

/// Sum of the k largest entries of v (zero-padded), via the variational formula
/// min over thresholds t of k·t + Σ (v_i - t)^+, without sorting.
inline Rational top_k_sum(const std::vector<Rational>& v, std::size_t k) {
	std::vector<Rational> thresholds = v;
	thresholds.emplace_back(0);
	Rational best = -1;
	for(const auto& t : thresholds) {
		if(t < 0) {
			continue;
		}
		Rational s = Rational(static_cast<long>(k)) * t;
		for(const auto& x : v) {
			if(x > t) {
				s += x - t;
			}
		}
		if(best < 0 || s < best) {
			best = s;
		}
	}
	return best;
}

/// f ≺ g on value multisets by the variational top-k formula.
inline bool majorized(const std::vector<Rational>& f, const std::vector<Rational>& g) {
	Rational tf = 0;
	Rational tg = 0;
	for(const auto& x : f) {
		tf += x;
	}
	for(const auto& x : g) {
		tg += x;
	}
	if(tf != tg) {
		return false;
	}
	const std::size_t len = std::max(f.size(), g.size());
	for(std::size_t k = 1; k <= len; ++k) {
		if(top_k_sum(f, k) > top_k_sum(g, k)) {
			return false;
		}
	}
	return true;
}

/// Coefficients of Π_{i=1}^m (1 + q^i).
inline std::vector<std::int64_t> distinct_part_polynomial(int m) {
	std::vector<std::int64_t> c{1};
	for(int i = 1; i <= m; ++i) {
		std::vector<std::int64_t> next(c.size() + static_cast<std::size_t>(i), 0);
		for(std::size_t j = 0; j < c.size(); ++j) {
			next[j] += c[j];
			next[j + static_cast<std::size_t>(i)] += c[j];
		}
		c = next;
	}
	return c;
}

/// Number of subsets of {1..m} with each possible sum, by enumeration.
inline std::vector<std::int64_t> subset_sum_counts(int m) {
	std::vector<std::int64_t> c(static_cast<std::size_t>(m * (m + 1) / 2) + 1, 0);
	for(std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
		int s = 0;
		for(int i = 0; i < m; ++i) {
			if((mask >> i) & 1U) {
				s += i + 1;
			}
		}
		++c[static_cast<std::size_t>(s)];
	}
	return c;
}

/// Whether `subset` (bitmask over element indices) splits into at most k
/// antichains, by repeatedly peeling off its minimal elements.
inline bool is_k_family(std::uint64_t subset, int k, const std::function<bool(std::size_t, std::size_t)>& less,
	std::size_t n) {
	int layers = 0;
	while(subset != 0) {
		std::uint64_t minimal = 0;
		for(std::size_t a = 0; a < n; ++a) {
			if(!((subset >> a) & 1U)) {
				continue;
			}
			bool is_min = true;
			for(std::size_t b = 0; b < n && is_min; ++b) {
				if(b != a && ((subset >> b) & 1U) && less(b, a)) {
					is_min = false;
				}
			}
			if(is_min) {
				minimal |= std::uint64_t{1} << a;
			}
		}
		subset &= ~minimal;
		if(++layers > k) {
			return false;
		}
	}
	return true;
}

/// Maximum weight of a k-family over all 2^n subsets.
inline Rational brute_max_k_family(const std::vector<Rational>& weights, int k,
	const std::function<bool(std::size_t, std::size_t)>& less) {
	const std::size_t n = weights.size();
	Rational best = 0;
	for(std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
		Rational w = 0;
		for(std::size_t i = 0; i < n; ++i) {
			if((s >> i) & 1U) {
				w += weights[i];
			}
		}
		if(w > best && is_k_family(s, k, less, n)) {
			best = w;
		}
	}
	return best;
}

/// Direct long-double Rényi entropy, no grouping of equal masses.
inline long double renyi(const std::vector<Rational>& p, double alpha) {
	if(alpha == 0.0) {
		return std::log(static_cast<long double>(p.size()));
	}
	if(std::isinf(alpha)) {
		long double m = 0;
		for(const auto& x : p) {
			m = std::max(m, x.convert_to<long double>());
		}
		return -std::log(m);
	}
	if(alpha == 1.0) {
		long double h = 0;
		for(const auto& x : p) {
			const long double v = x.convert_to<long double>();
			h -= v * std::log(v);
		}
		return h;
	}
	long double s = 0;
	for(const auto& x : p) {
		s += std::pow(x.convert_to<long double>(), static_cast<long double>(alpha));
	}
	return std::log(s) / (1.0L - alpha);
}

}  // namespace oracle
