#include "sperner_epi/pmf.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

#include "sperner_epi/errors.hpp"
#include "sperner_epi/random.hpp"

namespace sepi {

namespace {

// Dense accumulation is used for convolution when the sumset span is at most this.
constexpr std::int64_t kDenseSpanLimit = std::int64_t{1} << 20;

std::vector<std::int64_t> sorted_unique_set(std::span<const std::int64_t> set) {
	std::vector<std::int64_t> s(set.begin(), set.end());
	std::sort(s.begin(), s.end());
	if(std::adjacent_find(s.begin(), s.end()) != s.end()) {
		throw InvalidInput("set contains duplicate points");
	}
	return s;
}

}  // namespace

IntegerPmf::IntegerPmf(std::vector<std::int64_t> support, std::vector<Rational> mass)
	: support_(std::move(support)), mass_(std::move(mass)), total_(0) {
	if(support_.empty()) {
		throw InvalidInput("function has empty support");
	}
	if(support_.size() != mass_.size()) {
		throw InvalidInput("support and mass lists differ in length");
	}
	for(std::size_t i = 1; i < support_.size(); ++i) {
		if(support_[i - 1] >= support_[i]) {
			throw InvalidInput("support must be strictly increasing (at index " + std::to_string(i) + ")");
		}
	}
	for(const Rational& m : mass_) {
		if(m <= 0) {
			throw InvalidInput("masses must be strictly positive, got " + to_string(m));
		}
		total_ += m;
	}
}

IntegerPmf IntegerPmf::point_mass(std::int64_t at, Rational mass) {
	return IntegerPmf({at}, {std::move(mass)});
}

IntegerPmf IntegerPmf::indicator(std::span<const std::int64_t> set) {
	auto s = sorted_unique_set(set);
	std::vector<Rational> mass(s.size(), Rational(1));
	return IntegerPmf(std::move(s), std::move(mass));
}

IntegerPmf IntegerPmf::uniform(std::span<const std::int64_t> set) {
	auto s = sorted_unique_set(set);
	std::vector<Rational> mass(s.size(), Rational(1, static_cast<long>(s.size())));
	return IntegerPmf(std::move(s), std::move(mass));
}

IntegerPmf IntegerPmf::uniform_range(std::int64_t n) {
	if(n < 1) {
		throw InvalidInput("uniform range needs n >= 1");
	}
	std::vector<std::int64_t> s(static_cast<std::size_t>(n));
	std::iota(s.begin(), s.end(), 0);
	return uniform(s);
}

IntegerPmf IntegerPmf::from_dense(std::int64_t offset, std::span<const Rational> values) {
	std::vector<std::int64_t> support;
	std::vector<Rational> mass;
	for(std::size_t i = 0; i < values.size(); ++i) {
		if(values[i] != 0) {
			support.push_back(offset + static_cast<std::int64_t>(i));
			mass.push_back(values[i]);
		}
	}
	return IntegerPmf(std::move(support), std::move(mass));
}

IntegerPmf IntegerPmf::binomial_half(int m) {
	if(m < 0) {
		throw InvalidInput("binomial needs m >= 0");
	}
	std::vector<Rational> mass;
	BigInt c = 1;
	const BigInt denom = BigInt(1) << m;
	for(int k = 0; k <= m; ++k) {
		mass.emplace_back(c, denom);
		c = c * (m - k) / (k + 1);
	}
	std::vector<std::int64_t> support(mass.size());
	std::iota(support.begin(), support.end(), 0);
	return IntegerPmf(std::move(support), std::move(mass));
}

Rational IntegerPmf::mass_at(std::int64_t x) const {
	const auto it = std::lower_bound(support_.begin(), support_.end(), x);
	if(it == support_.end() || *it != x) {
		return Rational(0);
	}
	return mass_[static_cast<std::size_t>(it - support_.begin())];
}

Rational IntegerPmf::max_mass() const {
	return *std::max_element(mass_.begin(), mass_.end());
}

IntegerPmf hash_rearrange(const IntegerPmf& f) {
	std::vector<std::int64_t> support(f.size());
	std::iota(support.begin(), support.end(), 0);
	return IntegerPmf(std::move(support), f.mass());
}

bool is_log_concave(std::span<const Rational> values) {
	for(std::size_t r = 1; r + 1 < values.size(); ++r) {
		if(values[r] * values[r] < values[r - 1] * values[r + 1]) {
			return false;
		}
	}
	return true;
}

bool is_hash_log_concave(const IntegerPmf& f) {
	return is_log_concave(f.mass());
}

IntegerPmf convolve(const IntegerPmf& f, const IntegerPmf& g) {
	const std::int64_t lo = f.min_point() + g.min_point();
	const std::int64_t span = (f.max_point() - f.min_point()) + (g.max_point() - g.min_point()) + 1;
	if(span <= kDenseSpanLimit) {
		std::vector<Rational> acc(static_cast<std::size_t>(span));
		for(std::size_t i = 0; i < f.size(); ++i) {
			const std::int64_t base = f.support()[i] - lo;
			for(std::size_t j = 0; j < g.size(); ++j) {
				acc[static_cast<std::size_t>(base + g.support()[j])] += f.mass()[i] * g.mass()[j];
			}
		}
		return IntegerPmf::from_dense(lo, acc);
	}
	std::map<std::int64_t, Rational> acc;
	for(std::size_t i = 0; i < f.size(); ++i) {
		for(std::size_t j = 0; j < g.size(); ++j) {
			acc[f.support()[i] + g.support()[j]] += f.mass()[i] * g.mass()[j];
		}
	}
	std::vector<std::int64_t> support;
	std::vector<Rational> mass;
	support.reserve(acc.size());
	mass.reserve(acc.size());
	for(auto& [x, m] : acc) {
		support.push_back(x);
		mass.push_back(std::move(m));
	}
	return IntegerPmf(std::move(support), std::move(mass));
}

IntegerPmf convolve_all(std::span<const IntegerPmf> fs) {
	if(fs.empty()) {
		throw InvalidInput("convolution of an empty list");
	}
	IntegerPmf acc = fs.front();
	for(std::size_t i = 1; i < fs.size(); ++i) {
		acc = convolve(acc, fs[i]);
	}
	return acc;
}

std::vector<Rational> sorted_values_desc(const IntegerPmf& f) {
	std::vector<Rational> v = f.mass();
	std::sort(v.begin(), v.end(), std::greater<>());
	return v;
}

MajorizationVerdict majorizes(const IntegerPmf& f, const IntegerPmf& g) {
	const auto fv = sorted_values_desc(f);
	const auto gv = sorted_values_desc(g);
	const std::size_t len = std::max(fv.size(), gv.size());

	MajorizationVerdict verdict;
	verdict.totals_equal = f.total() == g.total();
	Rational fsum = 0;
	Rational gsum = 0;
	for(std::size_t k = 0; k < len; ++k) {
		if(k < fv.size()) {
			fsum += fv[k];
		}
		if(k < gv.size()) {
			gsum += gv[k];
		}
		if(fsum > gsum) {
			verdict.failing_k = k + 1;
			break;
		}
	}
	verdict.holds = verdict.totals_equal && !verdict.failing_k;
	return verdict;
}

IntegerPmf random_hash_log_concave(int support_size, int max_gap, int mass_bound, std::uint64_t seed) {
	if(support_size < 1 || max_gap < 1 || mass_bound < 1) {
		throw InvalidInput("random_hash_log_concave needs support_size, max_gap, mass_bound >= 1");
	}
	Engine rng = make_engine(seed);

	std::vector<Rational> ratios;
	for(int r = 1; r < support_size; ++r) {
		const auto p = uniform_draw(rng, 1, mass_bound);
		const auto q = uniform_draw(rng, 1, mass_bound);
		ratios.emplace_back(p, q);
	}
	std::sort(ratios.begin(), ratios.end(), std::greater<>());

	std::vector<Rational> mass{Rational(1)};
	for(const Rational& t : ratios) {
		mass.push_back(mass.back() * t);
	}
	Rational total = 0;
	for(const Rational& m : mass) {
		total += m;
	}
	for(Rational& m : mass) {
		m /= total;
	}

	std::vector<std::int64_t> support{0};
	for(int r = 1; r < support_size; ++r) {
		support.push_back(support.back() + uniform_draw(rng, 1, max_gap));
	}
	return IntegerPmf(std::move(support), std::move(mass));
}

IntegerPmf scale_support(const IntegerPmf& f, std::int64_t a) {
	if(a <= 0) {
		throw InvalidInput("scale factor must be positive, got " + std::to_string(a));
	}
	std::vector<std::int64_t> support = f.support();
	for(auto& x : support) {
		x *= a;
	}
	return IntegerPmf(std::move(support), f.mass());
}

IntegerPmf translate(const IntegerPmf& f, std::int64_t shift) {
	std::vector<std::int64_t> support = f.support();
	for(auto& x : support) {
		x += shift;
	}
	return IntegerPmf(std::move(support), f.mass());
}

IntegerPmf normalized(const IntegerPmf& f) {
	std::vector<Rational> mass = f.mass();
	for(auto& m : mass) {
		m /= f.total();
	}
	return IntegerPmf(f.support(), std::move(mass));
}

nlohmann::json to_json(const IntegerPmf& f) {
	nlohmann::json mass = nlohmann::json::array();
	for(const auto& m : f.mass()) {
		mass.push_back(to_string(m));
	}
	return {{"support", f.support()}, {"mass", std::move(mass)}};
}

IntegerPmf pmf_from_json(const nlohmann::json& j) {
	if(!j.is_object() || !j.contains("support") || !j.contains("mass")) {
		throw InvalidInput("pmf JSON must be an object with \"support\" and \"mass\"");
	}
	const auto& js = j.at("support");
	const auto& jm = j.at("mass");
	if(!js.is_array() || !jm.is_array()) {
		throw InvalidInput("pmf \"support\" and \"mass\" must be arrays");
	}
	std::vector<std::int64_t> support;
	for(const auto& x : js) {
		if(!x.is_number_integer()) {
			throw InvalidInput("pmf support entries must be integers");
		}
		support.push_back(x.get<std::int64_t>());
	}
	std::vector<Rational> mass;
	for(const auto& m : jm) {
		if(!m.is_string()) {
			throw InvalidInput("pmf masses must be \"p/q\" strings");
		}
		mass.push_back(parse_rational(m.get<std::string>()));
	}
	return IntegerPmf(std::move(support), std::move(mass));
}

nlohmann::json to_json(const MajorizationVerdict& v) {
	nlohmann::json j{{"holds", v.holds}, {"totals_equal", v.totals_equal}};
	j["failing_k"] = v.failing_k ? nlohmann::json(*v.failing_k) : nlohmann::json(nullptr);
	return j;
}

}  // namespace sepi
