#include "sperner_epi/poset.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "sperner_epi/errors.hpp"

namespace sepi {

WeightedPoset::WeightedPoset(std::vector<std::string> names, std::vector<Rational> weights,
	std::span<const std::pair<std::size_t, std::size_t>> less_than)
	: names_(std::move(names)), weights_(std::move(weights)) {
	const std::size_t n = names_.size();
	if(n == 0) {
		throw InvalidInput("poset has no elements");
	}
	if(weights_.size() != n) {
		throw InvalidInput("poset weights and elements differ in length");
	}
	for(const auto& w : weights_) {
		if(w <= 0) {
			throw InvalidInput("poset weights must be positive");
		}
	}

	std::vector<std::vector<std::size_t>> succ(n);
	std::vector<std::size_t> indegree(n, 0);
	for(const auto& [a, b] : less_than) {
		if(a >= n || b >= n) {
			throw InvalidInput("poset relation refers to an unknown element");
		}
		if(a == b) {
			throw InvalidInput("poset relation " + names_[a] + " < " + names_[a] + " violates antisymmetry");
		}
		succ[a].push_back(b);
		++indegree[b];
	}

	// Kahn's algorithm; leftover elements lie on a cycle.
	std::vector<std::size_t> topo;
	topo.reserve(n);
	for(std::size_t i = 0; i < n; ++i) {
		if(indegree[i] == 0) {
			topo.push_back(i);
		}
	}
	for(std::size_t head = 0; head < topo.size(); ++head) {
		for(std::size_t b : succ[topo[head]]) {
			if(--indegree[b] == 0) {
				topo.push_back(b);
			}
		}
	}
	if(topo.size() != n) {
		throw InvalidInput("poset relations contain a cycle (antisymmetry violated)");
	}

	above_.assign(n, boost::dynamic_bitset<>(n));
	for(auto it = topo.rbegin(); it != topo.rend(); ++it) {
		for(std::size_t b : succ[*it]) {
			above_[*it].set(b);
			above_[*it] |= above_[b];
		}
	}
	below_.assign(n, boost::dynamic_bitset<>(n));
	for(std::size_t a = 0; a < n; ++a) {
		for(auto b = above_[a].find_first(); b != boost::dynamic_bitset<>::npos; b = above_[a].find_next(b)) {
			below_[b].set(a);
		}
	}

	// Transitive reduction.
	up_covers_.assign(n, {});
	down_covers_.assign(n, {});
	for(std::size_t a = 0; a < n; ++a) {
		boost::dynamic_bitset<> indirect(n);
		for(auto c = above_[a].find_first(); c != boost::dynamic_bitset<>::npos; c = above_[a].find_next(c)) {
			indirect |= above_[c];
		}
		const auto direct = above_[a] - indirect;
		for(auto b = direct.find_first(); b != boost::dynamic_bitset<>::npos; b = direct.find_next(b)) {
			up_covers_[a].push_back(b);
			down_covers_[b].push_back(a);
		}
	}

	ranks_.assign(n, 0);
	for(std::size_t a : topo) {
		for(std::size_t b : up_covers_[a]) {
			ranks_[b] = std::max(ranks_[b], ranks_[a] + 1);
		}
	}
	max_rank_ = *std::max_element(ranks_.begin(), ranks_.end());
	for(std::size_t a = 0; a < n; ++a) {
		for(std::size_t b : up_covers_[a]) {
			if(ranks_[b] != ranks_[a] + 1) {
				throw InvalidInput("poset is not graded: " + names_[b] + " covers " + names_[a] +
					" but the ranks differ by more than one");
			}
		}
		if(up_covers_[a].empty() && ranks_[a] != max_rank_) {
			throw InvalidInput("poset is not graded: maximal element " + names_[a] + " has rank " +
				std::to_string(ranks_[a]) + " instead of " + std::to_string(max_rank_));
		}
	}
}

ElementSet WeightedPoset::level(int r) const {
	ElementSet out;
	for(std::size_t i = 0; i < size(); ++i) {
		if(ranks_[i] == r) {
			out.push_back(i);
		}
	}
	return out;
}

std::vector<Rational> WeightedPoset::whitney() const {
	std::vector<Rational> profile(static_cast<std::size_t>(rank_count()));
	for(std::size_t i = 0; i < size(); ++i) {
		profile[static_cast<std::size_t>(ranks_[i])] += weights_[i];
	}
	return profile;
}

Rational WeightedPoset::total_weight() const {
	Rational total = 0;
	for(const auto& w : weights_) {
		total += w;
	}
	return total;
}

Rational WeightedPoset::weight_of(const ElementSet& set) const {
	Rational total = 0;
	for(std::size_t i : set) {
		total += weights_.at(i);
	}
	return total;
}

std::optional<std::size_t> WeightedPoset::index_of(const std::string& name) const {
	const auto it = std::find(names_.begin(), names_.end(), name);
	if(it == names_.end()) {
		return std::nullopt;
	}
	return static_cast<std::size_t>(it - names_.begin());
}

std::vector<std::pair<std::size_t, std::size_t>> WeightedPoset::cover_pairs() const {
	std::vector<std::pair<std::size_t, std::size_t>> out;
	for(std::size_t a = 0; a < size(); ++a) {
		for(std::size_t b : up_covers_[a]) {
			out.emplace_back(a, b);
		}
	}
	return out;
}

WeightedPoset poset_from_json(const nlohmann::json& j) {
	if(!j.is_object() || !j.contains("elements") || !j.at("elements").is_array()) {
		throw InvalidInput("poset JSON needs an \"elements\" array");
	}
	std::vector<std::string> names;
	std::map<std::string, std::size_t> index;
	for(const auto& e : j.at("elements")) {
		if(!e.is_string()) {
			throw InvalidInput("poset element names must be strings");
		}
		const auto name = e.get<std::string>();
		if(!index.emplace(name, names.size()).second) {
			throw InvalidInput("duplicate poset element \"" + name + "\"");
		}
		names.push_back(name);
	}
	auto lookup = [&](const nlohmann::json& e) {
		if(!e.is_string() || !index.contains(e.get<std::string>())) {
			throw InvalidInput("poset cover refers to an unknown element " + e.dump());
		}
		return index.at(e.get<std::string>());
	};
	std::vector<std::pair<std::size_t, std::size_t>> rel;
	if(j.contains("covers")) {
		if(!j.at("covers").is_array()) {
			throw InvalidInput("poset \"covers\" must be an array of pairs");
		}
		for(const auto& c : j.at("covers")) {
			if(!c.is_array() || c.size() != 2) {
				throw InvalidInput("each poset cover must be a pair [a, b]");
			}
			rel.emplace_back(lookup(c[0]), lookup(c[1]));
		}
	}
	std::vector<Rational> weights(names.size(), Rational(1));
	if(j.contains("weights")) {
		if(!j.at("weights").is_object()) {
			throw InvalidInput("poset \"weights\" must be an object");
		}
		for(const auto& [name, w] : j.at("weights").items()) {
			if(!index.contains(name)) {
				throw InvalidInput("weight given for unknown element \"" + name + "\"");
			}
			if(!w.is_string()) {
				throw InvalidInput("poset weights must be \"p/q\" strings");
			}
			weights[index.at(name)] = parse_rational(w.get<std::string>());
		}
	}
	return WeightedPoset(std::move(names), std::move(weights), rel);
}

nlohmann::json to_json(const WeightedPoset& p) {
	nlohmann::json elements = nlohmann::json::array();
	nlohmann::json weights = nlohmann::json::object();
	for(std::size_t i = 0; i < p.size(); ++i) {
		elements.push_back(p.name(i));
		weights[p.name(i)] = to_string(p.weight(i));
	}
	nlohmann::json covers = nlohmann::json::array();
	for(const auto& [a, b] : p.cover_pairs()) {
		covers.push_back({p.name(a), p.name(b)});
	}
	return {{"elements", elements}, {"covers", covers}, {"weights", weights}};
}

WeightedPoset chain(std::span<const Rational> weights) {
	std::vector<std::string> names;
	std::vector<std::pair<std::size_t, std::size_t>> rel;
	for(std::size_t i = 0; i < weights.size(); ++i) {
		names.push_back(std::to_string(i));
		if(i > 0) {
			rel.emplace_back(i - 1, i);
		}
	}
	return WeightedPoset(std::move(names), {weights.begin(), weights.end()}, rel);
}

WeightedPoset unit_chain(std::size_t length) {
	const std::vector<Rational> weights(length, Rational(1));
	return chain(weights);
}

WeightedPoset chain_poset_of(const IntegerPmf& f) {
	std::vector<std::string> names;
	std::vector<std::pair<std::size_t, std::size_t>> rel;
	for(std::size_t i = 0; i < f.size(); ++i) {
		names.push_back(std::to_string(f.support()[i]));
		if(i > 0) {
			rel.emplace_back(i - 1, i);
		}
	}
	return WeightedPoset(std::move(names), f.mass(), rel);
}

WeightedPoset product(const WeightedPoset& p, const WeightedPoset& q) {
	const WeightedPoset factors[] = {p, q};
	return product_all(factors);
}

WeightedPoset product_all(std::span<const WeightedPoset> factors) {
	if(factors.empty()) {
		throw InvalidInput("product of an empty list of posets");
	}
	const std::size_t nf = factors.size();
	std::vector<std::size_t> stride(nf, 1);
	std::size_t n = 1;
	for(std::size_t f = nf; f-- > 0;) {
		stride[f] = n;
		n *= factors[f].size();
	}

	std::vector<std::string> names(n);
	std::vector<Rational> weights(n);
	std::vector<std::pair<std::size_t, std::size_t>> rel;
	std::vector<std::size_t> digit(nf);
	for(std::size_t idx = 0; idx < n; ++idx) {
		std::size_t rest = idx;
		Rational w = 1;
		std::string name = "(";
		for(std::size_t f = 0; f < nf; ++f) {
			digit[f] = rest / stride[f];
			rest %= stride[f];
			w *= factors[f].weight(digit[f]);
			name += (f ? "," : "") + factors[f].name(digit[f]);
		}
		names[idx] = name + ")";
		weights[idx] = std::move(w);
		for(std::size_t f = 0; f < nf; ++f) {
			for(std::size_t up : factors[f].covers_up(digit[f])) {
				rel.emplace_back(idx, idx + (up - digit[f]) * stride[f]);
			}
		}
	}
	return WeightedPoset(std::move(names), std::move(weights), rel);
}

WeightedPoset chain_product(std::span<const int> ns) {
	std::vector<WeightedPoset> chains;
	for(int ni : ns) {
		if(ni < 0) {
			throw InvalidInput("chain product lengths must be nonnegative");
		}
		chains.push_back(unit_chain(static_cast<std::size_t>(ni) + 1));
	}
	return product_all(chains);
}

WeightedPoset boolean_lattice(int n) {
	if(n < 1) {
		throw InvalidInput("Boolean lattice needs n >= 1");
	}
	const std::vector<int> ones(static_cast<std::size_t>(n), 1);
	return chain_product(ones);
}

MElement MElement::from_bits(std::span<const int> bits) {
	MElement e;
	for(std::size_t i = 0; i < bits.size(); ++i) {
		if(bits[i] != 0 && bits[i] != 1) {
			throw InvalidInput("Bernoulli vector entries must be 0 or 1");
		}
	}
	const auto ones = static_cast<std::size_t>(std::count(bits.begin(), bits.end(), 1));
	e.entries.assign(bits.size() - ones, 0);
	for(std::size_t i = 0; i < bits.size(); ++i) {
		if(bits[i] == 1) {
			e.entries.push_back(static_cast<int>(i) + 1);
		}
	}
	return e;
}

MElement MElement::from_mask(int m, std::uint64_t mask) {
	std::vector<int> bits(static_cast<std::size_t>(m));
	for(int i = 0; i < m; ++i) {
		bits[static_cast<std::size_t>(i)] = static_cast<int>((mask >> i) & 1U);
	}
	return from_bits(bits);
}

std::vector<int> MElement::bits() const {
	std::vector<int> b(entries.size(), 0);
	for(int v : entries) {
		if(v > 0) {
			b[static_cast<std::size_t>(v - 1)] = 1;
		}
	}
	return b;
}

std::uint64_t MElement::mask() const {
	std::uint64_t mask = 0;
	for(int v : entries) {
		if(v > 0) {
			mask |= std::uint64_t{1} << (v - 1);
		}
	}
	return mask;
}

int MElement::rank() const {
	return std::accumulate(entries.begin(), entries.end(), 0);
}

bool MElement::leq(const MElement& other) const {
	if(entries.size() != other.entries.size()) {
		return false;
	}
	for(std::size_t i = 0; i < entries.size(); ++i) {
		if(entries[i] > other.entries[i]) {
			return false;
		}
	}
	return true;
}

std::string MElement::to_string() const {
	std::string s = "(";
	for(std::size_t i = 0; i < entries.size(); ++i) {
		s += (i ? "," : "") + std::to_string(entries[i]);
	}
	return s + ")";
}

WeightedPoset build_M(int m) {
	if(m < 1 || m > 20) {
		throw InvalidInput("M(m) is built for 1 <= m <= 20");
	}
	const std::size_t n = std::size_t{1} << m;
	std::vector<MElement> elems;
	std::vector<std::string> names;
	for(std::size_t mask = 0; mask < n; ++mask) {
		elems.push_back(MElement::from_mask(m, mask));
		names.push_back(elems.back().to_string());
	}
	// Candidate covers only: b covers a in M(m) exactly when b is a with one
	// entry raised by one, so generating those pairs suffices for the closure.
	std::vector<std::pair<std::size_t, std::size_t>> rel;
	std::map<std::vector<int>, std::size_t> index;
	for(std::size_t i = 0; i < n; ++i) {
		index.emplace(elems[i].entries, i);
	}
	for(std::size_t i = 0; i < n; ++i) {
		for(std::size_t pos = 0; pos < elems[i].entries.size(); ++pos) {
			auto raised = elems[i].entries;
			++raised[pos];
			const auto it = index.find(raised);
			if(it != index.end()) {
				rel.emplace_back(i, it->second);
			}
		}
	}
	return WeightedPoset(std::move(names), std::vector<Rational>(n, Rational(1)), rel);
}

MElement encode_bernoulli_vector(std::span<const int> bits) {
	if(bits.empty()) {
		throw InvalidInput("Bernoulli vector must have length >= 1");
	}
	return MElement::from_bits(bits);
}

ElementSet upper_shade(const WeightedPoset& p, const ElementSet& a) {
	if(a.empty()) {
		return {};
	}
	const int r = p.rank(a.front());
	boost::dynamic_bitset<> shade(p.size());
	for(std::size_t x : a) {
		if(x >= p.size()) {
			throw InvalidInput("upper_shade: element index out of range");
		}
		if(p.rank(x) != r) {
			throw InvalidInput("upper_shade needs a set within a single rank");
		}
		for(std::size_t y : p.covers_up(x)) {
			shade.set(y);
		}
	}
	ElementSet out;
	for(auto y = shade.find_first(); y != boost::dynamic_bitset<>::npos; y = shade.find_next(y)) {
		out.push_back(y);
	}
	return out;
}

bool is_antichain(const WeightedPoset& p, const ElementSet& a) {
	for(std::size_t i = 0; i < a.size(); ++i) {
		for(std::size_t j = i + 1; j < a.size(); ++j) {
			if(a[i] != a[j] && p.comparable(a[i], a[j])) {
				return false;
			}
		}
	}
	return true;
}

std::optional<NormalityViolation> find_normality_violation(const WeightedPoset& p, std::size_t size_cap) {
	size_cap = std::min<std::size_t>(size_cap, 30);
	const auto profile = p.whitney();
	for(int r = 0; r < p.max_rank(); ++r) {
		const ElementSet lvl = p.level(r);
		if(lvl.size() > size_cap) {
			throw BudgetExceeded("rank " + std::to_string(r) + " has " + std::to_string(lvl.size()) +
				" elements, above the normality size cap of " + std::to_string(size_cap));
		}
		const Rational& below_total = profile[static_cast<std::size_t>(r)];
		const Rational& above_total = profile[static_cast<std::size_t>(r) + 1];
		for(std::uint64_t mask = 1; mask < (std::uint64_t{1} << lvl.size()); ++mask) {
			ElementSet subset;
			for(std::size_t i = 0; i < lvl.size(); ++i) {
				if((mask >> i) & 1U) {
					subset.push_back(lvl[i]);
				}
			}
			const ElementSet shade = upper_shade(p, subset);
			if(p.weight_of(subset) * above_total > p.weight_of(shade) * below_total) {
				return NormalityViolation{r, std::move(subset)};
			}
		}
	}
	return std::nullopt;
}

bool is_normal(const WeightedPoset& p, std::size_t size_cap) {
	return !find_normality_violation(p, size_cap).has_value();
}

bool is_rank_symmetric(std::span<const Rational> profile) {
	return std::equal(profile.begin(), profile.end(), profile.rbegin());
}

bool is_rank_unimodal(std::span<const Rational> profile) {
	std::size_t i = 1;
	while(i < profile.size() && profile[i - 1] <= profile[i]) {
		++i;
	}
	while(i < profile.size() && profile[i - 1] >= profile[i]) {
		++i;
	}
	return i >= profile.size();
}

WeightedPoset chain_product_of(std::span<const IntegerPmf> fs) {
	std::vector<WeightedPoset> chains;
	for(const auto& f : fs) {
		chains.push_back(chain_poset_of(f));
	}
	return product_all(chains);
}

ChainLevelSet level_set_chainproduct(std::span<const IntegerPmf> fs, std::int64_t x) {
	if(fs.empty()) {
		throw InvalidInput("level set of an empty list of functions");
	}
	const std::size_t nf = fs.size();
	// suffix_min/max[i]: range of partial sums over factors i..N-1.
	std::vector<std::int64_t> suffix_min(nf + 1, 0);
	std::vector<std::int64_t> suffix_max(nf + 1, 0);
	std::vector<std::size_t> stride(nf, 1);
	std::size_t s = 1;
	for(std::size_t f = nf; f-- > 0;) {
		suffix_min[f] = suffix_min[f + 1] + fs[f].min_point();
		suffix_max[f] = suffix_max[f + 1] + fs[f].max_point();
		stride[f] = s;
		s *= fs[f].size();
	}

	ChainLevelSet out;
	std::vector<std::int64_t> tuple(nf);
	auto recurse = [&](auto&& self, std::size_t f, std::int64_t remaining, std::size_t index) -> void {
		if(f == nf) {
			if(remaining == 0) {
				out.tuples.push_back(tuple);
				out.elements.push_back(index);
			}
			return;
		}
		if(remaining < suffix_min[f] || remaining > suffix_max[f]) {
			return;
		}
		for(std::size_t r = 0; r < fs[f].size(); ++r) {
			tuple[f] = fs[f].support()[r];
			self(self, f + 1, remaining - tuple[f], index + r * stride[f]);
		}
	};
	recurse(recurse, 0, x, 0);
	return out;
}

WeightedPoset m_product(std::span<const int> m_vector) {
	std::vector<WeightedPoset> factors;
	for(int m : m_vector) {
		factors.push_back(build_M(m));
	}
	return product_all(factors);
}

MLevelSet level_set_M(std::span<const std::vector<std::int64_t>> weights, std::span<const int> m_vector,
	std::int64_t x) {
	if(weights.size() != m_vector.size() || m_vector.empty()) {
		throw InvalidInput("level_set_M needs one weight list per factor");
	}
	const std::size_t nf = m_vector.size();
	// value[f][mask]: weighted bit sum of factor f's Bernoulli vector.
	std::vector<std::vector<std::int64_t>> value(nf);
	std::vector<std::size_t> stride(nf, 1);
	std::size_t s = 1;
	for(std::size_t f = nf; f-- > 0;) {
		const int m = m_vector[f];
		const auto& w = weights[f];
		if(m < 1 || static_cast<std::size_t>(m) != w.size()) {
			throw InvalidInput("factor " + std::to_string(f) + " needs m >= 1 and exactly m weights");
		}
		for(std::size_t i = 0; i < w.size(); ++i) {
			if(w[i] <= 0 || (i > 0 && w[i - 1] >= w[i])) {
				throw InvalidInput("factor weights must be strictly increasing positive integers");
			}
		}
		value[f].resize(std::size_t{1} << m);
		for(std::size_t mask = 0; mask < value[f].size(); ++mask) {
			std::int64_t v = 0;
			for(int i = 0; i < m; ++i) {
				if((mask >> i) & 1U) {
					v += w[static_cast<std::size_t>(i)];
				}
			}
			value[f][mask] = v;
		}
		stride[f] = s;
		s *= value[f].size();
	}

	MLevelSet out;
	std::vector<std::uint64_t> masks(nf);
	auto recurse = [&](auto&& self, std::size_t f, std::int64_t remaining, std::size_t index) -> void {
		if(f == nf) {
			if(remaining == 0) {
				std::vector<MElement> tuple;
				for(std::size_t g = 0; g < nf; ++g) {
					tuple.push_back(MElement::from_mask(m_vector[g], masks[g]));
				}
				out.tuples.push_back(std::move(tuple));
				out.elements.push_back(index);
			}
			return;
		}
		if(remaining < 0) {
			return;
		}
		for(std::size_t mask = 0; mask < value[f].size(); ++mask) {
			masks[f] = mask;
			self(self, f + 1, remaining - value[f][mask], index + mask * stride[f]);
		}
	};
	recurse(recurse, 0, x, 0);
	return out;
}

}  // namespace sepi
