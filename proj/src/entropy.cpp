#include "sperner_epi/entropy.hpp"

#include <algorithm>
#include <charconv>
#include <iomanip>
#include <limits>
#include <map>
#include <sstream>

#include "sperner_epi/errors.hpp"

namespace sepi {

namespace {

// Distinct mass values with multiplicities; entropies only depend on this.
std::vector<std::pair<Rational, std::size_t>> value_histogram(const IntegerPmf& f) {
	auto values = sorted_values_desc(f);
	std::vector<std::pair<Rational, std::size_t>> out;
	for(auto& v : values) {
		if(!out.empty() && out.back().first == v) {
			++out.back().second;
		} else {
			out.emplace_back(std::move(v), 1);
		}
	}
	return out;
}

void require_probability(const IntegerPmf& f) {
	if(!f.is_probability()) {
		throw InvalidInput("entropy needs a probability mass function, total is " + to_string(f.total()));
	}
}

}  // namespace

RenyiOrder RenyiOrder::finite(double alpha) {
	if(!(alpha > 0.0) || alpha == 1.0 || !std::isfinite(alpha)) {
		throw InvalidInput("finite Renyi order must be positive and != 1");
	}
	return RenyiOrder(Kind::finite, alpha);
}

RenyiOrder RenyiOrder::parse(std::string_view text) {
	if(text == "inf" || text == "infinity") {
		return infinity();
	}
	double alpha = 0.0;
	if(text.find('/') != std::string_view::npos) {
		const Rational q = parse_rational(text);
		alpha = q.convert_to<double>();
	} else {
		const auto* end = text.data() + text.size();
		const auto [ptr, ec] = std::from_chars(text.data(), end, alpha);
		if(ec != std::errc() || ptr != end) {
			throw InvalidInput("unrecognized Renyi order \"" + std::string(text) + "\"");
		}
	}
	if(alpha == 0.0) {
		return zero();
	}
	if(alpha == 1.0) {
		return one();
	}
	return finite(alpha);
}

bool RenyiOrder::admits_entropy_power() const {
	return kind_ == Kind::one || (kind_ == Kind::finite && alpha_ > 1.0);
}

bool RenyiOrder::at_least_one() const {
	return kind_ == Kind::one || kind_ == Kind::infinity || (kind_ == Kind::finite && alpha_ > 1.0);
}

std::string RenyiOrder::to_string() const {
	switch(kind_) {
	case Kind::zero:
		return "0";
	case Kind::one:
		return "1";
	case Kind::infinity:
		return "inf";
	case Kind::finite:
		break;
	}
	std::ostringstream os;
	os << std::setprecision(17) << alpha_;
	return os.str();
}

std::vector<RenyiOrder> parse_orders(std::string_view comma_separated) {
	std::vector<RenyiOrder> orders;
	while(!comma_separated.empty()) {
		const auto comma = comma_separated.find(',');
		orders.push_back(RenyiOrder::parse(comma_separated.substr(0, comma)));
		if(comma == std::string_view::npos) {
			break;
		}
		comma_separated.remove_prefix(comma + 1);
	}
	if(orders.empty()) {
		throw InvalidInput("empty order list");
	}
	return orders;
}

Real renyi_entropy(const IntegerPmf& f, RenyiOrder order) {
	require_probability(f);
	switch(order.kind()) {
	case RenyiOrder::Kind::zero:
		return log(Real(f.size()));
	case RenyiOrder::Kind::infinity:
		return -log(Real(f.max_mass()));
	case RenyiOrder::Kind::one: {
		Real h = 0;
		for(const auto& [p, count] : value_histogram(f)) {
			const Real pr(p);
			h -= Real(count) * pr * log(pr);
		}
		return h;
	}
	case RenyiOrder::Kind::finite:
		break;
	}
	const Real alpha(order.alpha());
	Real sum = 0;
	for(const auto& [p, count] : value_histogram(f)) {
		sum += Real(count) * pow(Real(p), alpha);
	}
	return log(sum) / (1 - alpha);
}

Real entropy_power(const IntegerPmf& f, RenyiOrder order) {
	if(!order.admits_entropy_power()) {
		throw InvalidInput("entropy power is defined here only for order 1 and finite order > 1, got " +
			order.to_string());
	}
	return exp((1 + Real(order.alpha())) * renyi_entropy(f, order));
}

bool schur_convexity_check(const IntegerPmf& f, const IntegerPmf& g, std::span<const RenyiOrder> orders,
	double tolerance) {
	if(!majorizes(f, g).holds) {
		throw PreconditionError("schur_convexity_check requires f to be majorized by g");
	}
	for(const auto& order : orders) {
		if(renyi_entropy(f, order) < renyi_entropy(g, order) - tolerance) {
			return false;
		}
	}
	return true;
}

std::string format_real(const Real& x) {
	std::ostringstream os;
	os << std::setprecision(12) << x;
	return os.str();
}

nlohmann::json to_json(const InequalityRecord& r, double tolerance) {
	return {
		{"order", r.order.to_string()},
		{"lhs", format_real(r.lhs)},
		{"rhs", format_real(r.rhs)},
		{"margin", format_real(r.margin)},
		{"tolerance", tolerance},
		{"verdict", r.verdict},
	};
}

InequalityRecord epi_evaluate(const IntegerPmf& x, const IntegerPmf& y, RenyiOrder order, double tolerance) {
	InequalityRecord rec;
	rec.order = order;
	rec.lhs = entropy_power(convolve(x, y), order) + 1;
	rec.rhs = entropy_power(x, order) + entropy_power(y, order);
	rec.margin = rec.lhs - rec.rhs;
	rec.verdict = rec.margin >= -tolerance;
	return rec;
}

InequalityRecord hash_entropy_evaluate(const IntegerPmf& x, const IntegerPmf& y, RenyiOrder order,
	double tolerance) {
	InequalityRecord rec;
	rec.order = order;
	rec.lhs = renyi_entropy(convolve(x, y), order);
	rec.rhs = renyi_entropy(convolve(hash_rearrange(x), hash_rearrange(y)), order);
	rec.margin = rec.lhs - rec.rhs;
	rec.verdict = rec.margin >= -tolerance;
	return rec;
}

InequalityRecord uniform_epi_evaluate(std::int64_t n, std::int64_t m, RenyiOrder order, double tolerance) {
	if(n < 1 || m < 1) {
		throw InvalidInput("uniform EPI needs n, m >= 1");
	}
	if(!order.at_least_one()) {
		throw InvalidInput("uniform EPI needs order >= 1, got " + order.to_string());
	}
	const auto x = IntegerPmf::uniform_range(n);
	const auto y = IntegerPmf::uniform_range(m);
	if(order.kind() == RenyiOrder::Kind::infinity) {
		return hash_entropy_evaluate(x, y, order, tolerance);
	}
	return epi_evaluate(x, y, order, tolerance);
}

bool uniform_epi_check(std::int64_t n, std::int64_t m, RenyiOrder order, double tolerance) {
	return uniform_epi_evaluate(n, m, order, tolerance).verdict;
}

LatticePmf::LatticePmf(std::vector<LatticePoint> points, std::vector<Rational> mass) {
	if(points.empty()) {
		throw InvalidInput("lattice function has empty support");
	}
	if(points.size() != mass.size()) {
		throw InvalidInput("lattice points and masses differ in length");
	}
	const std::size_t d = points.front().size();
	if(d == 0) {
		throw InvalidInput("lattice dimension must be >= 1");
	}
	std::vector<std::size_t> idx(points.size());
	for(std::size_t i = 0; i < idx.size(); ++i) {
		idx[i] = i;
		if(points[i].size() != d) {
			throw InvalidInput("lattice points have inconsistent dimension");
		}
		if(mass[i] <= 0) {
			throw InvalidInput("lattice masses must be strictly positive");
		}
	}
	std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return points[a] < points[b]; });
	for(std::size_t i : idx) {
		if(!points_.empty() && points_.back() == points[i]) {
			throw InvalidInput("lattice support contains a duplicate point");
		}
		points_.push_back(std::move(points[i]));
		mass_.push_back(std::move(mass[i]));
	}
}

LatticePmf LatticePmf::uniform(std::vector<LatticePoint> points) {
	std::vector<Rational> mass(points.size(), Rational(1, static_cast<long>(std::max<std::size_t>(points.size(), 1))));
	return LatticePmf(std::move(points), std::move(mass));
}

bool LatticePmf::is_uniform() const {
	return std::all_of(mass_.begin(), mass_.end(), [&](const Rational& m) { return m == mass_.front(); });
}

LatticePmf convolve(const LatticePmf& f, const LatticePmf& g) {
	if(f.dimension() != g.dimension()) {
		throw InvalidInput("lattice convolution of different dimensions");
	}
	std::map<LatticePoint, Rational> acc;
	for(std::size_t i = 0; i < f.size(); ++i) {
		for(std::size_t j = 0; j < g.size(); ++j) {
			LatticePoint z(f.dimension());
			for(std::size_t c = 0; c < z.size(); ++c) {
				z[c] = f.points()[i][c] + g.points()[j][c];
			}
			acc[std::move(z)] += f.mass()[i] * g.mass()[j];
		}
	}
	std::vector<LatticePoint> points;
	std::vector<Rational> mass;
	for(auto& [z, m] : acc) {
		points.push_back(z);
		mass.push_back(std::move(m));
	}
	return LatticePmf(std::move(points), std::move(mass));
}

LatticePmf shift_to_nonnegative(const LatticePmf& f) {
	LatticePoint lo = f.points().front();
	for(const auto& z : f.points()) {
		for(std::size_t c = 0; c < lo.size(); ++c) {
			lo[c] = std::min(lo[c], z[c]);
		}
	}
	std::vector<LatticePoint> points = f.points();
	for(auto& z : points) {
		for(std::size_t c = 0; c < z.size(); ++c) {
			z[c] -= lo[c];
		}
	}
	return LatticePmf(std::move(points), f.mass());
}

IntegerPmf qary_embed(const LatticePmf& f, std::int64_t q) {
	if(q < 1) {
		throw InvalidInput("radix must be >= 1");
	}
	std::vector<std::pair<std::int64_t, Rational>> flat;
	for(std::size_t i = 0; i < f.size(); ++i) {
		__int128 value = 0;
		for(std::int64_t z : f.points()[i]) {
			if(z < 0 || z >= q) {
				throw InvalidInput("radix " + std::to_string(q) + " is not carry-free for coordinate " +
					std::to_string(z));
			}
			value = value * q + z;
			if(value > std::numeric_limits<std::int64_t>::max()) {
				throw InvalidInput("q-ary embedding overflows 64-bit integers");
			}
		}
		flat.emplace_back(static_cast<std::int64_t>(value), f.mass()[i]);
	}
	std::sort(flat.begin(), flat.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
	std::vector<std::int64_t> support;
	std::vector<Rational> mass;
	for(auto& [x, m] : flat) {
		if(!support.empty() && support.back() == x) {
			throw InvalidInput("q-ary embedding collision at " + std::to_string(x) + " with radix " + std::to_string(q));
		}
		support.push_back(x);
		mass.push_back(std::move(m));
	}
	return IntegerPmf(std::move(support), std::move(mass));
}

std::int64_t carry_free_radix(const LatticePmf& a, const LatticePmf& b) {
	if(a.dimension() != b.dimension()) {
		throw InvalidInput("lattice pair of different dimensions");
	}
	std::int64_t top = 0;
	for(std::size_t c = 0; c < a.dimension(); ++c) {
		std::int64_t amax = 0;
		std::int64_t bmax = 0;
		for(const auto& z : a.points()) {
			if(z[c] < 0) {
				throw InvalidInput("carry_free_radix expects nonnegative coordinates");
			}
			amax = std::max(amax, z[c]);
		}
		for(const auto& z : b.points()) {
			if(z[c] < 0) {
				throw InvalidInput("carry_free_radix expects nonnegative coordinates");
			}
			bmax = std::max(bmax, z[c]);
		}
		top = std::max(top, amax + bmax);
	}
	return top + 1;
}

LatticeEpiRecord lattice_epi_evaluate(const LatticePmf& a, const LatticePmf& b, RenyiOrder order,
	double tolerance) {
	if(!a.is_uniform() || !b.is_uniform()) {
		throw PreconditionError("lattice EPI is stated for uniform distributions");
	}
	if(!order.at_least_one()) {
		throw InvalidInput("lattice EPI needs order >= 1, got " + order.to_string());
	}
	const auto as = shift_to_nonnegative(a);
	const auto bs = shift_to_nonnegative(b);

	LatticeEpiRecord rec;
	rec.radix = carry_free_radix(as, bs);
	const auto ea = qary_embed(as, rec.radix);
	const auto eb = qary_embed(bs, rec.radix);
	rec.carry_free = convolve(ea, eb) == qary_embed(convolve(as, bs), rec.radix);
	if(order.kind() == RenyiOrder::Kind::infinity) {
		rec.inequality = hash_entropy_evaluate(ea, eb, order, tolerance);
	} else {
		rec.inequality = epi_evaluate(ea, eb, order, tolerance);
	}
	return rec;
}

bool lattice_epi_check(const LatticePmf& a, const LatticePmf& b, RenyiOrder order, double tolerance) {
	const auto rec = lattice_epi_evaluate(a, b, order, tolerance);
	return rec.carry_free && rec.inequality.verdict;
}

std::pair<LatticePmf, LatticePmf> lattice_pair_from_json(const nlohmann::json& j) {
	auto read_set = [&](const char* key) {
		if(!j.is_object() || !j.contains(key) || !j.at(key).is_array()) {
			throw InvalidInput(std::string("lattice JSON needs an array \"") + key + "\"");
		}
		std::vector<LatticePoint> points;
		for(const auto& p : j.at(key)) {
			if(!p.is_array()) {
				throw InvalidInput("lattice points must be integer arrays");
			}
			LatticePoint z;
			for(const auto& c : p) {
				if(!c.is_number_integer()) {
					throw InvalidInput("lattice coordinates must be integers");
				}
				z.push_back(c.get<std::int64_t>());
			}
			points.push_back(std::move(z));
		}
		return LatticePmf::uniform(std::move(points));
	};
	return {read_set("A"), read_set("B")};
}

}  // namespace sepi
