#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/mpfr.hpp>
#include <json.hpp>

#include "sperner_epi/pmf.hpp"

namespace sepi {

/// Working precision for entropies: 50 decimal digits (about 166 bits). Exact
/// masses are converted to this type once, at the entropy boundary.
using Real = boost::multiprecision::mpfr_float_50;

inline constexpr double kDefaultTolerance = 1e-9;

/// Order of a Rényi entropy. The limiting orders 0, 1 and ∞ are explicit tags
/// and are never approximated by a nearby finite alpha.
class RenyiOrder {
public:
	enum class Kind { zero, one, infinity, finite };

	static RenyiOrder zero() { return RenyiOrder(Kind::zero, 0.0); }
	static RenyiOrder one() { return RenyiOrder(Kind::one, 1.0); }
	static RenyiOrder infinity() { return RenyiOrder(Kind::infinity, 0.0); }
	/// alpha > 0, alpha != 1.
	static RenyiOrder finite(double alpha);
	/// "0", "1", "inf", a decimal like "1.5", or a fraction like "3/2".
	static RenyiOrder parse(std::string_view text);

	Kind kind() const { return kind_; }
	/// Meaningful for Kind::finite (and 1 for Kind::one).
	double alpha() const { return alpha_; }
	/// True for the orders on which entropy powers are defined here (1 and finite alpha > 1).
	bool admits_entropy_power() const;
	bool at_least_one() const;
	std::string to_string() const;

	friend bool operator==(const RenyiOrder&, const RenyiOrder&) = default;

private:
	RenyiOrder(Kind kind, double alpha) : kind_(kind), alpha_(alpha) {}

	Kind kind_;
	double alpha_;
};

std::vector<RenyiOrder> parse_orders(std::string_view comma_separated);

/// Natural-log Rényi entropy of a probability mass function. Rejects inputs
/// whose total mass is not exactly 1.
Real renyi_entropy(const IntegerPmf& f, RenyiOrder order);

/// exp((1 + alpha) H_alpha(f)). Defined for alpha = 1 and finite alpha > 1;
/// alpha = ∞ and alpha < 1 are rejected.
Real entropy_power(const IntegerPmf& f, RenyiOrder order);

/// Given f ≺ g (checked; PreconditionError otherwise), returns whether
/// H_alpha(f) >= H_alpha(g) - tolerance at every requested order.
bool schur_convexity_check(const IntegerPmf& f, const IntegerPmf& g, std::span<const RenyiOrder> orders,
	double tolerance = kDefaultTolerance);

/// One evaluated inequality lhs >= rhs - tolerance.
struct InequalityRecord {
	RenyiOrder order = RenyiOrder::one();
	Real lhs;
	Real rhs;
	Real margin;  // lhs - rhs
	bool verdict = false;
};

nlohmann::json to_json(const InequalityRecord& r, double tolerance);

/// N(X+Y) + 1 versus N(X) + N(Y) for independent X ~ x, Y ~ y.
InequalityRecord epi_evaluate(const IntegerPmf& x, const IntegerPmf& y, RenyiOrder order, double tolerance);

/// The min-entropy form used where entropy powers are not defined:
/// H_∞(X+Y) versus H_∞(X^# + Y^#).
InequalityRecord hash_entropy_evaluate(const IntegerPmf& x, const IntegerPmf& y, RenyiOrder order,
	double tolerance);

/// X uniform on {0..n-1}, Y uniform on {0..m-1}; the sum is convolved exactly.
InequalityRecord uniform_epi_evaluate(std::int64_t n, std::int64_t m, RenyiOrder order, double tolerance);
bool uniform_epi_check(std::int64_t n, std::int64_t m, RenyiOrder order, double tolerance = kDefaultTolerance);

using LatticePoint = std::vector<std::int64_t>;

/// Finitely supported, strictly positive function on Z^d. Points are kept in
/// lexicographic order without duplicates.
class LatticePmf {
public:
	LatticePmf(std::vector<LatticePoint> points, std::vector<Rational> mass);
	/// Uniform probability on a finite nonempty set of points.
	static LatticePmf uniform(std::vector<LatticePoint> points);

	std::size_t dimension() const { return points_.front().size(); }
	std::size_t size() const { return points_.size(); }
	const std::vector<LatticePoint>& points() const { return points_; }
	const std::vector<Rational>& mass() const { return mass_; }
	bool is_uniform() const;

	friend bool operator==(const LatticePmf&, const LatticePmf&) = default;

private:
	std::vector<LatticePoint> points_;
	std::vector<Rational> mass_;
};

LatticePmf convolve(const LatticePmf& f, const LatticePmf& g);
/// Translates so that every coordinate's minimum is 0.
LatticePmf shift_to_nonnegative(const LatticePmf& f);

/// Radix-q flattening z -> z_1 q^{d-1} + ... + z_d. Coordinates must lie in
/// [0, q); otherwise the map is not carry-free and InvalidInput is thrown.
IntegerPmf qary_embed(const LatticePmf& f, std::int64_t q);

/// Smallest carry-free radix for the pair: 1 + the largest coordinate that
/// occurs in the sumset of the (already nonnegative) supports.
std::int64_t carry_free_radix(const LatticePmf& a, const LatticePmf& b);

struct LatticeEpiRecord {
	InequalityRecord inequality;
	std::int64_t radix = 0;
	/// embed(A) ⋆ embed(B) == embed(A ⋆ B) after shifting.
	bool carry_free = false;
};

/// Uniform A and B in Z^d: shifts both to nonnegative coordinates, embeds with
/// the smallest carry-free radix and evaluates the integer inequality. For
/// alpha = ∞ the min-entropy form is evaluated instead.
LatticeEpiRecord lattice_epi_evaluate(const LatticePmf& a, const LatticePmf& b, RenyiOrder order,
	double tolerance);
bool lattice_epi_check(const LatticePmf& a, const LatticePmf& b, RenyiOrder order,
	double tolerance = kDefaultTolerance);

/// {"A": [[x, y, ...], ...], "B": [[...], ...]}, each a set of points of one dimension.
std::pair<LatticePmf, LatticePmf> lattice_pair_from_json(const nlohmann::json& j);

/// Fixed 12-significant-digit rendering used in every report.
std::string format_real(const Real& x);

}  // namespace sepi
