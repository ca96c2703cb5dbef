#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <json.hpp>

#include "sperner_epi/rational.hpp"

namespace sepi {

/// A finitely supported, strictly positive function on the integers.
///
/// The support is stored strictly increasing and every stored mass is > 0, so
/// the stored support is exactly Supp(f). An empty support is not
/// representable. When total() == 1 the function is a probability mass
/// function; this is queryable but not enforced.
class IntegerPmf {
public:
	/// Validates and takes ownership. Throws InvalidInput on empty input, length
	/// mismatch, non-increasing support or a non-positive mass.
	IntegerPmf(std::vector<std::int64_t> support, std::vector<Rational> mass);

	static IntegerPmf point_mass(std::int64_t at, Rational mass = Rational(1));
	/// Indicator of a finite set (any order, no duplicates).
	static IntegerPmf indicator(std::span<const std::int64_t> set);
	/// Uniform probability on a finite set (any order, no duplicates).
	static IntegerPmf uniform(std::span<const std::int64_t> set);
	/// Uniform probability on {0, ..., n-1}.
	static IntegerPmf uniform_range(std::int64_t n);
	/// values[i] is the mass at offset + i; zero entries are dropped.
	static IntegerPmf from_dense(std::int64_t offset, std::span<const Rational> values);
	/// Binomial(m, 1/2) on {0, ..., m}.
	static IntegerPmf binomial_half(int m);

	const std::vector<std::int64_t>& support() const { return support_; }
	const std::vector<Rational>& mass() const { return mass_; }
	const Rational& total() const { return total_; }
	std::size_t size() const { return support_.size(); }
	bool is_probability() const { return total_ == 1; }

	std::int64_t min_point() const { return support_.front(); }
	std::int64_t max_point() const { return support_.back(); }
	Rational mass_at(std::int64_t x) const;
	Rational max_mass() const;

	friend bool operator==(const IntegerPmf&, const IntegerPmf&) = default;

private:
	std::vector<std::int64_t> support_;
	std::vector<Rational> mass_;
	Rational total_;
};

/// Outcome of a majorization comparison f ≺ g.
struct MajorizationVerdict {
	bool holds = false;
	/// First 1-based prefix length k at which the descending prefix sum of f
	/// exceeds that of g.
	std::optional<std::size_t> failing_k;
	bool totals_equal = false;
};

/// Moves the mass sequence onto {0, ..., n}, keeping its order.
IntegerPmf hash_rearrange(const IntegerPmf& f);

/// a_r^2 >= a_{r-1} a_{r+1} for every interior r of the given sequence.
bool is_log_concave(std::span<const Rational> values);
bool is_hash_log_concave(const IntegerPmf& f);

IntegerPmf convolve(const IntegerPmf& f, const IntegerPmf& g);
/// Left fold of convolve over a nonempty list.
IntegerPmf convolve_all(std::span<const IntegerPmf> fs);

std::vector<Rational> sorted_values_desc(const IntegerPmf& f);

/// f ≺ g. The shorter descending value list is padded with zeros.
MajorizationVerdict majorizes(const IntegerPmf& f, const IntegerPmf& g);

/// Deterministic in seed. Gaps between support points are uniform in
/// [1, max_gap]; consecutive mass ratios are fractions p/q with
/// 1 <= p, q <= mass_bound sorted nonincreasing, which makes the mass sequence
/// log-concave. The result is normalized to total 1.
IntegerPmf random_hash_log_concave(int support_size, int max_gap, int mass_bound, std::uint64_t seed);

/// Distribution of a·Y from that of Y; a must be >= 1.
IntegerPmf scale_support(const IntegerPmf& f, std::int64_t a);
IntegerPmf translate(const IntegerPmf& f, std::int64_t shift);
IntegerPmf normalized(const IntegerPmf& f);

/// {"support": [ints], "mass": ["p/q", ...]}
nlohmann::json to_json(const IntegerPmf& f);
IntegerPmf pmf_from_json(const nlohmann::json& j);

nlohmann::json to_json(const MajorizationVerdict& v);

}  // namespace sepi
