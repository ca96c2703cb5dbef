#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>
#include <json.hpp>

#include "sperner_epi/execution.hpp"
#include "sperner_epi/pmf.hpp"
#include "sperner_epi/rational.hpp"

namespace sepi {

/// Sorted, duplicate-free list of element indices.
using ElementSet = std::vector<std::size_t>;

/// A finite graded poset with positive rational weights.
///
/// Built from any list of strict comparabilities a < b: the transitive closure
/// is formed, antisymmetry is checked, covers are recovered by transitive
/// reduction and the rank function is derived from the covers. Construction
/// fails unless the poset is graded, i.e. every cover raises the rank by one
/// and every maximal element has the same rank.
class WeightedPoset {
public:
	WeightedPoset(std::vector<std::string> names, std::vector<Rational> weights,
		std::span<const std::pair<std::size_t, std::size_t>> less_than);

	std::size_t size() const { return names_.size(); }
	const std::string& name(std::size_t i) const { return names_[i]; }
	const Rational& weight(std::size_t i) const { return weights_[i]; }
	int rank(std::size_t i) const { return ranks_[i]; }
	/// Rank of the maximal elements; the number of ranks is max_rank() + 1.
	int max_rank() const { return max_rank_; }
	int rank_count() const { return max_rank_ + 1; }

	const std::vector<std::size_t>& covers_up(std::size_t i) const { return up_covers_[i]; }
	const std::vector<std::size_t>& covers_down(std::size_t i) const { return down_covers_[i]; }
	/// Elements strictly above / below i.
	const boost::dynamic_bitset<>& above(std::size_t i) const { return above_[i]; }
	const boost::dynamic_bitset<>& below(std::size_t i) const { return below_[i]; }

	bool leq(std::size_t a, std::size_t b) const { return a == b || above_[a][b]; }
	bool comparable(std::size_t a, std::size_t b) const { return leq(a, b) || leq(b, a); }

	/// N_r, in index order.
	ElementSet level(int r) const;
	/// Weighted Whitney numbers indexed by rank.
	std::vector<Rational> whitney() const;
	Rational total_weight() const;
	Rational weight_of(const ElementSet& set) const;
	std::optional<std::size_t> index_of(const std::string& name) const;
	/// All cover pairs (a, b) with b covering a, ordered by a then b.
	std::vector<std::pair<std::size_t, std::size_t>> cover_pairs() const;

private:
	std::vector<std::string> names_;
	std::vector<Rational> weights_;
	std::vector<boost::dynamic_bitset<>> above_;
	std::vector<boost::dynamic_bitset<>> below_;
	std::vector<std::vector<std::size_t>> up_covers_;
	std::vector<std::vector<std::size_t>> down_covers_;
	std::vector<int> ranks_;
	int max_rank_ = 0;
};

/// {"elements": [names], "covers": [[a, b], ...], "weights": {"name": "p/q"}}.
/// Missing weights default to 1.
WeightedPoset poset_from_json(const nlohmann::json& j);
nlohmann::json to_json(const WeightedPoset& p);

/// Chain 0 < 1 < ... < n-1 with the given weights.
WeightedPoset chain(std::span<const Rational> weights);
WeightedPoset unit_chain(std::size_t length);
/// The support of f as a chain, weighted by f; ranks are positions, which is
/// the isomorphism onto the chain of hash_rearrange(f).
WeightedPoset chain_poset_of(const IntegerPmf& f);

/// Componentwise order, product weights, rank = sum of ranks. Element
/// (i_1, ..., i_N) has index i_1 |P_2|...|P_N| + ... + i_N.
WeightedPoset product(const WeightedPoset& p, const WeightedPoset& q);
WeightedPoset product_all(std::span<const WeightedPoset> factors);

/// S(n_1, ..., n_N): the product of unit chains with n_i + 1 elements.
WeightedPoset chain_product(std::span<const int> ns);
/// B_n, the product of n two-element chains.
WeightedPoset boolean_lattice(int n);

/// A subset of {1, ..., m} written as the nondecreasing m-tuple
/// (0, ..., 0, s_1, ..., s_j) of its elements after leading zeros.
struct MElement {
	std::vector<int> entries;

	/// bits[i-1] == 1 iff i belongs to the subset.
	static MElement from_bits(std::span<const int> bits);
	static MElement from_mask(int m, std::uint64_t mask);
	std::vector<int> bits() const;
	std::uint64_t mask() const;
	int rank() const;
	bool leq(const MElement& other) const;
	std::string to_string() const;

	friend bool operator==(const MElement&, const MElement&) = default;
};

/// M(m): the 2^m subsets of {1..m} under componentwise order of their tuples,
/// unit weights, ranked by element sum. Element index = subset bitmask.
WeightedPoset build_M(int m);

/// Bijection {0,1}^m -> M(m).
MElement encode_bernoulli_vector(std::span<const int> bits);

/// Every element covering a member of A. A must lie within one rank.
ElementSet upper_shade(const WeightedPoset& p, const ElementSet& a);

bool is_antichain(const WeightedPoset& p, const ElementSet& a);

struct NormalityViolation {
	int rank = 0;
	ElementSet subset;
};

/// Exhaustive check of w(A)/w(N_r) <= w(∇A)/w(N_{r+1}) over all nonempty
/// A ⊆ N_r. Refuses (BudgetExceeded) when a level has more than size_cap
/// elements.
std::optional<NormalityViolation> find_normality_violation(const WeightedPoset& p, std::size_t size_cap = 20);
bool is_normal(const WeightedPoset& p, std::size_t size_cap = 20);

bool is_rank_symmetric(std::span<const Rational> profile);
bool is_rank_unimodal(std::span<const Rational> profile);

/// Exhaustive k-family search is refused above this many elements.
inline constexpr std::size_t kDefaultSearchBudget = 25;

/// Largest total weight of a k-family, i.e. of a subset containing no chain of
/// k + 1 elements. Exact branch and bound; the parallel kernel splits the
/// search tree over OpenMP threads and returns the same value as the serial one.
Rational max_k_family_weight(const WeightedPoset& p, int k, Execution exec = Execution::parallel,
	std::size_t budget = kDefaultSearchBudget);

/// Sum of the k largest weighted Whitney numbers.
Rational top_k_whitney_sum(const WeightedPoset& p, int k);

bool is_k_sperner(const WeightedPoset& p, int k, Execution exec = Execution::parallel,
	std::size_t budget = kDefaultSearchBudget);
/// k-Sperner for k = 1, ..., rank_count(); larger k hold trivially.
bool is_strongly_sperner(const WeightedPoset& p, Execution exec = Execution::parallel,
	std::size_t budget = kDefaultSearchBudget);
bool is_peck(const WeightedPoset& p, Execution exec = Execution::parallel,
	std::size_t budget = kDefaultSearchBudget);

/// L[x] for independent f_1, ..., f_N: tuples of support points summing to x,
/// together with their images in product_all(chain_poset_of(f_i)).
struct ChainLevelSet {
	std::vector<std::vector<std::int64_t>> tuples;
	ElementSet elements;
};

WeightedPoset chain_product_of(std::span<const IntegerPmf> fs);
ChainLevelSet level_set_chainproduct(std::span<const IntegerPmf> fs, std::int64_t x);

/// L[x] in M(m_1) × ... × M(m_N): factor j carries m_j Bernoulli bits with
/// strictly increasing positive weights weights[j]; a product element belongs
/// to L[x] when the weighted bit sum over all factors equals x.
struct MLevelSet {
	std::vector<std::vector<MElement>> tuples;
	ElementSet elements;
};

WeightedPoset m_product(std::span<const int> m_vector);
MLevelSet level_set_M(std::span<const std::vector<std::int64_t>> weights, std::span<const int> m_vector,
	std::int64_t x);

}  // namespace sepi
