#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "sperner_epi/entropy.hpp"
#include "sperner_epi/execution.hpp"
#include "sperner_epi/pmf.hpp"

namespace sepi {

enum class Verdict { pass, fail };

/// Outcome of one theorem check. A failing report always carries the full
/// exact instance and the violated condition, so it can be replayed alone.
struct VerificationReport {
	std::string theorem;
	nlohmann::json instance;
	Verdict verdict = Verdict::pass;
	std::optional<nlohmann::json> counterexample;
	/// Extra facts about a passing check (e.g. the extremal value reached).
	std::optional<nlohmann::json> details;
	std::uint64_t seed = 0;
	std::chrono::nanoseconds elapsed{0};

	bool passed() const { return verdict == Verdict::pass; }
};

/// Timing is left out unless requested so that repeated runs are byte-identical.
nlohmann::json to_json(const VerificationReport& r, bool include_timing = false);

/// X_1 + ... + X_N ≺ X_1^# + ... + X_N^#. Every input must be #-log-concave
/// (PreconditionError otherwise).
VerificationReport check_theorem_main1(std::span<const IntegerPmf> fs);

/// A_1 ⋆ ... ⋆ A_N ≺ A_1^# ⋆ ... ⋆ A_N^# for indicator functions.
VerificationReport check_corollary_sets(std::span<const std::vector<std::int64_t>> sets);

/// Exact pmf of a_1 Y_1 + ... + a_N Y_N with Y_i ~ Binomial(m_i, 1/2) independent.
IntegerPmf weighted_binomial_sum_pmf(std::span<const std::int64_t> weights, std::span<const int> m_vector);

/// a_1 Y_1 + ... + a_N Y_N ≺ Y_1 + 2 Y_2 + ... + N Y_N for 0 < a_1 < ... < a_N and
/// m_1 >= ... >= m_N >= 1 (both checked).
VerificationReport check_theorem_main2(std::span<const std::int64_t> weights, std::span<const int> m_vector);

/// Every set of N distinct weights in [1, weight_bound] and every k:
/// P(sum = k) <= P(Y_1 + 2 Y_2 + ... + N Y_N = floor(mN(N+1)/4)), with
/// Y_i i.i.d. Binomial(m, 1/2). Also checks that the canonical pmf peaks at that midpoint.
VerificationReport check_corollary_erdos_moser(int n, int m, int weight_bound);

/// H_alpha(X_1 + ... + X_N) >= H_alpha(X_1^# + ... + X_N^#) at every order, and
/// consistency with the majorization verdict.
VerificationReport check_prop_entropy_hash(std::span<const IntegerPmf> fs, std::span<const RenyiOrder> orders,
	double tolerance = kDefaultTolerance);
/// H_alpha(a_1 Y_1 + ... + a_N Y_N) >= H_alpha(Y_1 + ... + N Y_N) at every order.
VerificationReport check_prop_entropy_weights(std::span<const std::int64_t> weights, std::span<const int> m_vector,
	std::span<const RenyiOrder> orders, double tolerance = kDefaultTolerance);

/// Splits Y_i ~ Binomial(m_i, 1/2) into Bernoulli columns: column j (1-based)
/// holds the bits of Y_1, ..., Y_{n_j} with n_j = #{i : m_i >= j}. Requires
/// m nonincreasing.
std::vector<int> bernoulli_columns(std::span<const int> m_vector);

/// The same distribution as weighted_binomial_sum_pmf, counted from level sets
/// of M(n_1) × ... × M(n_c): P(Y = x) = |L[x]| / 2^(n_1 + ... + n_c).
IntegerPmf level_set_pmf(std::span<const std::int64_t> weights, std::span<const int> m_vector);

struct SweepSummary {
	std::string theorem;
	std::size_t instances = 0;
	std::size_t passes = 0;
	std::size_t fails = 0;
	std::uint64_t seed = 0;
	std::chrono::nanoseconds elapsed{0};
	std::vector<VerificationReport> reports;
};

std::string csv_header();
/// theorem,instances,passes,fails,seed,elapsed; elapsed (seconds) is empty
/// unless include_timing.
std::string to_csv_row(const SweepSummary& s, bool include_timing = false);

struct Main1SweepConfig {
	std::size_t trials = 1000;
	std::vector<int> n_choices{2, 3};
	int support_max = 8;
	int gap_max = 5;
	int mass_bound = 8;
	std::uint64_t seed = 20240601;
};

/// Instance i depends only on (seed, i).
std::vector<std::vector<IntegerPmf>> main1_instances(const Main1SweepConfig& cfg);

SweepSummary sweep_main1(const Main1SweepConfig& cfg, Execution exec = Execution::parallel);
/// All ordered pairs of nonempty subsets of {lo, ..., hi}.
SweepSummary sweep_sets(std::int64_t lo, std::int64_t hi, Execution exec = Execution::parallel);
/// All strictly increasing weight tuples with entries <= weight_bound, for each m-vector.
SweepSummary sweep_main2(int weight_bound, std::span<const std::vector<int>> m_vectors,
	Execution exec = Execution::parallel);
std::vector<std::vector<std::int64_t>> increasing_weight_tuples(int n, int weight_bound);

SweepSummary sweep_entropy_main1(const Main1SweepConfig& cfg, std::span<const RenyiOrder> orders, double tolerance,
	Execution exec = Execution::parallel);
SweepSummary sweep_entropy_main2(int weight_bound, std::span<const std::vector<int>> m_vectors,
	std::span<const RenyiOrder> orders, double tolerance, Execution exec = Execution::parallel);

}  // namespace sepi
