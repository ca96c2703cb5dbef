#include "sperner_epi/verify.hpp"

#include <algorithm>
#include <exception>
#include <mutex>
#include <sstream>

#include <omp.h>

#include "sperner_epi/errors.hpp"
#include "sperner_epi/poset.hpp"
#include "sperner_epi/random.hpp"

namespace sepi {

namespace {

using Clock = std::chrono::steady_clock;

nlohmann::json pmf_list_json(std::span<const IntegerPmf> fs) {
	nlohmann::json arr = nlohmann::json::array();
	for(const auto& f : fs) {
		arr.push_back(to_json(f));
	}
	return arr;
}

nlohmann::json orders_json(std::span<const RenyiOrder> orders) {
	nlohmann::json arr = nlohmann::json::array();
	for(const auto& o : orders) {
		arr.push_back(o.to_string());
	}
	return arr;
}

VerificationReport majorization_report(std::string theorem, nlohmann::json instance, const IntegerPmf& lhs,
	const IntegerPmf& rhs) {
	VerificationReport rep;
	rep.theorem = std::move(theorem);
	rep.instance = std::move(instance);
	const auto v = majorizes(lhs, rhs);
	if(v.holds) {
		rep.verdict = Verdict::pass;
	} else {
		rep.verdict = Verdict::fail;
		rep.counterexample = nlohmann::json{
			{"condition", v.totals_equal ? "descending prefix sum" : "total mass"},
			{"failing_k", v.failing_k ? nlohmann::json(*v.failing_k) : nlohmann::json(nullptr)},
			{"lhs", to_json(lhs)},
			{"rhs", to_json(rhs)},
		};
	}
	return rep;
}

// Entropy comparison at each order plus the majorization coupling.
VerificationReport entropy_report(std::string theorem, nlohmann::json instance, const IntegerPmf& lhs_raw,
	const IntegerPmf& rhs_raw, std::span<const RenyiOrder> orders, double tolerance) {
	const auto lhs = normalized(lhs_raw);
	const auto rhs = normalized(rhs_raw);
	const auto maj = majorizes(lhs, rhs);

	VerificationReport rep;
	rep.theorem = std::move(theorem);
	rep.instance = std::move(instance);
	nlohmann::json records = nlohmann::json::array();
	std::optional<RenyiOrder> first_failure;
	for(const auto& order : orders) {
		InequalityRecord r;
		r.order = order;
		r.lhs = renyi_entropy(lhs, order);
		r.rhs = renyi_entropy(rhs, order);
		r.margin = r.lhs - r.rhs;
		r.verdict = r.margin >= -tolerance;
		if(!r.verdict && !first_failure) {
			first_failure = order;
		}
		records.push_back(to_json(r, tolerance));
	}
	rep.details = nlohmann::json{{"majorization_holds", maj.holds}, {"entropies", records}};
	if(first_failure) {
		rep.verdict = Verdict::fail;
		rep.counterexample = nlohmann::json{
			{"condition", "entropy comparison"},
			{"order", first_failure->to_string()},
			{"coupling_violation", maj.holds},
			{"entropies", records},
			{"lhs", to_json(lhs)},
			{"rhs", to_json(rhs)},
		};
	}
	return rep;
}

void require_hash_log_concave(std::span<const IntegerPmf> fs) {
	if(fs.empty()) {
		throw InvalidInput("theorem check needs at least one function");
	}
	for(std::size_t i = 0; i < fs.size(); ++i) {
		if(!is_hash_log_concave(fs[i])) {
			throw PreconditionError("function " + std::to_string(i) + " is not #-log-concave");
		}
	}
}

void require_main2_hypotheses(std::span<const std::int64_t> weights, std::span<const int> m_vector) {
	if(weights.empty() || weights.size() != m_vector.size()) {
		throw InvalidInput("weights and m-vector must be nonempty and of equal length");
	}
	for(std::size_t i = 0; i < weights.size(); ++i) {
		if(weights[i] <= 0 || (i > 0 && weights[i - 1] >= weights[i])) {
			throw PreconditionError("weights must satisfy 0 < a_1 < ... < a_N");
		}
		if(m_vector[i] < 1 || (i > 0 && m_vector[i - 1] < m_vector[i])) {
			throw PreconditionError("m-vector must satisfy m_1 >= ... >= m_N >= 1");
		}
	}
}

std::vector<std::int64_t> canonical_weights(std::size_t n) {
	std::vector<std::int64_t> w(n);
	for(std::size_t i = 0; i < n; ++i) {
		w[i] = static_cast<std::int64_t>(i) + 1;
	}
	return w;
}

template <typename Fn>
std::vector<VerificationReport> run_indexed(std::size_t count, Fn&& fn, Execution exec) {
	std::vector<VerificationReport> out(count);
	if(exec == Execution::serial) {
		for(std::size_t i = 0; i < count; ++i) {
			out[i] = fn(i);
		}
		return out;
	}
	std::exception_ptr error;
	std::mutex error_mutex;
#pragma omp parallel for schedule(dynamic)
	for(std::int64_t i = 0; i < static_cast<std::int64_t>(count); ++i) {
		try {
			out[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
		} catch(...) {
			std::lock_guard lock(error_mutex);
			if(!error) {
				error = std::current_exception();
			}
		}
	}
	if(error) {
		std::rethrow_exception(error);
	}
	return out;
}

SweepSummary summarize(std::string theorem, std::uint64_t seed, std::vector<VerificationReport> reports,
	Clock::time_point start) {
	SweepSummary s;
	s.theorem = std::move(theorem);
	s.seed = seed;
	s.instances = reports.size();
	for(const auto& r : reports) {
		(r.passed() ? s.passes : s.fails) += 1;
	}
	s.reports = std::move(reports);
	s.elapsed = Clock::now() - start;
	return s;
}

template <typename Fn>
VerificationReport timed(Fn&& fn) {
	const auto start = Clock::now();
	VerificationReport rep = fn();
	rep.elapsed = Clock::now() - start;
	return rep;
}

}  // namespace

nlohmann::json to_json(const VerificationReport& r, bool include_timing) {
	nlohmann::json j{
		{"theorem", r.theorem},
		{"instance", r.instance},
		{"verdict", r.passed() ? "pass" : "fail"},
		{"seed", r.seed},
	};
	j["counterexample"] = r.counterexample ? *r.counterexample : nlohmann::json(nullptr);
	if(r.details) {
		j["details"] = *r.details;
	}
	if(include_timing) {
		j["elapsed_seconds"] = std::chrono::duration<double>(r.elapsed).count();
	}
	return j;
}

VerificationReport check_theorem_main1(std::span<const IntegerPmf> fs) {
	require_hash_log_concave(fs);
	return timed([&] {
		std::vector<IntegerPmf> hashed;
		for(const auto& f : fs) {
			hashed.push_back(hash_rearrange(f));
		}
		return majorization_report("main1", {{"functions", pmf_list_json(fs)}}, convolve_all(fs), convolve_all(hashed));
	});
}

VerificationReport check_corollary_sets(std::span<const std::vector<std::int64_t>> sets) {
	if(sets.empty()) {
		throw InvalidInput("set corollary needs at least one set");
	}
	return timed([&] {
		std::vector<IntegerPmf> fs;
		std::vector<IntegerPmf> hashed;
		for(const auto& s : sets) {
			if(s.empty()) {
				throw InvalidInput("set corollary needs nonempty sets");
			}
			fs.push_back(IntegerPmf::indicator(s));
			// A^# = {0, ..., |A|-1} with unit masses.
			hashed.push_back(hash_rearrange(fs.back()));
		}
		return majorization_report("sets", {{"sets", sets}}, convolve_all(fs), convolve_all(hashed));
	});
}

IntegerPmf weighted_binomial_sum_pmf(std::span<const std::int64_t> weights, std::span<const int> m_vector) {
	if(weights.empty() || weights.size() != m_vector.size()) {
		throw InvalidInput("weights and m-vector must be nonempty and of equal length");
	}
	std::vector<IntegerPmf> terms;
	for(std::size_t i = 0; i < weights.size(); ++i) {
		if(weights[i] <= 0) {
			throw InvalidInput("weights must be positive");
		}
		if(m_vector[i] < 1) {
			throw InvalidInput("binomial sizes must be >= 1");
		}
		terms.push_back(scale_support(IntegerPmf::binomial_half(m_vector[i]), weights[i]));
	}
	return convolve_all(terms);
}

VerificationReport check_theorem_main2(std::span<const std::int64_t> weights, std::span<const int> m_vector) {
	require_main2_hypotheses(weights, m_vector);
	return timed([&] {
		const auto canon = canonical_weights(weights.size());
		return majorization_report("main2",
			{{"weights", std::vector<std::int64_t>(weights.begin(), weights.end())},
				{"m_vector", std::vector<int>(m_vector.begin(), m_vector.end())}},
			weighted_binomial_sum_pmf(weights, m_vector), weighted_binomial_sum_pmf(canon, m_vector));
	});
}

VerificationReport check_corollary_erdos_moser(int n, int m, int weight_bound) {
	if(n < 1 || m < 1 || weight_bound < n) {
		throw InvalidInput("Erdos-Moser check needs N >= 1, m >= 1 and weight_bound >= N");
	}
	return timed([&] {
		VerificationReport rep;
		rep.theorem = "erdos-moser";
		rep.instance = {{"n", n}, {"m", m}, {"weight_bound", weight_bound}};

		const std::vector<int> ms(static_cast<std::size_t>(n), m);
		const auto canon = weighted_binomial_sum_pmf(canonical_weights(static_cast<std::size_t>(n)), ms);
		const std::int64_t midpoint = static_cast<std::int64_t>(m) * n * (n + 1) / 4;
		const Rational bound = canon.mass_at(midpoint);
		if(canon.max_mass() != bound) {
			rep.verdict = Verdict::fail;
			rep.counterexample = nlohmann::json{
				{"condition", "canonical maximum not at midpoint"},
				{"midpoint", midpoint},
				{"canonical", to_json(canon)},
			};
			return rep;
		}

		Rational best = 0;
		std::vector<std::int64_t> best_weights;
		std::int64_t best_k = 0;
		const auto tuples = increasing_weight_tuples(n, weight_bound);
		for(const auto& w : tuples) {
			const auto pmf = weighted_binomial_sum_pmf(w, ms);
			for(std::size_t i = 0; i < pmf.size(); ++i) {
				if(pmf.mass()[i] > best) {
					best = pmf.mass()[i];
					best_weights = w;
					best_k = pmf.support()[i];
				}
				if(pmf.mass()[i] > bound) {
					rep.verdict = Verdict::fail;
					rep.counterexample = nlohmann::json{
						{"condition", "point probability above canonical midpoint"},
						{"weights", w},
						{"k", pmf.support()[i]},
						{"probability", to_string(pmf.mass()[i])},
						{"bound", to_string(bound)},
					};
					return rep;
				}
			}
		}
		rep.details = nlohmann::json{
			{"midpoint", midpoint},
			{"bound", to_string(bound)},
			{"weight_sets_checked", tuples.size()},
			{"max_point_probability", to_string(best)},
			{"argmax_weights", best_weights},
			{"argmax_k", best_k},
		};
		return rep;
	});
}

VerificationReport check_prop_entropy_hash(std::span<const IntegerPmf> fs, std::span<const RenyiOrder> orders,
	double tolerance) {
	require_hash_log_concave(fs);
	return timed([&] {
		std::vector<IntegerPmf> hashed;
		for(const auto& f : fs) {
			hashed.push_back(hash_rearrange(f));
		}
		return entropy_report("entropy-hash",
			{{"functions", pmf_list_json(fs)}, {"orders", orders_json(orders)}, {"tolerance", tolerance}},
			convolve_all(fs), convolve_all(hashed), orders, tolerance);
	});
}

VerificationReport check_prop_entropy_weights(std::span<const std::int64_t> weights, std::span<const int> m_vector,
	std::span<const RenyiOrder> orders, double tolerance) {
	require_main2_hypotheses(weights, m_vector);
	return timed([&] {
		const auto canon = canonical_weights(weights.size());
		return entropy_report("entropy-weights",
			{{"weights", std::vector<std::int64_t>(weights.begin(), weights.end())},
				{"m_vector", std::vector<int>(m_vector.begin(), m_vector.end())},
				{"orders", orders_json(orders)},
				{"tolerance", tolerance}},
			weighted_binomial_sum_pmf(weights, m_vector), weighted_binomial_sum_pmf(canon, m_vector), orders, tolerance);
	});
}

std::vector<int> bernoulli_columns(std::span<const int> m_vector) {
	if(m_vector.empty()) {
		throw InvalidInput("empty m-vector");
	}
	for(std::size_t i = 0; i < m_vector.size(); ++i) {
		if(m_vector[i] < 1 || (i > 0 && m_vector[i - 1] < m_vector[i])) {
			throw PreconditionError("m-vector must satisfy m_1 >= ... >= m_N >= 1");
		}
	}
	std::vector<int> cols;
	for(int j = 1; j <= m_vector.front(); ++j) {
		cols.push_back(static_cast<int>(std::count_if(m_vector.begin(), m_vector.end(), [j](int mi) { return mi >= j; })));
	}
	return cols;
}

IntegerPmf level_set_pmf(std::span<const std::int64_t> weights, std::span<const int> m_vector) {
	if(weights.size() != m_vector.size()) {
		throw InvalidInput("weights and m-vector must have equal length");
	}
	const auto cols = bernoulli_columns(m_vector);
	std::vector<std::vector<std::int64_t>> col_weights;
	int bits = 0;
	for(int nj : cols) {
		col_weights.emplace_back(weights.begin(), weights.begin() + nj);
		bits += nj;
	}
	std::int64_t top = 0;
	for(std::size_t i = 0; i < weights.size(); ++i) {
		top += weights[i] * m_vector[i];
	}
	std::vector<Rational> dense(static_cast<std::size_t>(top) + 1);
	const BigInt outcomes = BigInt(1) << bits;
	for(std::int64_t x = 0; x <= top; ++x) {
		const auto level = level_set_M(col_weights, cols, x);
		dense[static_cast<std::size_t>(x)] = Rational(BigInt(level.elements.size()), outcomes);
	}
	return IntegerPmf::from_dense(0, dense);
}

std::string csv_header() {
	return "theorem,instances,passes,fails,seed,elapsed";
}

std::string to_csv_row(const SweepSummary& s, bool include_timing) {
	std::ostringstream os;
	os << s.theorem << ',' << s.instances << ',' << s.passes << ',' << s.fails << ',' << s.seed << ',';
	if(include_timing) {
		os << std::chrono::duration<double>(s.elapsed).count();
	}
	return os.str();
}

std::vector<std::vector<IntegerPmf>> main1_instances(const Main1SweepConfig& cfg) {
	if(cfg.n_choices.empty() || cfg.support_max < 1 || cfg.gap_max < 1 || cfg.mass_bound < 1) {
		throw InvalidInput("main1 sweep needs N choices, support_max, gap_max, mass_bound >= 1");
	}
	std::vector<std::vector<IntegerPmf>> out;
	out.reserve(cfg.trials);
	for(std::size_t i = 0; i < cfg.trials; ++i) {
		Engine rng = make_engine(cfg.seed, i);
		const auto pick = static_cast<std::size_t>(uniform_draw(rng, 0, static_cast<std::int64_t>(cfg.n_choices.size()) - 1));
		const int n = cfg.n_choices[pick];
		std::vector<IntegerPmf> fs;
		for(int f = 0; f < n; ++f) {
			const auto support = static_cast<int>(uniform_draw(rng, 1, cfg.support_max));
			fs.push_back(random_hash_log_concave(support, cfg.gap_max, cfg.mass_bound, rng()));
		}
		out.push_back(std::move(fs));
	}
	return out;
}

SweepSummary sweep_main1(const Main1SweepConfig& cfg, Execution exec) {
	const auto start = Clock::now();
	const auto instances = main1_instances(cfg);
	auto reports = run_indexed(instances.size(), [&](std::size_t i) {
		auto rep = check_theorem_main1(instances[i]);
		rep.seed = cfg.seed;
		rep.instance["index"] = i;
		return rep;
	}, exec);
	return summarize("main1", cfg.seed, std::move(reports), start);
}

SweepSummary sweep_sets(std::int64_t lo, std::int64_t hi, Execution exec) {
	if(hi < lo || hi - lo >= 20) {
		throw InvalidInput("set sweep universe must have between 1 and 20 points");
	}
	const auto start = Clock::now();
	const std::size_t width = static_cast<std::size_t>(hi - lo + 1);
	const std::size_t subsets = (std::size_t{1} << width) - 1;
	auto decode = [&](std::size_t mask) {
		std::vector<std::int64_t> s;
		for(std::size_t b = 0; b < width; ++b) {
			if((mask >> b) & 1U) {
				s.push_back(lo + static_cast<std::int64_t>(b));
			}
		}
		return s;
	};
	auto reports = run_indexed(subsets * subsets, [&](std::size_t i) {
		const std::vector<std::vector<std::int64_t>> sets{decode(i / subsets + 1), decode(i % subsets + 1)};
		return check_corollary_sets(sets);
	}, exec);
	return summarize("sets", 0, std::move(reports), start);
}

std::vector<std::vector<std::int64_t>> increasing_weight_tuples(int n, int weight_bound) {
	std::vector<std::vector<std::int64_t>> out;
	std::vector<std::int64_t> cur;
	auto rec = [&](auto&& self, std::int64_t next) -> void {
		if(static_cast<int>(cur.size()) == n) {
			out.push_back(cur);
			return;
		}
		for(std::int64_t a = next; a <= weight_bound; ++a) {
			cur.push_back(a);
			self(self, a + 1);
			cur.pop_back();
		}
	};
	if(n >= 1) {
		rec(rec, 1);
	}
	return out;
}

SweepSummary sweep_main2(int weight_bound, std::span<const std::vector<int>> m_vectors, Execution exec) {
	const auto start = Clock::now();
	std::vector<std::pair<std::vector<std::int64_t>, std::vector<int>>> cases;
	for(const auto& mv : m_vectors) {
		for(auto& w : increasing_weight_tuples(static_cast<int>(mv.size()), weight_bound)) {
			cases.emplace_back(std::move(w), mv);
		}
	}
	auto reports = run_indexed(cases.size(), [&](std::size_t i) {
		return check_theorem_main2(cases[i].first, cases[i].second);
	}, exec);
	return summarize("main2", 0, std::move(reports), start);
}

SweepSummary sweep_entropy_main1(const Main1SweepConfig& cfg, std::span<const RenyiOrder> orders, double tolerance,
	Execution exec) {
	const auto start = Clock::now();
	const auto instances = main1_instances(cfg);
	auto reports = run_indexed(instances.size(), [&](std::size_t i) {
		auto rep = check_prop_entropy_hash(instances[i], orders, tolerance);
		rep.seed = cfg.seed;
		rep.instance["index"] = i;
		return rep;
	}, exec);
	return summarize("entropy-hash", cfg.seed, std::move(reports), start);
}

SweepSummary sweep_entropy_main2(int weight_bound, std::span<const std::vector<int>> m_vectors,
	std::span<const RenyiOrder> orders, double tolerance, Execution exec) {
	const auto start = Clock::now();
	std::vector<std::pair<std::vector<std::int64_t>, std::vector<int>>> cases;
	for(const auto& mv : m_vectors) {
		for(auto& w : increasing_weight_tuples(static_cast<int>(mv.size()), weight_bound)) {
			cases.emplace_back(std::move(w), mv);
		}
	}
	auto reports = run_indexed(cases.size(), [&](std::size_t i) {
		return check_prop_entropy_weights(cases[i].first, cases[i].second, orders, tolerance);
	}, exec);
	return summarize("entropy-weights", 0, std::move(reports), start);
}

}  // namespace sepi
