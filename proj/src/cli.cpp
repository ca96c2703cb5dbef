#include "sperner_epi/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "sperner_epi/entropy.hpp"
#include "sperner_epi/errors.hpp"
#include "sperner_epi/pmf.hpp"
#include "sperner_epi/poset.hpp"
#include "sperner_epi/verify.hpp"

namespace sepi::cli {

namespace {

constexpr std::uint64_t kFallbackSeed = 20240601;

struct CliConfig {
	std::uint64_t seed = kFallbackSeed;
	double tolerance = kDefaultTolerance;
	std::string output_path;
	std::string format = "json";
	bool timing = false;
	bool serial = false;
	bool failures_only = false;
};

struct PmfArgs {
	std::vector<std::string> files;
};

struct EntropyArgs {
	std::string order = "1";
	std::string file = "-";
};

struct EpiArgs {
	std::int64_t n = 1;
	std::int64_t m = 1;
	std::string order = "1";
	std::string file;
};

struct PosetArgs {
	std::string file;
	std::string chain_product;
	int m_poset = 0;
	int boolean = 0;
	std::size_t budget = kDefaultSearchBudget;
	std::size_t size_cap = 20;
	bool json = false;
};

struct VerifyArgs {
	std::size_t trials = 1000;
	int support_max = 8;
	int gap_max = 5;
	int mass_bound = 8;
	std::string n_list = "2,3";
	std::string universe = "0..7";
	std::string weights;
	std::string m_vectors = "1,1,1";
	int weight_bound = 8;
	int m = 1;
	std::string orders = "0,0.5,1,2,inf";
	std::string kind = "main1";
};

template <typename T>
std::vector<T> parse_int_list(const std::string& text) {
	std::vector<T> out;
	std::stringstream ss(text);
	std::string item;
	while(std::getline(ss, item, ',')) {
		try {
			std::size_t used = 0;
			const long long v = std::stoll(item, &used);
			if(used != item.size()) {
				throw std::invalid_argument(item);
			}
			out.push_back(static_cast<T>(v));
		} catch(const std::logic_error&) {
			throw InvalidInput("malformed integer list \"" + text + "\"");
		}
	}
	if(out.empty()) {
		throw InvalidInput("empty integer list");
	}
	return out;
}

// "1,1,1;2,1,1" -> {{1,1,1},{2,1,1}}
std::vector<std::vector<int>> parse_m_vectors(const std::string& text) {
	std::vector<std::vector<int>> out;
	std::stringstream ss(text);
	std::string item;
	while(std::getline(ss, item, ';')) {
		out.push_back(parse_int_list<int>(item));
	}
	return out;
}

std::pair<std::int64_t, std::int64_t> parse_universe(const std::string& text) {
	const auto dots = text.find("..");
	if(dots == std::string::npos) {
		throw InvalidInput("universe must look like lo..hi");
	}
	const auto lo = parse_int_list<std::int64_t>(text.substr(0, dots));
	const auto hi = parse_int_list<std::int64_t>(text.substr(dots + 2));
	if(lo.size() != 1 || hi.size() != 1) {
		throw InvalidInput("universe must look like lo..hi");
	}
	return {lo.front(), hi.front()};
}

nlohmann::json read_json(const std::string& path, std::istream& in) {
	try {
		if(path == "-") {
			return nlohmann::json::parse(in);
		}
		std::ifstream file(path);
		if(!file) {
			throw InvalidInput("cannot open \"" + path + "\"");
		}
		return nlohmann::json::parse(file);
	} catch(const nlohmann::json::parse_error& e) {
		throw InvalidInput("invalid JSON in \"" + path + "\": " + e.what());
	}
}

WeightedPoset poset_from_args(const PosetArgs& a, std::istream& in, std::string& description) {
	const int sources = static_cast<int>(!a.file.empty()) + static_cast<int>(!a.chain_product.empty()) +
		static_cast<int>(a.m_poset > 0) + static_cast<int>(a.boolean > 0);
	if(sources != 1) {
		throw InvalidInput("give exactly one of --file, --chain-product, --m-poset, --boolean");
	}
	if(!a.file.empty()) {
		description = a.file;
		return poset_from_json(read_json(a.file, in));
	}
	if(!a.chain_product.empty()) {
		description = "S(" + a.chain_product + ")";
		return chain_product(parse_int_list<int>(a.chain_product));
	}
	if(a.m_poset > 0) {
		description = "M(" + std::to_string(a.m_poset) + ")";
		return build_M(a.m_poset);
	}
	description = "B_" + std::to_string(a.boolean);
	return boolean_lattice(a.boolean);
}

std::string profile_tuple(const std::vector<Rational>& profile) {
	std::string s = "(";
	for(std::size_t i = 0; i < profile.size(); ++i) {
		s += i ? "," : "";
		s += denominator(profile[i]) == 1 ? numerator(profile[i]).str() : to_string(profile[i]);
	}
	return s + ")";
}

nlohmann::json rational_list(const std::vector<Rational>& xs) {
	nlohmann::json arr = nlohmann::json::array();
	for(const auto& x : xs) {
		arr.push_back(to_string(x));
	}
	return arr;
}

class Runner {
public:
	Runner(std::istream& in, std::ostream& out, std::ostream& err) : in_(in), out_(out), err_(err) {}

	int execute(const std::vector<std::string>& args);

private:
	std::ostream& sink() { return file_ ? *file_ : out_; }
	void open_output() {
		if(!cfg_.output_path.empty()) {
			file_ = std::make_unique<std::ofstream>(cfg_.output_path);
			if(!*file_) {
				throw InvalidInput("cannot write \"" + cfg_.output_path + "\"");
			}
		}
	}
	Execution exec() const { return cfg_.serial ? Execution::serial : Execution::parallel; }

	int run_pmf(const std::string& op);
	int run_entropy();
	int run_epi(const std::string& op);
	int run_poset(const std::string& op);
	int run_verify(const std::string& op);
	int emit_sweep(const SweepSummary& s);
	int emit_report(const VerificationReport& r);

	std::istream& in_;
	std::ostream& out_;
	std::ostream& err_;
	std::unique_ptr<std::ofstream> file_;

	CliConfig cfg_;
	PmfArgs pmf_;
	EntropyArgs entropy_;
	EpiArgs epi_;
	PosetArgs poset_;
	VerifyArgs verify_;
};

int Runner::run_pmf(const std::string& op) {
	const std::size_t need = (op == "convolve" || op == "majorize") ? 2 : 1;
	if(pmf_.files.size() != need) {
		throw InvalidInput("pmf " + op + " takes " + std::to_string(need) + " pmf file(s)");
	}
	const auto f = pmf_from_json(read_json(pmf_.files[0], in_));
	if(op == "hash") {
		sink() << to_json(hash_rearrange(f)).dump() << '\n';
		return kSuccess;
	}
	if(op == "is-hash-logconcave") {
		const bool ok = is_hash_log_concave(f);
		sink() << nlohmann::json{{"hash_log_concave", ok}}.dump() << '\n';
		return ok ? kSuccess : kCounterexample;
	}
	const auto g = pmf_from_json(read_json(pmf_.files[1], in_));
	if(op == "convolve") {
		sink() << to_json(convolve(f, g)).dump() << '\n';
		return kSuccess;
	}
	const auto v = majorizes(f, g);
	sink() << to_json(v).dump() << '\n';
	return v.holds ? kSuccess : kCounterexample;
}

int Runner::run_entropy() {
	const auto f = pmf_from_json(read_json(entropy_.file, in_));
	for(const auto& order : parse_orders(entropy_.order)) {
		sink() << nlohmann::json{
			{"order", order.to_string()},
			{"value", format_real(renyi_entropy(f, order))},
			{"tolerance", cfg_.tolerance},
		}.dump() << '\n';
	}
	return kSuccess;
}

int Runner::run_epi(const std::string& op) {
	bool all = true;
	const auto orders = parse_orders(epi_.order);
	if(op == "uniform") {
		for(const auto& order : orders) {
			const auto rec = uniform_epi_evaluate(epi_.n, epi_.m, order, cfg_.tolerance);
			auto j = to_json(rec, cfg_.tolerance);
			j["form"] = order.kind() == RenyiOrder::Kind::infinity ? "min-entropy" : "entropy-power";
			j["n"] = epi_.n;
			j["m"] = epi_.m;
			sink() << j.dump() << '\n';
			all = all && rec.verdict;
		}
		return all ? kSuccess : kCounterexample;
	}
	if(epi_.file.empty()) {
		throw InvalidInput("epi lattice needs --file");
	}
	const auto [a, b] = lattice_pair_from_json(read_json(epi_.file, in_));
	for(const auto& order : orders) {
		const auto rec = lattice_epi_evaluate(a, b, order, cfg_.tolerance);
		auto j = to_json(rec.inequality, cfg_.tolerance);
		j["form"] = order.kind() == RenyiOrder::Kind::infinity ? "min-entropy" : "entropy-power";
		j["radix"] = rec.radix;
		j["carry_free"] = rec.carry_free;
		sink() << j.dump() << '\n';
		all = all && rec.carry_free && rec.inequality.verdict;
	}
	return all ? kSuccess : kCounterexample;
}

int Runner::run_poset(const std::string& op) {
	std::string desc;
	const auto p = poset_from_args(poset_, in_, desc);
	const auto profile = p.whitney();
	if(op == "whitney") {
		if(poset_.json) {
			sink() << nlohmann::json{{"poset", desc}, {"whitney", rational_list(profile)}}.dump() << '\n';
		} else {
			sink() << profile_tuple(profile) << '\n';
		}
		return kSuccess;
	}
	if(op == "normal-check") {
		const auto violation = find_normality_violation(p, poset_.size_cap);
		nlohmann::json j{{"poset", desc}, {"normal", !violation}};
		if(violation) {
			nlohmann::json subset = nlohmann::json::array();
			for(std::size_t e : violation->subset) {
				subset.push_back(p.name(e));
			}
			j["violation"] = {{"rank", violation->rank}, {"subset", subset}};
		}
		sink() << j.dump() << '\n';
		return violation ? kCounterexample : kSuccess;
	}

	std::vector<Rational> best;
	std::vector<Rational> bound;
	bool sperner = true;
	for(int k = 1; k <= p.rank_count(); ++k) {
		best.push_back(max_k_family_weight(p, k, exec(), poset_.budget));
		bound.push_back(top_k_whitney_sum(p, k));
		sperner = sperner && best.back() == bound.back();
	}
	nlohmann::json j{
		{"poset", desc},
		{"whitney", rational_list(profile)},
		{"max_k_family", rational_list(best)},
		{"top_k_whitney", rational_list(bound)},
		{"strongly_sperner", sperner},
	};
	bool ok = sperner;
	if(op == "peck-check") {
		const bool symmetric = is_rank_symmetric(profile);
		const bool unimodal = is_rank_unimodal(profile);
		j["rank_symmetric"] = symmetric;
		j["rank_unimodal"] = unimodal;
		ok = sperner && symmetric && unimodal;
		j["peck"] = ok;
	}
	sink() << j.dump() << '\n';
	return ok ? kSuccess : kCounterexample;
}

int Runner::emit_report(const VerificationReport& r) {
	if(cfg_.format == "csv") {
		SweepSummary s;
		s.theorem = r.theorem;
		s.instances = 1;
		(r.passed() ? s.passes : s.fails) = 1;
		s.seed = r.seed;
		s.elapsed = r.elapsed;
		sink() << csv_header() << '\n' << to_csv_row(s, cfg_.timing) << '\n';
	} else {
		sink() << to_json(r, cfg_.timing).dump() << '\n';
	}
	return r.passed() ? kSuccess : kCounterexample;
}

int Runner::emit_sweep(const SweepSummary& s) {
	if(cfg_.format == "csv") {
		sink() << csv_header() << '\n' << to_csv_row(s, cfg_.timing) << '\n';
	} else {
		for(const auto& r : s.reports) {
			if(!cfg_.failures_only || !r.passed()) {
				sink() << to_json(r, cfg_.timing).dump() << '\n';
			}
		}
	}
	return s.fails == 0 ? kSuccess : kCounterexample;
}

int Runner::run_verify(const std::string& op) {
	Main1SweepConfig main1;
	main1.trials = verify_.trials;
	main1.n_choices = parse_int_list<int>(verify_.n_list);
	main1.support_max = verify_.support_max;
	main1.gap_max = verify_.gap_max;
	main1.mass_bound = verify_.mass_bound;
	main1.seed = cfg_.seed;

	if(op == "main1") {
		return emit_sweep(sweep_main1(main1, exec()));
	}
	if(op == "sets") {
		const auto [lo, hi] = parse_universe(verify_.universe);
		return emit_sweep(sweep_sets(lo, hi, exec()));
	}
	const auto m_vectors = parse_m_vectors(verify_.m_vectors);
	if(op == "main2") {
		if(!verify_.weights.empty()) {
			return emit_report(check_theorem_main2(parse_int_list<std::int64_t>(verify_.weights), m_vectors.front()));
		}
		return emit_sweep(sweep_main2(verify_.weight_bound, m_vectors, exec()));
	}
	if(op == "erdos-moser") {
		const auto ns = parse_int_list<int>(verify_.n_list);
		if(ns.size() != 1) {
			throw InvalidInput("erdos-moser takes a single --n");
		}
		return emit_report(check_corollary_erdos_moser(ns.front(), verify_.m, verify_.weight_bound));
	}
	const auto orders = parse_orders(verify_.orders);
	if(verify_.kind == "main1") {
		return emit_sweep(sweep_entropy_main1(main1, orders, cfg_.tolerance, exec()));
	}
	if(verify_.kind == "main2") {
		if(!verify_.weights.empty()) {
			return emit_report(check_prop_entropy_weights(parse_int_list<std::int64_t>(verify_.weights),
				m_vectors.front(), orders, cfg_.tolerance));
		}
		return emit_sweep(sweep_entropy_main2(verify_.weight_bound, m_vectors, orders, cfg_.tolerance, exec()));
	}
	throw InvalidInput("--kind must be main1 or main2");
}

int Runner::execute(const std::vector<std::string>& args) {
	if(const char* env = std::getenv(kSeedEnvVar)) {
		try {
			cfg_.seed = std::stoull(env);
		} catch(const std::logic_error&) {
			err_ << "ignoring malformed " << kSeedEnvVar << "=" << env << '\n';
		}
	}

	CLI::App app{"Exact majorization, Sperner-poset and Renyi entropy power checks for sums of integer random variables"};
	app.require_subcommand(1);
	app.add_option("--seed", cfg_.seed, std::string("Seed for randomized sweeps (default from ") + kSeedEnvVar + ")");
	app.add_option("--tolerance", cfg_.tolerance, "Absolute tolerance for floating entropy comparisons")
		->check(CLI::NonNegativeNumber);
	app.add_option("--output", cfg_.output_path, "Write results to this file instead of stdout");
	app.add_option("--format", cfg_.format, "Report format: json (JSON lines) or csv (aggregate)")
		->check(CLI::IsMember({"json", "csv"}));
	app.add_flag("--timing", cfg_.timing, "Include elapsed times (breaks byte-identical output)");
	app.add_flag("--serial", cfg_.serial, "Use the serial reference kernels instead of OpenMP");
	app.fallthrough();

	std::string leaf;
	auto leaf_cb = [&leaf](const std::string& name) { return [&leaf, name] { leaf = name; }; };

	auto* pmf = app.add_subcommand("pmf", "Operations on pmf JSON files ({\"support\": [...], \"mass\": [\"p/q\", ...]})");
	pmf->require_subcommand(1);
	for(const char* op : {"hash", "convolve", "majorize", "is-hash-logconcave"}) {
		auto* sub = pmf->add_subcommand(op, std::string("pmf ") + op + "; files may be - for stdin");
		sub->add_option("files", pmf_.files, "pmf JSON file(s)")->required();
		sub->callback(leaf_cb(op));
	}

	auto* entropy = app.add_subcommand("entropy", "Renyi entropy (nats) of a pmf");
	entropy->add_option("--order", entropy_.order, "0, 1, inf, a decimal, or a comma-separated list");
	entropy->add_option("file", entropy_.file, "pmf JSON file (default stdin)");
	entropy->callback(leaf_cb("entropy"));

	auto* epi = app.add_subcommand("epi", "Entropy power inequality checks");
	epi->require_subcommand(1);
	auto* epi_uniform = epi->add_subcommand("uniform", "Uniform on {0..n-1} plus uniform on {0..m-1}");
	epi_uniform->add_option("--n", epi_.n, "Size of the first uniform")->check(CLI::PositiveNumber);
	epi_uniform->add_option("--m", epi_.m, "Size of the second uniform")->check(CLI::PositiveNumber);
	epi_uniform->add_option("--order", epi_.order, "Order(s) >= 1: 1, inf, or a decimal; comma-separated");
	epi_uniform->callback(leaf_cb("uniform"));
	auto* epi_lattice = epi->add_subcommand("lattice", "Uniform sets in Z^d, {\"A\": [[..]..], \"B\": [[..]..]}");
	epi_lattice->add_option("--file", epi_.file, "Lattice pair JSON file")->required();
	epi_lattice->add_option("--order", epi_.order, "Order(s) >= 1: 1, inf, or a decimal; comma-separated");
	epi_lattice->callback(leaf_cb("lattice"));

	auto* poset = app.add_subcommand("poset", "Whitney numbers and Sperner-type certification");
	poset->require_subcommand(1);
	for(const char* op : {"whitney", "normal-check", "sperner-check", "peck-check"}) {
		auto* sub = poset->add_subcommand(op, std::string("poset ") + op);
		sub->add_option("--file", poset_.file, "Poset JSON file");
		sub->add_option("--chain-product", poset_.chain_product, "S(n1,n2,...): chains with n_i+1 elements");
		sub->add_option("--m-poset", poset_.m_poset, "The poset M(m)");
		sub->add_option("--boolean", poset_.boolean, "Boolean lattice B_n");
		sub->add_option("--budget", poset_.budget, "Largest poset size for exhaustive k-family search");
		sub->add_option("--size-cap", poset_.size_cap, "Largest rank level for the exhaustive normality check");
		sub->callback(leaf_cb(op));
	}
	poset->get_subcommand("whitney")->add_flag("--json", poset_.json, "Print {\"whitney\": [\"p/q\", ...]} instead of a tuple");

	auto* verify = app.add_subcommand("verify", "Theorem-level oracles and sweeps (exit 1 on a counterexample)");
	verify->require_subcommand(1);
	for(const char* op : {"main1", "sets", "main2", "erdos-moser", "entropy-props"}) {
		auto* sub = verify->add_subcommand(op, std::string("verify ") + op);
		sub->add_option("--trials", verify_.trials, "Random instances for the main1 sweeps");
		sub->add_option("--support-max", verify_.support_max, "Largest support size of random pmfs");
		sub->add_option("--gap-max", verify_.gap_max, "Largest gap between support points");
		sub->add_option("--mass-bound", verify_.mass_bound, "Bound on numerators/denominators of mass ratios");
		sub->add_option("--n", verify_.n_list, "Number of summands (comma list of choices for main1)");
		sub->add_option("--universe", verify_.universe, "Integer universe lo..hi for the set sweep");
		sub->add_option("--weights", verify_.weights, "Single weight vector a_1<...<a_N for main2");
		sub->add_option("--m-vector", verify_.m_vectors, "Binomial sizes, ';' between vectors: 1,1,1;2,1,1");
		sub->add_option("--m", verify_.m, "Binomial size for erdos-moser");
		sub->add_option("--weight-bound", verify_.weight_bound, "Largest weight in weight sweeps");
		sub->add_option("--orders", verify_.orders, "Renyi orders for entropy-props");
		sub->add_option("--kind", verify_.kind, "entropy-props instance family: main1 or main2");
		sub->add_flag("--failures-only", cfg_.failures_only, "Only write failing reports");
		sub->callback(leaf_cb(op));
	}

	try {
		std::vector<std::string> reversed(args.rbegin(), args.rend());
		app.parse(reversed);
	} catch(const CLI::CallForHelp&) {
		out_ << app.help();
		return kSuccess;
	} catch(const CLI::CallForAllHelp&) {
		out_ << app.help("", CLI::AppFormatMode::All);
		return kSuccess;
	} catch(const CLI::ParseError& e) {
		err_ << e.what() << '\n';
		return kUsageError;
	}

	try {
		open_output();
		if(pmf->parsed()) {
			return run_pmf(leaf);
		}
		if(entropy->parsed()) {
			return run_entropy();
		}
		if(epi->parsed()) {
			return run_epi(leaf);
		}
		if(poset->parsed()) {
			return run_poset(leaf);
		}
		return run_verify(leaf);
	} catch(const BudgetExceeded& e) {
		err_ << "refused: " << e.what() << '\n';
		return kBudgetRefused;
	} catch(const std::invalid_argument& e) {
		err_ << "error: " << e.what() << '\n';
		return kUsageError;
	}
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
	Runner runner(in, out, err);
	return runner.execute(args);
}

}  // namespace sepi::cli
