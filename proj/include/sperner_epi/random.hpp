#pragma once

#include <cstdint>
#include <random>

namespace sepi {

/// Engine for instance generation. mt19937_64's output sequence is fixed by the
/// standard; the library's distributions are not, so draws go through
/// uniform_draw below to stay reproducible across standard libraries.
using Engine = std::mt19937_64;

inline Engine make_engine(std::uint64_t seed, std::uint64_t stream = 0) {
	std::seed_seq seq{
		static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
		static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
	return Engine(seq);
}

/// Uniform integer in [lo, hi]. Modulo bias is below 2^-40 for the ranges used here.
inline std::int64_t uniform_draw(Engine& rng, std::int64_t lo, std::int64_t hi) {
	const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
	return lo + static_cast<std::int64_t>(rng() % span);
}

}  // namespace sepi
