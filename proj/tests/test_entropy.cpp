#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "sperner_epi/entropy.hpp"
#include "sperner_epi/errors.hpp"
#include "sperner_epi/random.hpp"

using namespace sepi;

namespace {

Rational q(long p, long d = 1) {
	return Rational(p, d);
}

double d(const Real& x) {
	return x.convert_to<double>();
}

IntegerPmf random_pmf(Engine& rng, int max_size) {
	const auto size = uniform_draw(rng, 1, max_size);
	std::vector<std::int64_t> support{0};
	std::vector<Rational> mass{q(static_cast<long>(uniform_draw(rng, 1, 9)))};
	for(int i = 1; i < size; ++i) {
		support.push_back(support.back() + uniform_draw(rng, 1, 4));
		mass.push_back(q(static_cast<long>(uniform_draw(rng, 1, 9))));
	}
	return normalized(IntegerPmf(support, mass));
}

const std::vector<RenyiOrder> kGrid{
	RenyiOrder::zero(), RenyiOrder::finite(0.25), RenyiOrder::finite(0.5), RenyiOrder::finite(0.9),
	RenyiOrder::one(), RenyiOrder::finite(1.5), RenyiOrder::finite(2), RenyiOrder::finite(3),
	RenyiOrder::finite(10), RenyiOrder::infinity()};

double oracle_alpha(const RenyiOrder& o) {
	switch(o.kind()) {
	case RenyiOrder::Kind::zero:
		return 0.0;
	case RenyiOrder::Kind::one:
		return 1.0;
	case RenyiOrder::Kind::infinity:
		return INFINITY;
	case RenyiOrder::Kind::finite:
		break;
	}
	return o.alpha();
}

}  // namespace

TEST_CASE("RenyiOrder parsing") {
	CHECK(RenyiOrder::parse("0") == RenyiOrder::zero());
	CHECK(RenyiOrder::parse("1") == RenyiOrder::one());
	CHECK(RenyiOrder::parse("1.0") == RenyiOrder::one());
	CHECK(RenyiOrder::parse("inf") == RenyiOrder::infinity());
	CHECK(RenyiOrder::parse("1.5") == RenyiOrder::finite(1.5));
	CHECK(RenyiOrder::parse("3/2") == RenyiOrder::finite(1.5));
	CHECK(RenyiOrder::parse("0.5").to_string() == "0.5");
	CHECK_THROWS_AS(RenyiOrder::parse("-1"), InvalidInput);
	CHECK_THROWS_AS(RenyiOrder::parse("two"), InvalidInput);
	CHECK_THROWS_AS(RenyiOrder::finite(1.0), InvalidInput);
	CHECK(parse_orders("0,0.5,1,2,inf").size() == 5);
}

TEST_CASE("renyi_entropy values") {
	SUBCASE("uniform on n points is log n at every order") {
		for(std::int64_t n : {1, 2, 7, 30}) {
			const auto u = IntegerPmf::uniform_range(n);
			for(const auto& o : kGrid) {
				CHECK(d(renyi_entropy(u, o)) == doctest::Approx(std::log(static_cast<double>(n))).epsilon(1e-14));
			}
		}
	}
	SUBCASE("(1/4, 1/2, 1/4)") {
		const IntegerPmf f({0, 1, 2}, {q(1, 4), q(1, 2), q(1, 4)});
		// Σp² = 3/8.
		CHECK(std::abs(d(renyi_entropy(f, RenyiOrder::finite(2))) - std::log(8.0 / 3.0)) < 1e-15);
		CHECK(std::abs(d(renyi_entropy(f, RenyiOrder::finite(2))) - 0.98083) < 1e-5);
		CHECK(std::abs(d(renyi_entropy(f, RenyiOrder::infinity())) - std::log(2.0)) < 1e-15);
		CHECK(std::abs(d(renyi_entropy(f, RenyiOrder::one())) - 1.5 * std::log(2.0)) < 1e-15);
		CHECK(std::abs(d(renyi_entropy(f, RenyiOrder::zero())) - std::log(3.0)) < 1e-15);
	}
	SUBCASE("non-normalized input rejected") {
		CHECK_THROWS_AS(renyi_entropy(IntegerPmf::indicator(std::vector<std::int64_t>{0, 1}), RenyiOrder::one()),
			InvalidInput);
	}
	SUBCASE("agrees with direct long-double evaluation") {
		Engine rng = make_engine(21);
		for(int t = 0; t < 100; ++t) {
			const auto f = random_pmf(rng, 9);
			for(const auto& o : kGrid) {
				CHECK(std::abs(d(renyi_entropy(f, o)) - static_cast<double>(oracle::renyi(f.mass(), oracle_alpha(o)))) <
					1e-12);
			}
		}
	}
}

TEST_CASE("renyi_entropy properties") {
	Engine rng = make_engine(22);
	for(int t = 0; t < 100; ++t) {
		const auto f = random_pmf(rng, 9);
		Real prev = renyi_entropy(f, kGrid.front());
		for(std::size_t i = 1; i < kGrid.size(); ++i) {
			const Real h = renyi_entropy(f, kGrid[i]);
			CHECK(h <= prev + 1e-30);
			prev = h;
		}
		for(const auto& o : kGrid) {
			const Real h = renyi_entropy(f, o);
			CHECK(h >= renyi_entropy(f, RenyiOrder::infinity()) - 1e-30);
			CHECK(h <= renyi_entropy(f, RenyiOrder::zero()) + 1e-30);
			CHECK(h == renyi_entropy(translate(f, 17), o));
			CHECK(h == renyi_entropy(scale_support(f, 3), o));
			CHECK(h == renyi_entropy(hash_rearrange(f), o));
		}
		const Real shannon = renyi_entropy(f, RenyiOrder::one());
		CHECK(abs(renyi_entropy(f, RenyiOrder::finite(1 + 1e-6)) - shannon) < 1e-4);
		CHECK(abs(renyi_entropy(f, RenyiOrder::finite(1 - 1e-6)) - shannon) < 1e-4);
	}
}

TEST_CASE("entropy_power") {
	for(std::int64_t n : {1, 3, 10}) {
		const auto u = IntegerPmf::uniform_range(n);
		const double nd = static_cast<double>(n);
		CHECK(d(entropy_power(u, RenyiOrder::one())) == doctest::Approx(nd * nd).epsilon(1e-14));
		CHECK(d(entropy_power(u, RenyiOrder::finite(2.5))) == doctest::Approx(std::pow(nd, 3.5)).epsilon(1e-14));
	}
	const IntegerPmf f({0, 1, 2}, {q(1, 4), q(1, 2), q(1, 4)});
	CHECK(abs(entropy_power(f, RenyiOrder::finite(2)) - Real(512) / 27) < 1e-40);
	CHECK_THROWS_AS(entropy_power(f, RenyiOrder::infinity()), InvalidInput);
	CHECK_THROWS_AS(entropy_power(f, RenyiOrder::finite(0.5)), InvalidInput);
	CHECK_THROWS_AS(entropy_power(f, RenyiOrder::zero()), InvalidInput);
}

TEST_CASE("schur_convexity_check") {
	const std::vector<RenyiOrder> orders{RenyiOrder::zero(), RenyiOrder::finite(0.5), RenyiOrder::one(),
		RenyiOrder::finite(2), RenyiOrder::infinity()};
	const auto u4 = IntegerPmf::uniform_range(4);
	CHECK(schur_convexity_check(u4, IntegerPmf::point_mass(0), orders));
	CHECK(schur_convexity_check(u4, u4, orders));
	const IntegerPmf f({0, 1, 2, 3, 4}, {q(1, 6), q(2, 6), q(1, 6), q(1, 6), q(1, 6)});
	const IntegerPmf g({0, 1, 2, 3}, {q(1, 6), q(2, 6), q(2, 6), q(1, 6)});
	CHECK(schur_convexity_check(f, g, orders));
	CHECK_THROWS_AS(schur_convexity_check(g, f, orders), PreconditionError);
}

TEST_CASE("uniform EPI") {
	SUBCASE("n = m = 1 is sharp") {
		const auto rec = uniform_epi_evaluate(1, 1, RenyiOrder::finite(2), kDefaultTolerance);
		CHECK(rec.lhs == 2);
		CHECK(rec.rhs == 2);
		CHECK(rec.verdict);
	}
	SUBCASE("n = m = 2, order 2") {
		const auto rec = uniform_epi_evaluate(2, 2, RenyiOrder::finite(2), kDefaultTolerance);
		CHECK(abs(rec.lhs - (Real(512) / 27 + 1)) < 1e-40);
		CHECK(abs(rec.rhs - 16) < 1e-40);
		CHECK(rec.verdict);
		CHECK(uniform_epi_check(2, 2, RenyiOrder::finite(2)));
	}
	SUBCASE("m = 1 adds a constant: equality") {
		for(const auto& o : {RenyiOrder::one(), RenyiOrder::finite(1.5), RenyiOrder::finite(10)}) {
			const auto rec = uniform_epi_evaluate(50, 1, o, kDefaultTolerance);
			CHECK(abs(rec.margin) < 1e-9);
			CHECK(rec.verdict);
		}
	}
	SUBCASE("infinity is evaluated in min-entropy form") {
		const auto rec = uniform_epi_evaluate(5, 3, RenyiOrder::infinity(), kDefaultTolerance);
		CHECK(rec.verdict);
		CHECK(abs(rec.margin) < 1e-40);
	}
	SUBCASE("invalid") {
		CHECK_THROWS_AS(uniform_epi_check(0, 1, RenyiOrder::one()), InvalidInput);
		CHECK_THROWS_AS(uniform_epi_check(2, 2, RenyiOrder::finite(0.5)), InvalidInput);
	}
}

TEST_CASE("q-ary embedding") {
	SUBCASE("radix 3") {
		const auto a = LatticePmf::uniform({{0, 0}, {1, 1}});
		const auto e = qary_embed(a, 3);
		CHECK(e.support() == std::vector<std::int64_t>{0, 4});
		CHECK(e.mass() == std::vector<Rational>{q(1, 2), q(1, 2)});
	}
	SUBCASE("point mass") {
		const auto e = qary_embed(LatticePmf::uniform({{2, 1, 3}}), 5);
		CHECK(e == IntegerPmf::point_mass(2 * 25 + 1 * 5 + 3));
	}
	SUBCASE("coordinate at or above the radix is refused") {
		CHECK_THROWS_AS(qary_embed(LatticePmf::uniform({{0, 0}, {0, 3}}), 3), InvalidInput);
		CHECK_THROWS_AS(qary_embed(LatticePmf::uniform({{0, -1}}), 3), InvalidInput);
	}
	SUBCASE("radix 8 is carry-free on subsets of {0..3}^2") {
		Engine rng = make_engine(23);
		for(int t = 0; t < 100; ++t) {
			std::vector<LatticePoint> pa, pb;
			for(std::int64_t x = 0; x < 4; ++x) {
				for(std::int64_t y = 0; y < 4; ++y) {
					if(uniform_draw(rng, 0, 2) == 0) {
						pa.push_back({x, y});
					}
					if(uniform_draw(rng, 0, 2) == 0) {
						pb.push_back({x, y});
					}
				}
			}
			if(pa.empty() || pb.empty()) {
				continue;
			}
			const auto a = LatticePmf::uniform(pa);
			const auto b = LatticePmf::uniform(pb);
			const auto lhs = convolve(qary_embed(a, 8), qary_embed(b, 8));
			CHECK(lhs == qary_embed(convolve(a, b), 8));
		}
	}
	SUBCASE("radix too small collides") {
		CHECK_THROWS_AS(qary_embed(LatticePmf::uniform({{0, 2}, {1, 0}}), 2), InvalidInput);
	}
}

TEST_CASE("lattice EPI") {
	SUBCASE("single points") {
		const auto a = LatticePmf::uniform({{3, -2}});
		const auto rec = lattice_epi_evaluate(a, a, RenyiOrder::finite(2), kDefaultTolerance);
		CHECK(rec.inequality.lhs == 2);
		CHECK(rec.inequality.rhs == 2);
		CHECK(rec.carry_free);
	}
	SUBCASE("{(0,0),(1,0)} reduces to n = m = 2") {
		const auto a = LatticePmf::uniform({{0, 0}, {1, 0}});
		for(const auto& o : {RenyiOrder::one(), RenyiOrder::finite(2)}) {
			const auto rec = lattice_epi_evaluate(a, a, o, kDefaultTolerance);
			const auto ref = uniform_epi_evaluate(2, 2, o, kDefaultTolerance);
			CHECK(rec.carry_free);
			CHECK(abs(rec.inequality.lhs - ref.lhs) < 1e-40);
			CHECK(abs(rec.inequality.rhs - ref.rhs) < 1e-40);
			CHECK(lattice_epi_check(a, a, o));
		}
	}
	SUBCASE("negative coordinates are shifted") {
		const auto a = LatticePmf::uniform({{-5, 2}, {-4, 7}, {0, 0}});
		const auto b = LatticePmf::uniform({{1, 1}, {-1, -1}});
		const auto rec = lattice_epi_evaluate(a, b, RenyiOrder::one(), kDefaultTolerance);
		CHECK(rec.carry_free);
		CHECK(rec.inequality.verdict);
		CHECK(rec.radix == 1 + std::max<std::int64_t>(5 + 2, 7 + 2));
	}
	SUBCASE("random sets in {0..3}^2 at orders 1, 2, inf") {
		Engine rng = make_engine(24);
		for(int t = 0; t < 60; ++t) {
			auto draw_set = [&] {
				std::vector<LatticePoint> pts;
				const auto size = uniform_draw(rng, 1, 6);
				while(static_cast<std::int64_t>(pts.size()) < size) {
					LatticePoint z{uniform_draw(rng, 0, 3), uniform_draw(rng, 0, 3)};
					if(std::find(pts.begin(), pts.end(), z) == pts.end()) {
						pts.push_back(z);
					}
				}
				return LatticePmf::uniform(pts);
			};
			const auto a = draw_set();
			const auto b = draw_set();
			for(const auto& o : {RenyiOrder::one(), RenyiOrder::finite(2), RenyiOrder::infinity()}) {
				CHECK(lattice_epi_check(a, b, o));
			}
		}
	}
	SUBCASE("non-uniform input is a precondition error") {
		const LatticePmf f({{0, 0}, {1, 0}}, {q(1, 3), q(2, 3)});
		CHECK_THROWS_AS(lattice_epi_check(f, f, RenyiOrder::one()), PreconditionError);
	}
	SUBCASE("JSON") {
		const auto [a, b] = lattice_pair_from_json(nlohmann::json::parse(R"({"A": [[0,0],[1,0]], "B": [[2,2]]})"));
		CHECK(a.size() == 2);
		CHECK(b.dimension() == 2);
		CHECK_THROWS_AS(lattice_pair_from_json(nlohmann::json::parse(R"({"A": [[0,0],[1]], "B": [[2,2]]})")),
			InvalidInput);
		CHECK_THROWS_AS(lattice_pair_from_json(nlohmann::json::parse(R"({"A": [[0,0],[0,0]], "B": [[2,2]]})")),
			InvalidInput);
		CHECK_THROWS_AS(lattice_pair_from_json(nlohmann::json::parse(R"({"A": []})")), InvalidInput);
	}
}

TEST_CASE("format_real uses 12 significant digits") {
	CHECK(format_real(Real(512) / 27) == "18.962962963");
	CHECK(format_real(Real(2)) == "2");
}
