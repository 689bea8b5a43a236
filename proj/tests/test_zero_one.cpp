#include <catch_amalgamated.hpp>

#include <random>

#include "ptapoca/fixtures.hpp"
#include "ptapoca/semantics.hpp"
#include "ptapoca/zero_one.hpp"

using namespace ptapoca;

TEST_CASE("the reduction rejects PTAs outside (2,1)", "[zero-one]") {
	CHECK_THROWS_WITH(to_zero_one_pta(fixtures::three_parametric()), "not a (2,1)-PTA");
	Pta two = fixtures::fig1();
	two.params.push_back("q");
	CHECK_THROWS_AS(to_zero_one_pta(two), NotTwoOneError);
}

TEST_CASE("reduced automaton has constants {0} and two clocks", "[zero-one]") {
	for (const auto &[name, a] : fixtures::corpus()) {
		INFO(name);
		auto b = to_zero_one_pta(a);
		CHECK(b.clocks.size() == 2);
		for (Int c : zero_one_consts(b)) CHECK(c == 0);
		CHECK(BigInt(b.states.size()) <= zero_one_state_bound(a));
		for (const auto &r : b.r1) {
			CHECK(r.guard.is_empty());
			CHECK(r.resets.empty());
		}
	}
}

TEST_CASE("one-clock PTAs get a padding clock", "[zero-one]") {
	auto b = to_zero_one_pta(fixtures::corpus().back().pta);
	CHECK(b.clocks == std::vector<std::string>{"x", "_pad"});
}

TEST_CASE("reduction preserves the accepted parameter values", "[zero-one]") {
	for (const auto &[name, a] : fixtures::corpus()) {
		INFO(name);
		auto b = to_zero_one_pta(a);
		for (Int n = 0; n <= 6; ++n) CHECK(pta_reach_bruteforce(a, n).has_value() == zero_one_reach(b, n).has_value());
	}
	std::mt19937_64 rng(11);
	for (int i = 0; i < 60; ++i) {
		Pta a = fixtures::random_pta(rng);
		auto b = to_zero_one_pta(a);
		for (Int n = 0; n <= 5; ++n) CHECK(pta_reach_bruteforce(a, n).has_value() == zero_one_reach(b, n).has_value());
	}
}

TEST_CASE("origin maps untimed rules back to PTA rules", "[zero-one]") {
	Pta a = fixtures::fig1();
	std::vector<int> origin;
	auto b = to_zero_one_pta(a, &origin);
	REQUIRE(origin.size() == b.r0.size());
	for (std::size_t i = 0; i < origin.size(); ++i) {
		const auto &ra = a.rules.at(origin[i]);
		CHECK(ra.guard.parametric == b.r0[i].guard.parametric);
	}
}
