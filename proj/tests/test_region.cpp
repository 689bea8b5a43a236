#include <catch_amalgamated.hpp>

#include <random>
#include <set>

#include "ptapoca/fixtures.hpp"
#include "ptapoca/region.hpp"

using namespace ptapoca;

TEST_CASE("region_of examples", "[region]") {
	CHECK(region_of(2, 7, 5) == Region::UpperLeft);
	CHECK(region_of(5, 3, 5) == Region::VN);
	CHECK(region_of(0, 0, 5) == Region::C00);
	CHECK(region_of(5, 5, 5) == Region::CNN);
	CHECK(region_of(9, 0, 5) == Region::H0Right);
	CHECK(region_of(9, 9, 5) == Region::UpperRight);
	CHECK_THROWS_AS(region_of(0, 0, 0), MalformedError);
	CHECK_THROWS_AS(region_of(-1, 0, 3), MalformedError);
}

TEST_CASE("regions partition the quadrant", "[region]") {
	for (Int n = 1; n <= 8; ++n) {
		std::set<Region> hit;
		for (Int x = 0; x <= 2 * n + 3; ++x)
			for (Int y = 0; y <= 2 * n + 3; ++y) hit.insert(region_of(x, y, n));
		for (Region r : all_regions()) CHECK(hit.count(r) == (region_empty_at(r, n) ? 0u : 1u));
	}
}

TEST_CASE("region names round trip", "[region]") {
	for (Region r : all_regions()) {
		CHECK(parse_region(region_name(r)) == r);
		CHECK(transpose(transpose(r)) == r);
	}
	CHECK(parse_region("UL") == Region::UpperLeft);
	CHECK(parse_region("3") == Region::CNN);
	CHECK_THROWS_AS(parse_region("middle"), MalformedError);
	CHECK(transpose(Region::VN) == Region::HN);
}

TEST_CASE("guard satisfaction is uniform on a region", "[region]") {
	for (Int n = 1; n <= 6; ++n)
		for (Int x = 0; x <= 2 * n + 2; ++x)
			for (Int y = 0; y <= 2 * n + 2; ++y) {
				Region r = region_of(x, y, n);
				for (int clock = 0; clock < 2; ++clock)
					for (Cmp c : {Cmp::Lt, Cmp::Le, Cmp::Eq, Cmp::Ge, Cmp::Gt})
						for (bool par : {false, true}) {
							Guard g = par ? Guard::with_param(clock, c, 0) : Guard::with_const(clock, c, 0);
							CHECK(region_satisfies(r, g) == g.holds(clock == 0 ? x : y, n));
						}
			}
}

TEST_CASE("region automaton keeps reset-free rules enabled on R", "[region]") {
	ZeroOnePta b;
	b.states = {"a", "b"};
	b.clocks = {"x", "y"};
	b.params = {"p"};
	b.r0 = {TimedRule{0, Guard::with_param(0, Cmp::Lt, 0), {}, 1}, TimedRule{1, Guard::empty(0), {1}, 0}};
	b.r1 = {TimedRule{1, Guard::with_const(1, Cmp::Gt, 0), {}, 1}};
	b.validate();
	auto br = region_automaton(b, Region::LowerLeft);
	CHECK(br.r0.size() == 1);
	CHECK(br.r1.size() == 1);
	auto right = region_automaton(b, Region::UpperRight);
	CHECK(right.r0.empty());
	auto oca = region_oca(br);
	REQUIRE(oca.rules.size() == 2);
	CHECK(oca.rules[0].op == CounterOp::update(0));
	CHECK(oca.rules[1].op == CounterOp::update(1));
	CHECK_THROWS_AS(region_oca(b), MalformedError);

	ZeroOnePta bad = b;
	bad.r0[0].guard = Guard::with_const(0, Cmp::Eq, 2);
	CHECK_THROWS_AS(region_automaton(bad, Region::C00), MalformedError);
}
