#include <catch_amalgamated.hpp>

#include "ptapoca/core.hpp"
#include "ptapoca/fixtures.hpp"

using namespace ptapoca;

TEST_CASE("log_size counts bits", "[core]") {
	CHECK(log_size(0) == 1);
	CHECK(log_size(1) == 1);
	CHECK(log_size(2) == 2);
	CHECK(log_size(3) == 3);
	CHECK(log_size(4) == 3);
	CHECK(log_size(5) == 4);
	CHECK(log_size(1024) == 11);
	CHECK_THROWS_AS(log_size(-1), MalformedError);
}

TEST_CASE("comparison symbols parse and mirror", "[core]") {
	for (Cmp c : {Cmp::Lt, Cmp::Le, Cmp::Eq, Cmp::Ge, Cmp::Gt}) {
		CHECK(parse_cmp(cmp_symbol(c)) == c);
		for (Int a = -2; a <= 2; ++a)
			for (Int b = -2; b <= 2; ++b) CHECK(cmp_holds(a, c, b) == cmp_holds(b, mirror(c), a));
	}
	CHECK(parse_cmp("≤") == Cmp::Le);
	CHECK_THROWS_WITH(parse_cmp("<>"), Catch::Matchers::ContainsSubstring("unknown comparison symbol"));
}

TEST_CASE("guards evaluate against clock and parameter", "[core]") {
	Guard g = Guard::with_param(0, Cmp::Le, 0);
	CHECK(g.holds(3, 3));
	CHECK_FALSE(g.holds(4, 3));
	Guard e = Guard::empty(1);
	CHECK(e.is_empty());
	CHECK(e.holds(0, 7));
	CHECK(Guard::with_const(0, Cmp::Eq, 5).size() == 4);
	CHECK(g.size() == 1);
}

TEST_CASE("PTA size and constants", "[core]") {
	Pta a = fixtures::fig1();
	// |Q| + |clocks| + |P| + |R| + sum of guard sizes (3 -> 3 bits, 0 -> 1 bit, p -> 1)
	CHECK(pta_size(a) == 3 + 2 + 1 + 4 + (3 + 1 + 1 + 1));
	CHECK(pta_consts(a) == std::set<Int>{0, 3});
	CHECK(parametric_clocks(a) == std::vector<int>{0, 1});
}

TEST_CASE("POCA size counts operations", "[core]") {
	Poca c = fixtures::fig2();
	// |Q| + |P| + |R| + |+p| + |+1| + |mod 6|
	CHECK(poca_size(c) == 4 + 1 + 3 + (1 + 1 + 4));
	CHECK(poca_consts(c) == std::set<Int>{6});
}

TEST_CASE("validation rejects malformed automata", "[core]") {
	Pta a = fixtures::fig1();
	a.rules[0].to = 9;
	CHECK_THROWS_AS(a.validate(), MalformedError);
	Pta dup = fixtures::fig1();
	dup.states[1] = "q0";
	CHECK_THROWS_WITH(dup.validate(), Catch::Matchers::ContainsSubstring("duplicate state"));
	Poca c = fixtures::fig2();
	c.rules[1].op = CounterOp::update(2);
	CHECK_THROWS_AS(c.validate(), MalformedError);
	Poca m = fixtures::fig2();
	m.rules[2].op = CounterOp::mod(0);
	CHECK_THROWS_AS(m.validate(), MalformedError);
}

TEST_CASE("lcm helpers", "[core]") {
	CHECK(lcm_range(1) == 1);
	CHECK(lcm_range(10) == 2520);
	CHECK(lcm_range(17) == 12252240);
	CHECK(lcm_set(std::vector<Int>{}) == 1);
	CHECK(lcm_set(std::vector<Int>{4, 6}) == 12);
	CHECK_THROWS_AS(lcm_range(0), MalformedError);
}

TEST_CASE("derived constants follow the formulas", "[core]") {
	auto d = DerivedConstants::from_formulas(1, 1);
	BigInt l = 12252240;
	CHECK(d.Z == 1);
	CHECK(d.Gamma == l);
	CHECK(d.Upsilon == 17 * l * (17 + 2));
	CHECK(d.M == 30 * (d.Upsilon + d.Gamma + 1));
	CHECK(d.exact);

	// zero is left out of Z
	Poca c = fixtures::fig2();
	c.add_rule(3, CounterOp::cmp_const(Cmp::Eq, 0), 3);
	auto e = derive_constants(c);
	CHECK(e.Z == 6);
	CHECK(e.Gamma == lcm_range(68) * 6);

	auto t = DerivedConstants::test_scale(3, 2);
	CHECK(t.Gamma == 12);
	CHECK(t.Upsilon == 3 * 6 * (3 * 2 + 2));
	CHECK_FALSE(t.exact);
}

TEST_CASE("floor_mod is non-negative", "[core]") {
	CHECK(floor_mod(-1, 6) == 5);
	CHECK(floor_mod(7, 6) == 1);
	CHECK(floor_mod(-6, 3) == 0);
}
