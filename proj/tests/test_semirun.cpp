#include <catch_amalgamated.hpp>

#include "ptapoca/fixtures.hpp"
#include "ptapoca/semirun.hpp"

using namespace ptapoca;

namespace {

// +-1 loops, +-p between s and t, and a comparison that semiruns ignore.
Poca ring() {
	Poca c;
	c.states = {"s", "t"};
	c.params = {"p"};
	c.add_rule(0, CounterOp::update(+1), 0);   // 0
	c.add_rule(0, CounterOp::update(-1), 0);   // 1
	c.add_rule(0, CounterOp::add_param(+1), 1); // 2
	c.add_rule(1, CounterOp::add_param(-1), 0); // 3
	c.add_rule(1, CounterOp::cmp_const(Cmp::Eq, 0), 1); // 4
	c.add_rule(0, CounterOp::update(0), 1);    // 5
	c.add_rule(1, CounterOp::update(0), 0);    // 6
	c.validate();
	return c;
}

Semirun replay(const Poca &c, Int n, std::vector<int> rules, Int z0 = 0) {
	Semirun r;
	r.confs.push_back({c.initial, z0});
	for (int i : rules) {
		auto s = semitransition_step(c, n, r.confs.back(), i);
		REQUIRE(s);
		r.confs.push_back(*s.conf);
		r.rules.push_back(i);
	}
	return r;
}

} // namespace

TEST_CASE("bracket languages", "[semirun]") {
	CHECK(in_lambda("][", 1));
	CHECK_FALSE(in_lambda("][", 0));
	CHECK(in_psi("[[", 2));
	CHECK_FALSE(in_lambda("[[", 2));
	CHECK_FALSE(in_psi("[[[", 2));
	CHECK(in_lambda("", 0));
	CHECK(bracket_balance("[[]") == 1);
}

TEST_CASE("bracket projection of a semirun", "[semirun]") {
	Poca c = ring();
	auto r = replay(c, 3, {2, 4, 3, 0, 5, 3, 5, 6, 2});
	CHECK(phi(c, r) == "[]][");
	CHECK(prefix_balance(c, r) == std::vector<Int>{0, 1, 1, 0, 0, 0, -1, -1, -1, 0});
	// the comparison on t is never checked
	CHECK(validate_semirun(r, c, 3));
	CHECK_FALSE(validate_run(r, c, 3));
}

TEST_CASE("shift moves every value", "[semirun]") {
	auto r = fixtures::staircase_run(4);
	auto s = shift(r, 6, 3);
	CHECK(s.confs.front().z == 6);
	CHECK(s.confs.back().z == 10);
	CHECK(validate_semirun(s, fixtures::staircase(), 0));
	CHECK_THROWS_AS(shift(r, 4, 3), SemirunError);
}

TEST_CASE("glue removes a loop", "[semirun]") {
	Poca c = fixtures::staircase();
	auto r = fixtures::staircase_run(8);
	auto g = glue(r, 2, 6, 2);
	CHECK(g.length() == 4);
	CHECK(g.delta() == 4);
	CHECK(validate_semirun(g, c, 0));
	CHECK_THROWS_AS(glue(r, 2, 5, 1), SemirunError);  // states differ
	CHECK_THROWS_AS(glue(r, 2, 6, 3), SemirunError);  // gap 4 not a multiple of 3
	CHECK_THROWS_AS(glue(r, 6, 2, 2), SemirunError);
}

TEST_CASE("multi_glue re-indexes after each cut", "[semirun]") {
	Poca c = fixtures::staircase();
	auto r = fixtures::staircase_run(12);
	auto g = multi_glue(r, {{0, 2}, {4, 8}, {10, 12}}, 2);
	CHECK(g.delta() == 12 - 2 - 4 - 2);
	CHECK(validate_semirun(g, c, 0));
	CHECK_THROWS_AS(multi_glue(r, {{4, 8}, {6, 10}}, 2), SemirunError);
}

TEST_CASE("depumping lowers Delta by exactly Gamma", "[semirun]") {
	Poca c = fixtures::staircase();
	auto consts = DerivedConstants::test_scale(2, 1);
	REQUIRE(consts.Upsilon == 16);
	auto r = fixtures::staircase_run(21);
	auto d = depump(c, r, 4, 2, consts);
	CHECK(d.run.delta() == 21 - 2);
	CHECK(validate_semirun(d.run, c, 4));
	CHECK(d.run.confs.front() == r.confs.front());
	CHECK(d.run.confs.back().state == r.confs.back().state);
	CHECK(in_lambda(phi(c, d.run), 8));

	CHECK_THROWS_AS(depump(c, fixtures::staircase_run(16), 4, 2, consts), SemirunError);
	auto off = DerivedConstants::override_values(1, 3, 16, 1000);
	CHECK_THROWS_AS(depump(c, r, 4, 2, off), SemirunError);
}

TEST_CASE("depumping with parameter detours", "[semirun]") {
	Poca c = ring();
	const Int n = 5;
	auto consts = DerivedConstants::test_scale(3, 1);
	std::vector<int> rules;
	for (int i = 0; i < 120; ++i) {
		rules.push_back(0);
		if (i % 7 == 3) rules.insert(rules.end(), {2, 3});
		if (i % 11 == 5) rules.insert(rules.end(), {5, 3, 0, 2, 6});
	}
	auto r = replay(c, n, rules);
	REQUIRE(r.delta() > consts.Upsilon);
	auto d = depump(c, r, n, 3, consts);
	CHECK(BigInt(r.delta() - d.run.delta()) == consts.Gamma);
	CHECK(validate_semirun(d.run, c, n));

	// negative direction
	std::vector<int> down;
	for (int i = 0; i < 100; ++i) down.push_back(1);
	auto neg = replay(c, n, down);
	auto dn = depump(c, neg, n, 3, consts);
	CHECK(BigInt(dn.run.delta() - neg.delta()) == consts.Gamma);
}

TEST_CASE("bracket subruns", "[semirun]") {
	Poca c = ring();
	auto r = replay(c, 4, {2, 3, 0, 0, 0, 0, 0, 1});
	auto pos = find_bracket_subrun(c, r, 3, Direction::Positive);
	REQUIRE(pos);
	CHECK(pos->first == 0);
	CHECK(r.confs[pos->second].z - r.confs[pos->first].z > 3);
	CHECK_FALSE(find_bracket_subrun(c, r, 3, Direction::Negative));
	CHECK_FALSE(find_bracket_subrun(c, r, 10, Direction::Positive));
}

TEST_CASE("hills and valleys", "[semirun]") {
	Poca c = ring();
	// up, down: a hill over level 1
	auto hill = replay(c, 3, {0, 0, 0, 1, 1, 1});
	CHECK(classify_hill_valley(c, hill, 1, 1) == Shape::Hill);
	auto valley = replay(c, 3, {1, 1, 1, 0, 0, 0});
	CHECK(classify_hill_valley(c, valley, -1, 1) == Shape::Valley);
	// a +p in the hill but too close to the start value
	auto near = replay(c, 3, {0, 2, 3, 1});
	CHECK(classify_hill_valley(c, near, 1, 5) == Shape::Candidate);
	CHECK(classify_hill_valley(c, near, 1, 0) == Shape::Hill);
	CHECK(classify_hill_valley(c, hill, 5, 1) == Shape::Neither);
	CHECK(std::string(shape_name(Shape::Valley)) == "valley");
}

TEST_CASE("embeddings", "[semirun]") {
	Poca c = ring();
	auto pi = replay(c, 2, {0, 5, 6, 0, 0, 1});
	auto sigma = replay(c, 2, {0, 0, 1});
	auto e = is_embedding(sigma, pi, 10);
	REQUIRE(e);
	CHECK(e->psi.size() == 4);
	CHECK(e->psi.back() == pi.length());
	for (std::size_t i = 0; i + 1 < e->psi.size(); ++i) CHECK(e->psi[i] < e->psi[i + 1]);
	CHECK(e->max_falling);
	CHECK(e->min_rising);
	// different end state
	auto other = replay(c, 2, {0, 5});
	CHECK_FALSE(is_embedding(other, pi, 10));
	// orientation relative to l must match
	auto high = shift(sigma, 4, 1);
	CHECK_FALSE(is_embedding(high, pi, 2));
	// rules must match in order
	auto rev = replay(c, 2, {1, 0, 0});
	CHECK(is_embedding(rev, pi, 10).has_value() == false);
}
