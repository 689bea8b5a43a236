#include <catch_amalgamated.hpp>

#include <random>

#include "ptapoca/semilinear.hpp"

using namespace ptapoca;

namespace {

Poca unary(int n, std::vector<std::tuple<int, int, int>> rules) {
	Poca c;
	for (int i = 0; i < n; ++i) c.states.push_back("s" + std::to_string(i));
	for (auto [a, w, b] : rules) c.add_rule(a, CounterOp::update(w), b);
	c.validate();
	return c;
}

// Lengths t <= horizon of paths from s to each state, by direct simulation.
std::vector<std::vector<bool>> lengths(const Poca &c, int s, Int horizon) {
	const std::size_t n = c.states.size();
	std::vector<std::vector<bool>> at(horizon + 1, std::vector<bool>(n, false));
	at[0][s] = true;
	for (Int t = 0; t <= horizon; ++t) {
		bool grew = true;
		while (grew) {
			grew = false;
			for (const auto &r : c.rules)
				if (r.op.value == 0 && at[t][r.from] && !at[t][r.to]) at[t][r.to] = grew = true;
		}
		if (t < horizon)
			for (const auto &r : c.rules)
				if (r.op.value == 1 && at[t][r.from]) at[t + 1][r.to] = true;
	}
	return at;
}

} // namespace

TEST_CASE("APSet normalizes and tests membership", "[semilinear]") {
	APSet s({{3, 2}, {5, 2}, {1, 0}, {7, 4}});
	CHECK(s.pairs() == std::vector<APSet::Pair>{{1, 0}, {3, 2}});
	CHECK(s.member(1));
	CHECK(s.member(9));
	CHECK_FALSE(s.member(4));
	CHECK_FALSE(s.contains_zero());
	CHECK(s.to_string() == "{1, 3+2N}");
	CHECK_THROWS_AS(APSet({{-1, 0}}), MalformedError);
}

TEST_CASE("a single cycle yields one progression", "[semilinear]") {
	// s0 -+1-> s1 -+1-> s2 -+1-> s0
	Poca c = unary(3, {{0, 1, 1}, {1, 1, 2}, {2, 1, 0}});
	auto from0 = reach_lengths_from(c, 0);
	CHECK(from0[0] == APSet({{0, 3}}));
	CHECK(from0[1] == APSet({{1, 3}}));
	CHECK(from0[2] == APSet({{2, 3}}));
}

TEST_CASE("epsilon rules and dead ends", "[semilinear]") {
	Poca c = unary(4, {{0, 0, 1}, {1, 1, 2}, {2, 1, 2}, {0, 1, 3}});
	auto r = reach_lengths_from(c, 0);
	CHECK(r[0] == APSet({{0, 0}}));
	CHECK(r[1] == APSet({{0, 0}}));
	CHECK(r[2] == APSet({{1, 1}}));
	CHECK(r[3] == APSet({{1, 0}}));
	CHECK(reach_lengths(c, 3, 0).empty());
}

TEST_CASE("two cycles with coprime lengths", "[semilinear]") {
	// cycles of length 2 and 3 through s0
	Poca c = unary(4, {{0, 1, 1}, {1, 1, 0}, {0, 1, 2}, {2, 1, 3}, {3, 1, 0}});
	auto r = reach_lengths(c, 0, 0);
	for (Int t = 0; t <= 40; ++t) CHECK(r.member(t) == (t != 1));
}

TEST_CASE("random unary automata agree with simulation", "[semilinear]") {
	std::mt19937_64 rng(5);
	auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
	for (int iter = 0; iter < 150; ++iter) {
		int n = pick(1, 6);
		std::vector<std::tuple<int, int, int>> rules;
		int m = pick(0, 2 * n + 2);
		for (int i = 0; i < m; ++i) rules.emplace_back(pick(0, n - 1), pick(0, 1), pick(0, n - 1));
		Poca c = unary(n, rules);
		for (int s = 0; s < n; ++s) {
			auto sets = reach_lengths_from(c, s);
			Int horizon = 0;
			for (const auto &set : sets) horizon = std::max(horizon, set.max_offset() + 2 * set.period_lcm());
			horizon = std::max<Int>(horizon, 3 * n * n + 10);
			auto truth = lengths(c, s, horizon);
			for (int q = 0; q < n; ++q) {
				auto lim = SemilinearLimits::for_states(n);
				CHECK((Int)sets[q].size() <= lim.max_pairs);
				CHECK(sets[q].max_offset() <= lim.max_offset);
				CHECK(sets[q].max_period() <= lim.max_period);
				for (Int t = 0; t <= horizon; ++t) CHECK(sets[q].member(t) == truth[t][q]);
			}
		}
	}
}
