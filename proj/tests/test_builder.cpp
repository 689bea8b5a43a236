#include <catch_amalgamated.hpp>

#include <random>

#include "ptapoca/builder.hpp"
#include "ptapoca/fixtures.hpp"
#include "ptapoca/zero_one.hpp"

using namespace ptapoca;

namespace {

bool poca_accepts(const Poca &c, Int n) {
	return poca_reach_bounded(c, n, 0, value_bound(c, n)).has_value();
}

} // namespace

TEST_CASE("tick normalization keeps the language", "[builder]") {
	std::mt19937_64 rng(3);
	for (int i = 0; i < 40; ++i) {
		auto b = fixtures::random_zero_one(rng);
		auto nb = normalize_ticks(b);
		for (const auto &r : nb.r1) {
			CHECK(r.guard.is_empty());
			CHECK(r.resets.empty());
		}
		for (Int n = 0; n <= 6; ++n) CHECK(zero_one_reach(b, n).has_value() == zero_one_reach(nb, n).has_value());
	}
}

TEST_CASE("accepting with counter zero", "[builder]") {
	Poca c = fixtures::fig2();
	Poca z = normalize_accepting_zero(c);
	for (Int n = 0; n <= 13; ++n) {
		auto run = poca_reach_bounded(z, n, 0, n + 2);
		CHECK(run.has_value() == (n % 6 == 5));
		if (run) CHECK(run->confs.back().z == 0);
	}
}

TEST_CASE("built POCA matches the corpus", "[builder]") {
	for (const auto &[name, a] : fixtures::corpus()) {
		INFO(name);
		auto b = to_zero_one_pta(a);
		auto built = build_poca(b);
		REQUIRE(built.info.size() == built.poca.states.size());
		built.poca.validate();
		for (Int n = 0; n <= 8; ++n) {
			INFO("N = " << n);
			CHECK(poca_accepts(built.poca, n) == pta_reach_bruteforce(a, n).has_value());
		}
	}
}

TEST_CASE("built POCA matches random 0/1-PTAs", "[builder]") {
	std::mt19937_64 rng(17);
	for (int i = 0; i < 120; ++i) {
		auto b = fixtures::random_zero_one(rng);
		auto built = build_poca(b);
		for (Int n = 0; n <= 9; ++n) {
			INFO("sample " << i << ", N = " << n);
			CHECK(poca_accepts(built.poca, n) == zero_one_reach(b, n).has_value());
		}
	}
}

TEST_CASE("every state is annotated", "[builder]") {
	auto built = build_poca(to_zero_one_pta(fixtures::fig1()));
	static const std::set<std::string> roles = {"init", "branch", "explicit", "enter",
	                                            "tick", "hub",    "gadget",   "accept"};
	for (const auto &si : built.info) CHECK(roles.count(si.role) == 1);
	for (const auto &g : built.gadgets) {
		CHECK(g.entry >= 0);
		CHECK(g.exit >= 0);
		CHECK(g.entry < (int)built.poca.states.size());
	}
	CHECK(built.poca.finals.size() == 1);
}

TEST_CASE("corrupting a gadget changes the accepted set", "[builder]") {
	Pta a = fixtures::fig1();
	auto b = to_zero_one_pta(a);
	BuildOptions opt;
	opt.corrupt_for_testing = true;
	auto good = build_poca(b);
	auto bad = build_poca(b, opt);
	int diffs = 0;
	for (Int n = 0; n <= 9; ++n) diffs += poca_accepts(good.poca, n) != poca_accepts(bad.poca, n);
	CHECK(diffs > 0);
}

TEST_CASE("state budget is enforced", "[builder]") {
	BuildOptions opt;
	opt.max_states = 10;
	CHECK_THROWS_AS(build_poca(to_zero_one_pta(fixtures::fig1()), opt), BudgetExceeded);
}

TEST_CASE("larger explicit threshold keeps the language", "[builder]") {
	BuildOptions opt;
	opt.small_threshold = 4;
	for (const auto &[name, a] : fixtures::corpus()) {
		INFO(name);
		auto built = build_poca(to_zero_one_pta(a), opt);
		for (Int n = 0; n <= 7; ++n) CHECK(poca_accepts(built.poca, n) == pta_reach_bruteforce(a, n).has_value());
	}
}
