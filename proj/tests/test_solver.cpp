#include <catch_amalgamated.hpp>

#include <map>
#include <random>
#include <set>

#include "ptapoca/fixtures.hpp"
#include "ptapoca/solver.hpp"

using namespace ptapoca;

namespace {

std::set<Int> range(Int lo, Int hi, Int step = 1) {
	std::set<Int> s;
	for (Int n = lo; n <= hi; n += step) s.insert(n);
	return s;
}

// Accepted N in [0, 12] for every corpus entry, worked out by hand.
const std::map<std::string, std::set<Int>> &golden() {
	static const std::map<std::string, std::set<Int>> g = {
	    {"even", range(0, 12, 2)},   {"odd", range(1, 12, 2)},       {"no-final", {}},
	    {"initial-final", range(0, 12)}, {"at-least-2", range(2, 12)}, {"at-most-1", {0, 1}},
	    {"positive", range(1, 12)},  {"at-most-2", {0, 1, 2}},       {"two-p", range(0, 12)},
	    {"gap", {}},                 {"strict", {}},                 {"zigzag", range(0, 12)},
	    {"three-clocks", range(0, 12)}, {"one-clock", range(0, 12)},
	};
	return g;
}

std::set<Int> accepted(const Verdict &v) {
	std::set<Int> s;
	for (const auto &r : v.per_n)
		if (r.reachable) s.insert(r.n);
	return s;
}

} // namespace

TEST_CASE("direct mode reproduces the golden sets", "[solver]") {
	for (const auto &[name, a] : fixtures::corpus()) {
		INFO(name);
		REQUIRE(golden().count(name));
		CHECK(accepted(decide(a, 12, Mode::Direct)) == golden().at(name));
	}
	CHECK(accepted(decide(fixtures::fig1(), 12, Mode::Direct)) == range(0, 12, 3));
}

TEST_CASE("via-POCA mode reproduces the golden sets with decoded witnesses", "[solver]") {
	for (const auto &[name, a] : fixtures::corpus()) {
		INFO(name);
		auto v = decide(a, 10, Mode::ViaPoca);
		for (const auto &r : v.per_n) {
			CHECK(r.reachable == (golden().at(name).count(r.n) > 0));
			if (!r.reachable) continue;
			INFO("N = " << r.n);
			CHECK(r.decode_error.empty());
			REQUIRE(r.witness);
			CHECK(validate_run(*r.witness, a, r.n));
			CHECK(is_accepting(*r.witness, a));
		}
	}
}

TEST_CASE("verdicts are bounded below the threshold", "[solver]") {
	auto v = decide(fixtures::fig1(), 6, Mode::Direct);
	CHECK_FALSE(v.complete);
	CHECK(std::string(v.qualifier()) == "BOUNDED");
	CHECK(v.threshold > 1000000);
	REQUIRE(v.first);
	CHECK(*v.first == 0);
	CHECK_THROWS_AS(decide(fixtures::fig1(), -1, Mode::Direct), MalformedError);
}

TEST_CASE("cross check finds no disagreement on random PTAs", "[solver]") {
	std::mt19937_64 rng(23);
	for (int i = 0; i < 30; ++i) {
		Pta a = fixtures::random_pta(rng);
		auto r = cross_check(a, 6);
		INFO("sample " << i);
		CHECK(r.agree());
		for (const auto &res : r.via_poca.per_n) CHECK(res.decode_error.empty());
	}
}

TEST_CASE("cross check reports the corrupted construction", "[solver]") {
	BuildOptions opt;
	opt.corrupt_for_testing = true;
	auto r = cross_check(fixtures::fig1(), 9, opt);
	CHECK_FALSE(r.agree());
	REQUIRE(r.smallest);
	CHECK(*r.smallest == r.disagreements.front());
}

TEST_CASE("POCA inputs are solved directly", "[solver]") {
	Poca c = fixtures::fig2();
	for (Int n = 0; n <= 17; ++n) CHECK(solve_poca_at(c, n).reachable == (n % 6 == 5));
	auto [lo, hi] = search_window(c, 3);
	CHECK(lo == 0);
	CHECK(hi == value_bound(c, 3));
}
