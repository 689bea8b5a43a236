#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>

#include "ptapoca/fixtures.hpp"
#include "ptapoca/json_io.hpp"
#include "ptapoca/solver.hpp"
#include "ptapoca/zero_one.hpp"

using namespace ptapoca;
using io::Json;

namespace {

Json load(const std::string &name) {
	std::ifstream in(std::filesystem::path(PTAPOCA_FIXTURE_DIR) / name);
	REQUIRE(in);
	return Json::parse(in);
}

} // namespace

TEST_CASE("guards and operations round trip", "[json]") {
	std::vector<std::string> clocks{"x", "y"}, params{"p"};
	for (const char *g : {"x <= p", "y = 0", "x > 3", "y >= p"})
		CHECK(io::guard_string(io::parse_guard(g, clocks, params), clocks, params) == g);
	CHECK(io::parse_guard("x≤p", clocks, params) == Guard::with_param(0, Cmp::Le, 0));
	CHECK_THROWS_AS(io::parse_guard("z < 1", clocks, params), MalformedError);
	CHECK_THROWS_AS(io::parse_guard("x < -1", clocks, params), MalformedError);

	for (const char *op : {"+1", "-1", "+0", "+p", "-p", "mod 3", "= 5", "<= p"})
		CHECK(io::op_string(io::parse_op(op, params), params) == op);
	CHECK(io::parse_op("0", params) == CounterOp::update(0));
	CHECK_THROWS_AS(io::parse_op("+q", params), MalformedError);
	CHECK_THROWS_AS(io::parse_op("x = 1", params), MalformedError);
	CHECK_THROWS_AS(io::parse_op("mod k", params), MalformedError);
}

TEST_CASE("automata round trip", "[json]") {
	Pta a = fixtures::fig1();
	CHECK(io::pta_from_json(io::to_json(a)).rules == a.rules);
	auto b = to_zero_one_pta(a);
	auto b2 = io::zero_one_from_json(io::to_json(b));
	CHECK(b2.r0 == b.r0);
	CHECK(b2.r1 == b.r1);
	CHECK(b2.finals == b.finals);
	Poca c = fixtures::fig2();
	CHECK(io::poca_from_json(io::to_json(c)).rules == c.rules);
	CHECK_THROWS_AS(io::poca_from_json(io::to_json(a)), MalformedError);
}

TEST_CASE("malformed documents are rejected", "[json]") {
	Json j = io::to_json(fixtures::fig1());
	j.erase("initial");
	CHECK_THROWS_WITH(io::pta_from_json(j), Catch::Matchers::ContainsSubstring("missing field 'initial'"));
	Json k = io::to_json(fixtures::fig1());
	k["rules"][0]["to"] = "nowhere";
	CHECK_THROWS_WITH(io::pta_from_json(k), Catch::Matchers::ContainsSubstring("unknown state"));
	Json t = io::to_json(fixtures::fig1());
	t["states"] = 3;
	CHECK_THROWS_AS(io::pta_from_json(t), MalformedError);
}

TEST_CASE("runs round trip", "[json]") {
	Pta a = fixtures::fig1();
	auto run = *pta_reach_bruteforce(a, 3);
	Json j = io::to_json(run, a, 3);
	CHECK(io::run_param(j) == 3);
	auto back = io::pta_run_from_json(j, a);
	CHECK(back.confs == run.confs);
	CHECK(back.labels == run.labels);

	auto b = to_zero_one_pta(a);
	auto zrun = *zero_one_reach(b, 3);
	auto zback = io::zero_one_run_from_json(io::to_json(zrun, b, 3), b);
	CHECK(zback.confs == zrun.confs);
	CHECK(zback.labels == zrun.labels);

	Poca c = fixtures::fig2();
	auto prun = *poca_reach_bounded(c, 5, 0, 10);
	auto pback = io::poca_run_from_json(io::to_json(prun, c, 5), c);
	CHECK(pback.confs == prun.confs);
	CHECK(pback.rules == prun.rules);
}

TEST_CASE("progressions and constants", "[json]") {
	APSet s({{1, 0}, {4, 3}});
	CHECK(io::apset_from_json(io::to_json(s)) == s);
	CHECK_THROWS_AS(io::apset_from_json(Json::parse("[[1]]")), MalformedError);

	auto d = io::constants_from_json(Json::parse(R"({"K": 3, "Z": 2})"));
	CHECK(d.Gamma == 12);
	auto e = io::constants_from_json(Json::parse(R"({"Z": 1, "Gamma": "2", "Upsilon": 8})"));
	CHECK(e.Upsilon == 8);
	CHECK_FALSE(e.exact);
	auto big = io::to_json(DerivedConstants::from_formulas(2, 1));
	CHECK(big["Gamma"].get<std::string>() == lcm_range(34).str());
	CHECK_THROWS_AS(io::constants_from_json(Json::parse(R"({"Z": 1})")), MalformedError);
}

TEST_CASE("annotations describe every state", "[json]") {
	auto p = make_pipeline(fixtures::fig1());
	Json j = io::annotations_json(p.built);
	CHECK(j["states"].size() == p.built.poca.states.size());
	CHECK(j["gadgets"].size() == p.built.gadgets.size());
}

TEST_CASE("committed fixtures match the built-in corpus", "[json]") {
	for (const auto &[name, a] : fixtures::corpus()) {
		INFO(name);
		Pta f = io::pta_from_json(load(name + ".json"));
		CHECK(f.states == a.states);
		CHECK(f.rules == a.rules);
		CHECK(f.finals == a.finals);
	}
	CHECK(io::pta_from_json(load("fig1.json")).rules == fixtures::fig1().rules);
	CHECK(io::poca_from_json(load("fig2.json")).rules == fixtures::fig2().rules);
	CHECK_THROWS_AS(to_zero_one_pta(io::pta_from_json(load("bad-three-parametric.json"))), NotTwoOneError);
}
