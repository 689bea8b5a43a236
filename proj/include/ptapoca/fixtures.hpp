#pragma once

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "core.hpp"
#include "semantics.hpp"

namespace ptapoca::fixtures {

// Small builder for hand-written PTAs over clocks x, y and parameter p.
class PtaSketch {
public:
	explicit PtaSketch(std::vector<std::string> states, std::vector<std::string> clocks = {"x", "y"}) {
		a_.states = std::move(states);
		a_.clocks = std::move(clocks);
		a_.params = {"p"};
	}
	PtaSketch &rule(int from, Guard g, std::vector<int> resets, int to) {
		a_.rules.push_back(TimedRule{from, g, std::move(resets), to});
		return *this;
	}
	PtaSketch &finals(std::vector<int> f) {
		a_.finals = std::move(f);
		return *this;
	}
	Pta done() {
		a_.validate();
		return a_;
	}

private:
	Pta a_;
};

inline Guard gc(int clock, Cmp c, Int k) { return Guard::with_const(clock, c, k); }
inline Guard gp(int clock, Cmp c) { return Guard::with_param(clock, c, 0); }

constexpr int X = 0, Y = 1;

// Loops y=3 on q0, leaves when x=p, then needs y=0 once y<=p held.
// Accepting iff 3 divides N.
inline Pta fig1() {
	return PtaSketch({"q0", "q1", "f"})
	    .rule(0, gc(Y, Cmp::Eq, 3), {Y}, 0)
	    .rule(0, gp(X, Cmp::Eq), {}, 1)
	    .rule(1, gc(Y, Cmp::Eq, 0), {}, 2)
	    .rule(1, gp(Y, Cmp::Le), {}, 1)
	    .finals({2})
	    .done();
}

// +p, +1, mod 6. Accepting iff N = 5 mod 6.
inline Poca fig2() {
	Poca c;
	c.states = {"q0", "q1", "q2", "f"};
	c.params = {"p"};
	c.add_rule(0, CounterOp::add_param(+1), 1);
	c.add_rule(1, CounterOp::update(+1), 2);
	c.add_rule(2, CounterOp::mod(6), 3);
	c.finals = {3};
	c.validate();
	return c;
}

// Two states alternating +1 steps.
inline Poca staircase() {
	Poca c;
	c.states = {"a", "b"};
	c.params = {"p"};
	c.add_rule(0, CounterOp::update(+1), 1);
	c.add_rule(1, CounterOp::update(+1), 0);
	c.finals = {0};
	c.validate();
	return c;
}

inline PocaRun staircase_run(Int steps) {
	PocaRun r;
	r.confs.push_back({0, 0});
	for (Int i = 0; i < steps; ++i) {
		r.rules.push_back((int)(i % 2));
		r.confs.push_back({(int)((i + 1) % 2), i + 1});
	}
	return r;
}

// Three parametric clocks: rejected by the reduction.
inline Pta three_parametric() {
	return PtaSketch({"q0", "f"}, {"x", "y", "z"})
	    .rule(0, Guard::with_param(0, Cmp::Le, 0), {}, 0)
	    .rule(0, Guard::with_param(1, Cmp::Le, 0), {}, 0)
	    .rule(0, Guard::with_param(2, Cmp::Eq, 0), {}, 1)
	    .finals({1})
	    .done();
}

struct NamedPta {
	std::string name;
	Pta pta;
};

// Hand-built corpus: at most 4 states, constants at most 2.
inline std::vector<NamedPta> corpus() {
	std::vector<NamedPta> out;
	// parity of N
	out.push_back({"even", PtaSketch({"E", "O", "E2", "f"})
	                           .rule(0, gc(Y, Cmp::Eq, 1), {Y}, 1)
	                           .rule(1, gc(Y, Cmp::Eq, 1), {Y}, 0)
	                           .rule(0, gp(X, Cmp::Eq), {}, 2)
	                           .rule(2, gc(Y, Cmp::Eq, 0), {}, 3)
	                           .rule(3, gp(Y, Cmp::Le), {}, 3)
	                           .finals({3})
	                           .done()});
	out.push_back({"odd", PtaSketch({"E", "O", "O2", "f"})
	                          .rule(0, gc(Y, Cmp::Eq, 1), {Y}, 1)
	                          .rule(1, gc(Y, Cmp::Eq, 1), {Y}, 0)
	                          .rule(1, gp(X, Cmp::Eq), {}, 2)
	                          .rule(2, gc(Y, Cmp::Eq, 0), {}, 3)
	                          .finals({3})
	                          .done()});
	out.push_back({"no-final", PtaSketch({"q0", "q1"})
	                               .rule(0, gp(X, Cmp::Eq), {Y}, 1)
	                               .rule(1, gp(Y, Cmp::Le), {X}, 0)
	                               .finals({})
	                               .done()});
	out.push_back({"initial-final", PtaSketch({"q0", "q1"}).rule(0, gp(X, Cmp::Ge), {}, 1).finals({0}).done()});
	out.push_back({"at-least-2", PtaSketch({"q0", "q1", "f"})
	                                 .rule(0, gc(X, Cmp::Ge, 2), {}, 1)
	                                 .rule(1, gp(X, Cmp::Le), {}, 2)
	                                 .finals({2})
	                                 .done()});
	out.push_back({"at-most-1", PtaSketch({"q0", "q1", "f"})
	                                .rule(0, gp(X, Cmp::Eq), {}, 1)
	                                .rule(1, gc(Y, Cmp::Le, 1), {}, 2)
	                                .finals({2})
	                                .done()});
	out.push_back({"positive", PtaSketch({"q0", "q1", "f"})
	                                .rule(0, gc(X, Cmp::Eq, 1), {}, 1)
	                                .rule(1, gp(Y, Cmp::Eq), {}, 2)
	                                .finals({2})
	                                .done()});
	out.push_back({"at-most-2", PtaSketch({"q0", "q1", "f"})
	                                .rule(0, gp(X, Cmp::Eq), {}, 1)
	                                .rule(1, gc(Y, Cmp::Le, 2), {}, 2)
	                                .finals({2})
	                                .done()});
	// two parametric waits in a row
	out.push_back({"two-p", PtaSketch({"q0", "q1", "f"})
	                            .rule(0, gp(Y, Cmp::Eq), {Y}, 1)
	                            .rule(1, gp(Y, Cmp::Eq), {}, 2)
	                            .rule(2, gc(X, Cmp::Lt, 2), {}, 2)
	                            .finals({2})
	                            .done()});
	// waits past p and then needs x <= p again: never accepting
	out.push_back({"gap", PtaSketch({"q0", "q1", "q2", "f"})
	                          .rule(0, gp(X, Cmp::Eq), {Y}, 1)
	                          .rule(1, gc(Y, Cmp::Eq, 2), {}, 2)
	                          .rule(2, gp(X, Cmp::Le), {}, 3)
	                          .finals({3})
	                          .done()});
	// strict parametric bounds
	out.push_back({"strict", PtaSketch({"q0", "q1", "f"})
	                             .rule(0, gp(X, Cmp::Gt), {Y}, 1)
	                             .rule(1, gp(X, Cmp::Lt), {}, 2)
	                             .rule(1, gc(Y, Cmp::Eq, 0), {}, 1)
	                             .finals({2})
	                             .done()});
	// mutual resets, period 2 in one clock
	out.push_back({"zigzag", PtaSketch({"a", "b", "c", "f"})
	                             .rule(0, gc(X, Cmp::Eq, 2), {X}, 1)
	                             .rule(1, gc(Y, Cmp::Ge, 1), {Y}, 0)
	                             .rule(0, gp(Y, Cmp::Eq), {}, 2)
	                             .rule(2, gp(X, Cmp::Gt), {}, 3)
	                             .finals({3})
	                             .done()});
	// a third, non-parametric clock
	out.push_back({"three-clocks", PtaSketch({"q0", "q1", "f"}, {"x", "y", "z"})
	                                   .rule(0, gc(2, Cmp::Eq, 1), {2}, 0)
	                                   .rule(0, gp(X, Cmp::Eq), {Y}, 1)
	                                   .rule(1, gp(Y, Cmp::Ge), {}, 2)
	                                   .finals({2})
	                                   .done()});
	out.push_back({"one-clock", PtaSketch({"q0", "f"}, {"x"})
	                                .rule(0, gc(X, Cmp::Eq, 2), {X}, 0)
	                                .rule(0, gp(X, Cmp::Eq), {}, 1)
	                                .finals({1})
	                                .done()});
	return out;
}

struct RandomSpec {
	int max_states = 3;
	int max_rules = 6;
	Int max_const = 2;
};

// Random (2,1)-PTA over x, y: both clocks carry some parametric guard.
inline Pta random_pta(std::mt19937_64 &rng, RandomSpec spec = {}) {
	auto pick = [&](Int lo, Int hi) { return std::uniform_int_distribution<Int>(lo, hi)(rng); };
	static const Cmp cmps[] = {Cmp::Lt, Cmp::Le, Cmp::Eq, Cmp::Ge, Cmp::Gt};
	Pta a;
	int n = (int)pick(2, spec.max_states);
	for (int i = 0; i < n; ++i) a.states.push_back("q" + std::to_string(i));
	a.clocks = {"x", "y"};
	a.params = {"p"};
	int m = (int)pick(2, spec.max_rules);
	for (int i = 0; i < m; ++i) {
		TimedRule r;
		r.from = (int)pick(0, n - 1);
		r.to = (int)pick(0, n - 1);
		int clock = (int)pick(0, 1);
		Cmp c = cmps[pick(0, 4)];
		r.guard = i < 2 ? gp(i, c) : pick(0, 1) ? gp(clock, c) : gc(clock, c, pick(0, spec.max_const));
		for (int k = 0; k < 2; ++k)
			if (pick(0, 2) == 0) r.resets.push_back(k);
		a.rules.push_back(r);
	}
	a.finals = {(int)pick(1, n - 1)};
	a.validate();
	return a;
}

// Random 0/1-PTA over x, y with Consts = {0}. Timed rules may cycle, so
// progressions with periods above 1 show up.
inline ZeroOnePta random_zero_one(std::mt19937_64 &rng, int max_states = 4, int max_rules = 8) {
	auto pick = [&](Int lo, Int hi) { return std::uniform_int_distribution<Int>(lo, hi)(rng); };
	static const Cmp cmps[] = {Cmp::Lt, Cmp::Le, Cmp::Eq, Cmp::Ge, Cmp::Gt};
	ZeroOnePta b;
	int n = (int)pick(2, max_states);
	for (int i = 0; i < n; ++i) b.states.push_back("q" + std::to_string(i));
	b.clocks = {"x", "y"};
	b.params = {"p"};
	int m = (int)pick(2, max_rules);
	for (int i = 0; i < m; ++i) {
		TimedRule r;
		r.from = (int)pick(0, n - 1);
		r.to = (int)pick(0, n - 1);
		int clock = (int)pick(0, 1);
		switch (pick(0, 3)) {
		case 0: r.guard = Guard::empty(0); break;
		case 1: r.guard = gc(clock, cmps[pick(0, 4)], 0); break;
		default: r.guard = gp(clock, cmps[pick(0, 4)]);
		}
		bool timed = pick(0, 1);
		for (int k = 0; k < 2; ++k)
			if (pick(0, timed ? 5 : 2) == 0) r.resets.push_back(k);
		(timed ? b.r1 : b.r0).push_back(r);
	}
	b.finals = {(int)pick(1, n - 1)};
	b.validate();
	return b;
}

} // namespace ptapoca::fixtures
