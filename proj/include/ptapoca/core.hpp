#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace ptapoca {

using Int = std::int64_t;
using BigInt = boost::multiprecision::cpp_int;

// Thrown for structurally invalid automata or inputs.
struct MalformedError : std::invalid_argument {
	using std::invalid_argument::invalid_argument;
};

enum class Cmp { Lt, Le, Eq, Ge, Gt };

inline bool cmp_holds(Int lhs, Cmp c, Int rhs) {
	switch (c) {
	case Cmp::Lt: return lhs < rhs;
	case Cmp::Le: return lhs <= rhs;
	case Cmp::Eq: return lhs == rhs;
	case Cmp::Ge: return lhs >= rhs;
	case Cmp::Gt: return lhs > rhs;
	}
	return false;
}

inline const char *cmp_symbol(Cmp c) {
	switch (c) {
	case Cmp::Lt: return "<";
	case Cmp::Le: return "<=";
	case Cmp::Eq: return "=";
	case Cmp::Ge: return ">=";
	case Cmp::Gt: return ">";
	}
	return "?";
}

inline Cmp parse_cmp(const std::string &s) {
	if (s == "<") return Cmp::Lt;
	if (s == "<=" || s == "≤") return Cmp::Le;
	if (s == "=" || s == "==") return Cmp::Eq;
	if (s == ">=" || s == "≥") return Cmp::Ge;
	if (s == ">") return Cmp::Gt;
	throw MalformedError("unknown comparison symbol '" + s + "'");
}

// a ⋈ b  <=>  b mirror(⋈) a
inline Cmp mirror(Cmp c) {
	switch (c) {
	case Cmp::Lt: return Cmp::Gt;
	case Cmp::Le: return Cmp::Ge;
	case Cmp::Ge: return Cmp::Le;
	case Cmp::Gt: return Cmp::Lt;
	default: return c;
	}
}

// Number of bits: min{i+1 | n <= 2^i}. log_size(0) == 1.
inline Int log_size(Int n) {
	if (n < 0) throw MalformedError("log_size of a negative number");
	Int i = 0;
	while (n > (Int{1} << i)) ++i;
	return i + 1;
}

struct Guard {
	int clock = 0;
	Cmp cmp = Cmp::Ge;
	bool parametric = false;
	Int constant = 0;
	int param = 0;

	static Guard with_const(int clock, Cmp c, Int k) {
		return Guard{clock, c, false, k, 0};
	}
	static Guard with_param(int clock, Cmp c, int p) {
		return Guard{clock, c, true, 0, p};
	}
	// g_eps: "x >= 0" on the given clock
	static Guard empty(int clock) { return with_const(clock, Cmp::Ge, 0); }

	bool is_empty() const { return !parametric && cmp == Cmp::Ge && constant == 0; }
	bool holds(Int clock_value, Int param_value) const {
		return cmp_holds(clock_value, cmp, parametric ? param_value : constant);
	}
	Int size() const { return parametric ? 1 : log_size(constant); }
	bool operator==(const Guard &) const = default;
};

struct TimedRule {
	int from = 0;
	Guard guard;
	std::vector<int> resets; // sorted, unique
	int to = 0;
	bool operator==(const TimedRule &) const = default;
};

namespace detail {

inline std::unordered_map<std::string, int> index_of(const std::vector<std::string> &names,
                                                     const char *what) {
	std::unordered_map<std::string, int> m;
	for (int i = 0; i < (int)names.size(); ++i)
		if (!m.emplace(names[i], i).second)
			throw MalformedError(std::string("duplicate ") + what + " '" + names[i] + "'");
	return m;
}

inline void normalize_ids(std::vector<int> &v) {
	std::sort(v.begin(), v.end());
	v.erase(std::unique(v.begin(), v.end()), v.end());
}

inline void check_range(int id, std::size_t n, const char *what) {
	if (id < 0 || (std::size_t)id >= n)
		throw MalformedError(std::string(what) + " id out of range");
}

inline void check_timed_rule(const TimedRule &r, std::size_t nq, std::size_t nc, std::size_t np) {
	check_range(r.from, nq, "state");
	check_range(r.to, nq, "state");
	check_range(r.guard.clock, nc, "clock");
	if (r.guard.parametric) check_range(r.guard.param, np, "parameter");
	else if (r.guard.constant < 0) throw MalformedError("negative guard constant");
	for (int c : r.resets) check_range(c, nc, "clock");
}

} // namespace detail

struct Pta {
	std::vector<std::string> states, clocks, params;
	std::vector<TimedRule> rules;
	int initial = 0;
	std::vector<int> finals;

	void validate() {
		detail::index_of(states, "state");
		detail::index_of(clocks, "clock");
		detail::index_of(params, "parameter");
		if (clocks.empty()) throw MalformedError("a PTA needs at least one clock");
		detail::check_range(initial, states.size(), "initial state");
		detail::normalize_ids(finals);
		for (int f : finals) detail::check_range(f, states.size(), "final state");
		for (auto &r : rules) {
			detail::normalize_ids(r.resets);
			detail::check_timed_rule(r, states.size(), clocks.size(), params.size());
		}
	}
	bool is_final(int q) const { return std::binary_search(finals.begin(), finals.end(), q); }
};

// Rules in r0 take no time, rules in r1 take exactly one unit.
struct ZeroOnePta {
	std::vector<std::string> states, clocks, params;
	std::vector<TimedRule> r0, r1;
	int initial = 0;
	std::vector<int> finals;

	void validate() {
		detail::index_of(states, "state");
		detail::index_of(clocks, "clock");
		detail::index_of(params, "parameter");
		if (clocks.empty()) throw MalformedError("a 0/1-PTA needs at least one clock");
		detail::check_range(initial, states.size(), "initial state");
		detail::normalize_ids(finals);
		for (int f : finals) detail::check_range(f, states.size(), "final state");
		for (auto *set : {&r0, &r1})
			for (auto &r : *set) {
				detail::normalize_ids(r.resets);
				detail::check_timed_rule(r, states.size(), clocks.size(), params.size());
			}
	}
	bool is_final(int q) const { return std::binary_search(finals.begin(), finals.end(), q); }
	const std::vector<TimedRule> &rules(int time) const { return time ? r1 : r0; }
};

struct CounterOp {
	enum Kind { Update, AddParam, Mod, CmpConst, CmpParam };
	Kind kind = Update;
	Int value = 0; // update amount, modulus, or comparison constant
	int sign = 1;  // for AddParam
	Cmp cmp = Cmp::Eq;
	int param = 0;

	static CounterOp update(Int c) { return {Update, c, 1, Cmp::Eq, 0}; }
	static CounterOp add_param(int sign, int p = 0) { return {AddParam, 0, sign, Cmp::Eq, p}; }
	static CounterOp mod(Int c) { return {Mod, c, 1, Cmp::Eq, 0}; }
	static CounterOp cmp_const(Cmp c, Int k) { return {CmpConst, k, 1, c, 0}; }
	static CounterOp cmp_param(Cmp c, int p = 0) { return {CmpParam, 0, 1, c, p}; }

	bool is_test() const { return kind == Mod || kind == CmpConst || kind == CmpParam; }
	bool is_comparison() const { return kind == CmpConst || kind == CmpParam; }
	Int size() const {
		if (kind == Mod || kind == CmpConst) return log_size(value);
		return 1;
	}
	bool operator==(const CounterOp &) const = default;
};

struct PocaRule {
	int from = 0;
	CounterOp op;
	int to = 0;
	bool operator==(const PocaRule &) const = default;
};

struct Poca {
	std::vector<std::string> states, params;
	std::vector<PocaRule> rules;
	int initial = 0;
	std::vector<int> finals;

	void validate() {
		detail::index_of(states, "state");
		detail::index_of(params, "parameter");
		detail::check_range(initial, states.size(), "initial state");
		detail::normalize_ids(finals);
		for (int f : finals) detail::check_range(f, states.size(), "final state");
		for (const auto &r : rules) {
			detail::check_range(r.from, states.size(), "state");
			detail::check_range(r.to, states.size(), "state");
			switch (r.op.kind) {
			case CounterOp::Update:
				if (r.op.value < -1 || r.op.value > 1) throw MalformedError("update outside {-1,0,+1}");
				break;
			case CounterOp::AddParam:
			case CounterOp::CmpParam:
				detail::check_range(r.op.param, params.size(), "parameter");
				if (r.op.kind == CounterOp::AddParam && r.op.sign != 1 && r.op.sign != -1)
					throw MalformedError("parameter update sign must be +1 or -1");
				break;
			case CounterOp::Mod:
				if (r.op.value < 1) throw MalformedError("modulus must be at least 1");
				break;
			case CounterOp::CmpConst:
				if (r.op.value < 0) throw MalformedError("negative comparison constant");
				break;
			}
		}
	}
	bool is_final(int q) const { return std::binary_search(finals.begin(), finals.end(), q); }
	int add_state(std::string name) {
		states.push_back(std::move(name));
		return (int)states.size() - 1;
	}
	void add_rule(int from, CounterOp op, int to) { rules.push_back({from, op, to}); }
};

// ---- sizes and constants ----

inline Int pta_size(const Pta &a) {
	Int s = (Int)(a.states.size() + a.clocks.size() + a.params.size() + a.rules.size());
	for (const auto &r : a.rules) s += r.guard.size();
	return s;
}

inline Int zero_one_size(const ZeroOnePta &b) {
	Int s = (Int)(b.states.size() + b.clocks.size() + b.params.size() + b.r0.size() + b.r1.size());
	for (const auto *set : {&b.r0, &b.r1})
		for (const auto &r : *set) s += r.guard.size();
	return s;
}

inline Int poca_size(const Poca &c) {
	Int s = (Int)(c.states.size() + c.params.size() + c.rules.size());
	for (const auto &r : c.rules) s += r.op.size();
	return s;
}

inline std::set<Int> pta_consts(const Pta &a) {
	std::set<Int> out;
	for (const auto &r : a.rules)
		if (!r.guard.parametric) out.insert(r.guard.constant);
	return out;
}

inline std::set<Int> zero_one_consts(const ZeroOnePta &b) {
	std::set<Int> out;
	for (const auto *set : {&b.r0, &b.r1})
		for (const auto &r : *set)
			if (!r.guard.parametric) out.insert(r.guard.constant);
	return out;
}

inline std::set<Int> poca_consts(const Poca &c) {
	std::set<Int> out;
	for (const auto &r : c.rules)
		if (r.op.kind == CounterOp::Mod || r.op.kind == CounterOp::CmpConst) out.insert(r.op.value);
	return out;
}

// Clocks compared against a parameter somewhere.
inline std::vector<int> parametric_clocks(const Pta &a) {
	std::vector<int> out;
	for (const auto &r : a.rules)
		if (r.guard.parametric) out.push_back(r.guard.clock);
	detail::normalize_ids(out);
	return out;
}

inline BigInt gcd_big(BigInt a, BigInt b) {
	while (b != 0) {
		BigInt t = a % b;
		a = b;
		b = t;
	}
	return a;
}

// LCM of a set of positive integers; the empty set yields 1.
template <class Range> BigInt lcm_set(const Range &values) {
	BigInt acc = 1;
	for (const auto &v : values) {
		BigInt b(v);
		if (b < 1) throw MalformedError("lcm_set needs positive integers");
		acc = acc / gcd_big(acc, b) * b;
	}
	return acc;
}

inline BigInt lcm_range(Int j) {
	if (j < 1) throw MalformedError("lcm_range needs j >= 1");
	std::vector<Int> v(j);
	std::iota(v.begin(), v.end(), Int{1});
	return lcm_set(v);
}

struct DerivedConstants {
	BigInt Z = 1, Gamma = 1, Upsilon = 1, M = 1;
	bool exact = true;

	static DerivedConstants from_formulas(Int states, const BigInt &z) {
		if (states < 1) throw MalformedError("derived constants need at least one state");
		DerivedConstants d;
		BigInt k = 17 * BigInt(states);
		BigInt l = lcm_range(17 * states);
		d.Z = z;
		d.Gamma = l * z;
		d.Upsilon = k * l * (k * z + 2);
		d.M = 30 * (d.Upsilon + d.Gamma + 1);
		return d;
	}

	// Arbitrary positive values; never exact.
	static DerivedConstants override_values(BigInt z, BigInt gamma, BigInt upsilon, BigInt m) {
		if (z < 1 || gamma < 1 || upsilon < 1 || m < 1)
			throw MalformedError("derived constants must be positive");
		DerivedConstants d{std::move(z), std::move(gamma), std::move(upsilon), std::move(m), false};
		return d;
	}

	// Same shape as the exact formulas with K standing in for 17|Q|.
	static DerivedConstants test_scale(Int k, Int z) {
		if (k < 1 || z < 1) throw MalformedError("test-scale constants need K, Z >= 1");
		BigInt l = lcm_range(k);
		BigInt gamma = l * z;
		BigInt upsilon = BigInt(k) * l * (BigInt(k) * z + 2);
		return override_values(z, gamma, upsilon, 30 * (upsilon + gamma + 1));
	}
};

inline DerivedConstants derive_constants(const Poca &c) {
	std::vector<Int> positive;
	for (Int v : poca_consts(c))
		if (v > 0) positive.push_back(v);
	return DerivedConstants::from_formulas((Int)std::max<std::size_t>(c.states.size(), 1),
	                                       lcm_set(positive));
}

inline Int to_int(const BigInt &b) {
	if (b > std::numeric_limits<Int>::max() || b < std::numeric_limits<Int>::min())
		throw std::overflow_error("value does not fit into 64 bits");
	return static_cast<Int>(b);
}

inline Int floor_mod(Int a, Int b) {
	Int r = a % b;
	return r < 0 ? r + b : r;
}

} // namespace ptapoca
