#pragma once

#include <cctype>
#include <string>
#include <vector>

#include <json.hpp>

#include "builder.hpp"
#include "core.hpp"
#include "semantics.hpp"
#include "semilinear.hpp"

namespace ptapoca::io {

using Json = nlohmann::ordered_json;

namespace detail {

inline std::string trim(const std::string &s) {
	std::size_t a = 0, b = s.size();
	while (a < b && std::isspace((unsigned char)s[a])) ++a;
	while (b > a && std::isspace((unsigned char)s[b - 1])) --b;
	return s.substr(a, b - a);
}

inline bool is_integer(const std::string &s) {
	if (s.empty()) return false;
	std::size_t i = s[0] == '+' || s[0] == '-' ? 1 : 0;
	if (i == s.size()) return false;
	for (; i < s.size(); ++i)
		if (!std::isdigit((unsigned char)s[i])) return false;
	return true;
}

inline Int to_integer(const std::string &s) {
	try {
		return std::stoll(s);
	} catch (const std::exception &) {
		throw MalformedError("integer out of range: '" + s + "'");
	}
}

// Splits "lhs <op> rhs" at the comparison symbol.
inline std::tuple<std::string, Cmp, std::string> split_cmp(const std::string &text) {
	static const char *symbols[] = {"<=", ">=", "==", "≤", "≥", "<", ">", "="};
	for (const char *sym : symbols) {
		auto pos = text.find(sym);
		if (pos == std::string::npos) continue;
		return {trim(text.substr(0, pos)), parse_cmp(sym), trim(text.substr(pos + std::string(sym).size()))};
	}
	throw MalformedError("no comparison in '" + text + "'");
}

template <class T> T get(const Json &j, const char *key) {
	if (!j.contains(key)) throw MalformedError(std::string("missing field '") + key + "'");
	try {
		return j.at(key).get<T>();
	} catch (const nlohmann::json::exception &) {
		throw MalformedError(std::string("field '") + key + "' has the wrong type");
	}
}

inline int lookup(const std::unordered_map<std::string, int> &m, const std::string &name, const char *what) {
	auto it = m.find(name);
	if (it == m.end()) throw MalformedError(std::string("unknown ") + what + " '" + name + "'");
	return it->second;
}

} // namespace detail

// ---- guards and operations ----

inline Guard parse_guard(const std::string &text, const std::vector<std::string> &clocks,
                         const std::vector<std::string> &params) {
	auto [lhs, cmp, rhs] = detail::split_cmp(text);
	Guard g;
	g.clock = detail::lookup(ptapoca::detail::index_of(clocks, "clock"), lhs, "clock");
	g.cmp = cmp;
	if (detail::is_integer(rhs)) {
		g.constant = detail::to_integer(rhs);
		if (g.constant < 0) throw MalformedError("negative guard constant");
	} else {
		g.parametric = true;
		g.param = detail::lookup(ptapoca::detail::index_of(params, "parameter"), rhs, "parameter");
	}
	return g;
}

inline std::string guard_string(const Guard &g, const std::vector<std::string> &clocks,
                                const std::vector<std::string> &params) {
	return clocks.at(g.clock) + " " + cmp_symbol(g.cmp) + " " +
	       (g.parametric ? params.at(g.param) : std::to_string(g.constant));
}

inline CounterOp parse_op(const std::string &raw, const std::vector<std::string> &params) {
	const std::string text = detail::trim(raw);
	if (text.rfind("mod", 0) == 0) {
		std::string k = detail::trim(text.substr(3));
		if (!detail::is_integer(k)) throw MalformedError("bad modulus in '" + text + "'");
		return CounterOp::mod(detail::to_integer(k));
	}
	if (detail::is_integer(text)) return CounterOp::update(detail::to_integer(text));
	auto pidx = ptapoca::detail::index_of(params, "parameter");
	if (!text.empty() && (text[0] == '+' || text[0] == '-')) {
		std::string name = detail::trim(text.substr(1));
		return CounterOp::add_param(text[0] == '+' ? 1 : -1, detail::lookup(pidx, name, "parameter"));
	}
	auto [lhs, cmp, rhs] = detail::split_cmp(text);
	if (!lhs.empty()) throw MalformedError("comparison operation must not name the counter: '" + text + "'");
	if (detail::is_integer(rhs)) return CounterOp::cmp_const(cmp, detail::to_integer(rhs));
	return CounterOp::cmp_param(cmp, detail::lookup(pidx, rhs, "parameter"));
}

inline std::string op_string(const CounterOp &op, const std::vector<std::string> &params) {
	switch (op.kind) {
	case CounterOp::Update: return (op.value >= 0 ? "+" : "") + std::to_string(op.value);
	case CounterOp::AddParam: return (op.sign > 0 ? "+" : "-") + params.at(op.param);
	case CounterOp::Mod: return "mod " + std::to_string(op.value);
	case CounterOp::CmpConst: return std::string(cmp_symbol(op.cmp)) + " " + std::to_string(op.value);
	default: return std::string(cmp_symbol(op.cmp)) + " " + params.at(op.param);
	}
}

// ---- automata ----

namespace detail {

inline TimedRule parse_timed_rule(const Json &r, const std::unordered_map<std::string, int> &states,
                                  const std::vector<std::string> &clocks, const std::vector<std::string> &params) {
	TimedRule t;
	t.from = lookup(states, get<std::string>(r, "from"), "state");
	t.to = lookup(states, get<std::string>(r, "to"), "state");
	t.guard = r.contains("guard") ? parse_guard(get<std::string>(r, "guard"), clocks, params) : Guard::empty(0);
	auto cidx = ptapoca::detail::index_of(clocks, "clock");
	if (r.contains("resets"))
		for (const auto &c : get<std::vector<std::string>>(r, "resets")) t.resets.push_back(lookup(cidx, c, "clock"));
	return t;
}

inline Json timed_rule_json(const TimedRule &r, const std::vector<std::string> &states,
                            const std::vector<std::string> &clocks, const std::vector<std::string> &params) {
	Json j;
	j["from"] = states.at(r.from);
	j["to"] = states.at(r.to);
	j["guard"] = guard_string(r.guard, clocks, params);
	Json resets = Json::array();
	for (int c : r.resets) resets.push_back(clocks.at(c));
	j["resets"] = resets;
	return j;
}

template <class A> void read_header(const Json &j, A &a, std::unordered_map<std::string, int> &idx) {
	a.states = get<std::vector<std::string>>(j, "states");
	a.params = j.contains("params") ? get<std::vector<std::string>>(j, "params") : std::vector<std::string>{"p"};
	idx = ptapoca::detail::index_of(a.states, "state");
	a.initial = lookup(idx, get<std::string>(j, "initial"), "state");
	a.finals.clear();
	for (const auto &f : get<std::vector<std::string>>(j, "finals")) a.finals.push_back(lookup(idx, f, "state"));
}

template <class A> void write_header(Json &j, const A &a) {
	j["states"] = a.states;
	j["params"] = a.params;
	j["initial"] = a.states.at(a.initial);
	Json f = Json::array();
	for (int q : a.finals) f.push_back(a.states.at(q));
	j["finals"] = f;
}

inline void expect_kind(const Json &j, const std::string &kind) {
	std::string k = get<std::string>(j, "kind");
	if (k != kind) throw MalformedError("expected kind '" + kind + "', got '" + k + "'");
}

} // namespace detail

inline Pta pta_from_json(const Json &j) {
	detail::expect_kind(j, "pta");
	Pta a;
	std::unordered_map<std::string, int> idx;
	detail::read_header(j, a, idx);
	a.clocks = detail::get<std::vector<std::string>>(j, "clocks");
	for (const auto &r : detail::get<Json>(j, "rules")) a.rules.push_back(detail::parse_timed_rule(r, idx, a.clocks, a.params));
	a.validate();
	return a;
}

inline Json to_json(const Pta &a) {
	Json j;
	j["kind"] = "pta";
	detail::write_header(j, a);
	j["clocks"] = a.clocks;
	Json rules = Json::array();
	for (const auto &r : a.rules) rules.push_back(detail::timed_rule_json(r, a.states, a.clocks, a.params));
	j["rules"] = rules;
	return j;
}

inline ZeroOnePta zero_one_from_json(const Json &j) {
	detail::expect_kind(j, "zero-one-pta");
	ZeroOnePta b;
	std::unordered_map<std::string, int> idx;
	detail::read_header(j, b, idx);
	b.clocks = detail::get<std::vector<std::string>>(j, "clocks");
	for (const auto &r : detail::get<Json>(j, "rules")) {
		Int t = detail::get<Int>(r, "time");
		if (t != 0 && t != 1) throw MalformedError("rule time must be 0 or 1");
		(t ? b.r1 : b.r0).push_back(detail::parse_timed_rule(r, idx, b.clocks, b.params));
	}
	b.validate();
	return b;
}

inline Json to_json(const ZeroOnePta &b) {
	Json j;
	j["kind"] = "zero-one-pta";
	detail::write_header(j, b);
	j["clocks"] = b.clocks;
	Json rules = Json::array();
	for (int t = 0; t < 2; ++t)
		for (const auto &r : b.rules(t)) {
			Json x = detail::timed_rule_json(r, b.states, b.clocks, b.params);
			x["time"] = t;
			rules.push_back(x);
		}
	j["rules"] = rules;
	return j;
}

inline Poca poca_from_json(const Json &j) {
	detail::expect_kind(j, "poca");
	Poca c;
	std::unordered_map<std::string, int> idx;
	detail::read_header(j, c, idx);
	for (const auto &r : detail::get<Json>(j, "rules"))
		c.rules.push_back({detail::lookup(idx, detail::get<std::string>(r, "from"), "state"),
		                   parse_op(detail::get<std::string>(r, "op"), c.params),
		                   detail::lookup(idx, detail::get<std::string>(r, "to"), "state")});
	c.validate();
	return c;
}

inline Json to_json(const Poca &c) {
	Json j;
	j["kind"] = "poca";
	detail::write_header(j, c);
	Json rules = Json::array();
	for (const auto &r : c.rules)
		rules.push_back({{"from", c.states.at(r.from)}, {"op", op_string(r.op, c.params)}, {"to", c.states.at(r.to)}});
	j["rules"] = rules;
	return j;
}

// ---- runs ----

inline Json to_json(const PtaRun &run, const Pta &a, Int n) {
	Json steps = Json::array();
	for (std::size_t i = 0; i < run.confs.size(); ++i) {
		Json s{{"state", a.states.at(run.confs[i].state)}, {"valuation", run.confs[i].v}};
		if (i > 0) s["label"] = {{"rule", run.labels[i - 1].rule}, {"delay", run.labels[i - 1].delay}};
		steps.push_back(s);
	}
	return {{"kind", "pta-run"}, {"param", n}, {"run", steps}};
}

inline Json to_json(const ZeroOneRun &run, const ZeroOnePta &b, Int n) {
	Json steps = Json::array();
	for (std::size_t i = 0; i < run.confs.size(); ++i) {
		Json s{{"state", b.states.at(run.confs[i].state)}, {"valuation", run.confs[i].v}};
		if (i > 0) s["label"] = {{"time", run.labels[i - 1].time}, {"rule", run.labels[i - 1].rule}};
		steps.push_back(s);
	}
	return {{"kind", "zero-one-run"}, {"param", n}, {"run", steps}};
}

inline Json to_json(const PocaRun &run, const Poca &c, Int n) {
	Json steps = Json::array();
	for (std::size_t i = 0; i < run.confs.size(); ++i) {
		Json s{{"state", c.states.at(run.confs[i].state)}, {"counter", run.confs[i].z}};
		if (i > 0) s["label"] = {{"rule", run.rules[i - 1]}};
		steps.push_back(s);
	}
	return {{"kind", "poca-run"}, {"param", n}, {"run", steps}};
}

inline Int run_param(const Json &j) { return detail::get<Int>(j, "param"); }

inline std::string run_kind(const Json &j) { return detail::get<std::string>(j, "kind"); }

inline PtaRun pta_run_from_json(const Json &j, const Pta &a) {
	detail::expect_kind(j, "pta-run");
	auto idx = ptapoca::detail::index_of(a.states, "state");
	PtaRun run;
	for (const auto &s : detail::get<Json>(j, "run")) {
		run.confs.push_back({detail::lookup(idx, detail::get<std::string>(s, "state"), "state"),
		                     detail::get<std::vector<Int>>(s, "valuation")});
		if (run.confs.size() > 1) {
			const Json &l = detail::get<Json>(s, "label");
			run.labels.push_back({detail::get<int>(l, "rule"), detail::get<Int>(l, "delay")});
		}
	}
	return run;
}

inline ZeroOneRun zero_one_run_from_json(const Json &j, const ZeroOnePta &b) {
	detail::expect_kind(j, "zero-one-run");
	auto idx = ptapoca::detail::index_of(b.states, "state");
	ZeroOneRun run;
	for (const auto &s : detail::get<Json>(j, "run")) {
		run.confs.push_back({detail::lookup(idx, detail::get<std::string>(s, "state"), "state"),
		                     detail::get<std::vector<Int>>(s, "valuation")});
		if (run.confs.size() > 1) {
			const Json &l = detail::get<Json>(s, "label");
			run.labels.push_back({detail::get<int>(l, "time"), detail::get<int>(l, "rule")});
		}
	}
	return run;
}

inline PocaRun poca_run_from_json(const Json &j, const Poca &c) {
	const std::string kind = run_kind(j);
	if (kind != "poca-run" && kind != "semirun") throw MalformedError("expected a POCA run or semirun");
	auto idx = ptapoca::detail::index_of(c.states, "state");
	PocaRun run;
	for (const auto &s : detail::get<Json>(j, "run")) {
		run.confs.push_back(
		    {detail::lookup(idx, detail::get<std::string>(s, "state"), "state"), detail::get<Int>(s, "counter")});
		if (run.confs.size() > 1) run.rules.push_back(detail::get<int>(detail::get<Json>(s, "label"), "rule"));
	}
	return run;
}

// ---- other artifacts ----

inline Json to_json(const APSet &s) {
	Json j = Json::array();
	for (auto [a, b] : s.pairs()) j.push_back({a, b});
	return j;
}

inline APSet apset_from_json(const Json &j) {
	std::vector<APSet::Pair> pairs;
	for (const auto &p : j) {
		if (!p.is_array() || p.size() != 2) throw MalformedError("progression must be a pair [a, b]");
		pairs.push_back({p[0].get<Int>(), p[1].get<Int>()});
	}
	return APSet(pairs);
}

inline Json annotations_json(const BuiltPoca &b) {
	static const char *cls[] = {"D", "A", "B", "C"};
	Json states = Json::array();
	for (std::size_t i = 0; i < b.info.size(); ++i) {
		const auto &si = b.info[i];
		Json s{{"state", b.poca.states[i]}, {"role", si.role}};
		if (si.bstate >= 0) s["b_state"] = b.normalized.states.at(si.bstate);
		if (si.cls >= 0) {
			s["class"] = cls[si.cls];
			s["sigma"] = si.sigma;
		}
		if (si.phase >= 0) s["phase"] = si.phase;
		if (si.region >= 0) s["region"] = region_name(static_cast<Region>(si.region));
		if (si.small_n >= 0) s["explicit"] = {{"n", si.small_n}, {"x", si.vx}, {"y", si.vy}};
		if (si.gadget >= 0) s["gadget"] = si.gadget;
		if (si.copy >= 0) s["residue"] = si.copy;
		states.push_back(s);
	}
	Json gadgets = Json::array();
	for (const auto &g : b.gadgets)
		gadgets.push_back({{"name", g.name},
		                   {"case", g.case_label},
		                   {"entry", b.poca.states.at(g.entry)},
		                   {"exit", b.poca.states.at(g.exit)},
		                   {"a", g.a},
		                   {"b", g.b},
		                   {"envelope", {g.envelope.lo_n, g.envelope.lo_c, g.envelope.hi_n, g.envelope.hi_c}}});
	return {{"kind", "poca-annotations"},
	        {"small_threshold", b.small_threshold},
	        {"modulus", b.modulus},
	        {"states", states},
	        {"gadgets", gadgets}};
}

inline Json to_json(const DerivedConstants &d) {
	return {{"Z", d.Z.str()},
	        {"Gamma", d.Gamma.str()},
	        {"Upsilon", d.Upsilon.str()},
	        {"M", d.M.str()},
	        {"exact", d.exact}};
}

namespace detail {

inline BigInt big_field(const Json &j, const char *key) {
	const Json &v = j.at(key);
	if (v.is_number_integer()) return BigInt(v.get<Int>());
	if (v.is_string()) {
		std::string s = v.get<std::string>();
		if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
			throw MalformedError(std::string("field '") + key + "' is not a natural number");
		return BigInt(s);
	}
	throw MalformedError(std::string("field '") + key + "' is not a number");
}

} // namespace detail

// Explicit Z, Gamma, Upsilon (and optionally M), or {"K": k, "Z": z} for the
// test-scale formulas.
inline DerivedConstants constants_from_json(const Json &j) {
	if (j.contains("K") && !j.contains("Gamma")) return DerivedConstants::test_scale(detail::get<Int>(j, "K"), detail::get<Int>(j, "Z"));
	for (const char *k : {"Z", "Gamma", "Upsilon"})
		if (!j.contains(k)) throw MalformedError(std::string("missing field '") + k + "'");
	BigInt m = j.contains("M") ? detail::big_field(j, "M") : BigInt(1);
	return DerivedConstants::override_values(detail::big_field(j, "Z"), detail::big_field(j, "Gamma"),
	                                         detail::big_field(j, "Upsilon"), m);
}

} // namespace ptapoca::io
