#pragma once

#include <deque>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "core.hpp"

namespace ptapoca {

struct PtaConf {
	int state = 0;
	std::vector<Int> v;
	bool operator==(const PtaConf &) const = default;
};

struct PocaConf {
	int state = 0;
	Int z = 0;
	bool operator==(const PocaConf &) const = default;
};

enum class StepError { None, GuardViolation, Malformed };

template <class Conf> struct StepResult {
	std::optional<Conf> conf;
	StepError error = StepError::None;
	std::string reason;

	explicit operator bool() const { return conf.has_value(); }
	static StepResult ok(Conf c) { return {std::move(c), StepError::None, {}}; }
	static StepResult violated(std::string why) { return {std::nullopt, StepError::GuardViolation, std::move(why)}; }
	static StepResult malformed(std::string why) { return {std::nullopt, StepError::Malformed, std::move(why)}; }
};

struct PtaLabel {
	int rule = 0;
	Int delay = 0;
	bool operator==(const PtaLabel &) const = default;
};

struct ZeroOneLabel {
	int time = 0; // which rule set
	int rule = 0;
	bool operator==(const ZeroOneLabel &) const = default;
};

// confs.size() == labels.size() + 1 for every non-empty run.
struct PtaRun {
	std::vector<PtaConf> confs;
	std::vector<PtaLabel> labels;
	std::size_t length() const { return labels.size(); }
};

struct ZeroOneRun {
	std::vector<PtaConf> confs;
	std::vector<ZeroOneLabel> labels;
	std::size_t length() const { return labels.size(); }
};

struct PocaRun {
	std::vector<PocaConf> confs;
	std::vector<int> rules;

	std::size_t length() const { return rules.size(); }
	Int delta() const { return confs.back().z - confs.front().z; }
	Int min_value() const {
		Int m = confs.front().z;
		for (const auto &c : confs) m = std::min(m, c.z);
		return m;
	}
	Int max_value() const {
		Int m = confs.front().z;
		for (const auto &c : confs) m = std::max(m, c.z);
		return m;
	}
	std::set<Int> values() const {
		std::set<Int> s;
		for (const auto &c : confs) s.insert(c.z);
		return s;
	}
	// The subrun between configuration positions c and d (inclusive).
	PocaRun subrun(std::size_t c, std::size_t d) const {
		if (c > d || d >= confs.size()) throw MalformedError("subrun bounds out of range");
		PocaRun r;
		r.confs.assign(confs.begin() + (long)c, confs.begin() + (long)d + 1);
		r.rules.assign(rules.begin() + (long)c, rules.begin() + (long)d);
		return r;
	}
	PocaRun concat(const PocaRun &o) const {
		if (o.confs.empty() || confs.empty() || !(confs.back() == o.confs.front()))
			throw MalformedError("runs do not meet at a common configuration");
		PocaRun r = *this;
		r.confs.insert(r.confs.end(), o.confs.begin() + 1, o.confs.end());
		r.rules.insert(r.rules.end(), o.rules.begin(), o.rules.end());
		return r;
	}
};

// ---- single steps ----

inline StepResult<PtaConf> pta_step(const Pta &a, Int n, const PtaConf &conf, int rule, Int t) {
	using R = StepResult<PtaConf>;
	if (rule < 0 || rule >= (int)a.rules.size()) return R::malformed("rule index out of range");
	if (t < 0) return R::malformed("negative delay");
	if (conf.v.size() != a.clocks.size()) return R::malformed("valuation does not cover all clocks");
	const auto &r = a.rules[rule];
	if (r.from != conf.state) return R::malformed("rule does not start in the current state");
	PtaConf next{r.to, conf.v};
	for (auto &x : next.v) x += t;
	if (!r.guard.holds(next.v[r.guard.clock], n)) return R::violated("guard fails after the delay");
	for (int c : r.resets) next.v[c] = 0;
	return R::ok(std::move(next));
}

inline StepResult<PtaConf> zero_one_step(const ZeroOnePta &b, Int n, const PtaConf &conf, int time,
                                         int rule) {
	using R = StepResult<PtaConf>;
	if (time != 0 && time != 1) return R::malformed("time index must be 0 or 1");
	const auto &set = b.rules(time);
	if (rule < 0 || rule >= (int)set.size()) return R::malformed("rule index out of range");
	if (conf.v.size() != b.clocks.size()) return R::malformed("valuation does not cover all clocks");
	const auto &r = set[rule];
	if (r.from != conf.state) return R::malformed("rule does not start in the current state");
	PtaConf next{r.to, conf.v};
	for (auto &x : next.v) x += time;
	if (!r.guard.holds(next.v[r.guard.clock], n)) return R::violated("guard fails");
	for (int c : r.resets) next.v[c] = 0;
	return R::ok(std::move(next));
}

namespace detail {

inline StepResult<PocaConf> counter_step(const Poca &c, Int n, const PocaConf &conf, int rule,
                                         bool enforce_comparisons) {
	using R = StepResult<PocaConf>;
	if (rule < 0 || rule >= (int)c.rules.size()) return R::malformed("rule index out of range");
	const auto &r = c.rules[rule];
	if (r.from != conf.state) return R::malformed("rule does not start in the current state");
	PocaConf next{r.to, conf.z};
	switch (r.op.kind) {
	case CounterOp::Update: next.z += r.op.value; break;
	case CounterOp::AddParam: next.z += r.op.sign * n; break;
	case CounterOp::Mod:
		if (floor_mod(conf.z, r.op.value) != 0) return R::violated("modulo test fails");
		break;
	case CounterOp::CmpConst:
		if (enforce_comparisons && !cmp_holds(conf.z, r.op.cmp, r.op.value))
			return R::violated("comparison with constant fails");
		break;
	case CounterOp::CmpParam:
		if (enforce_comparisons && !cmp_holds(conf.z, r.op.cmp, n))
			return R::violated("comparison with parameter fails");
		break;
	}
	return R::ok(next);
}

} // namespace detail

inline StepResult<PocaConf> poca_step(const Poca &c, Int n, const PocaConf &conf, int rule) {
	return detail::counter_step(c, n, conf, rule, true);
}

// Comparison tests are not enforced; updates and modulo tests are.
inline StepResult<PocaConf> semitransition_step(const Poca &c, Int n, const PocaConf &conf, int rule) {
	return detail::counter_step(c, n, conf, rule, false);
}

// ---- replay and validation ----

struct Validation {
	bool ok = true;
	std::size_t index = 0; // first configuration that cannot be reproduced
	std::string reason;
	explicit operator bool() const { return ok; }
};

namespace detail {

inline Validation fail_at(std::size_t i, std::string why) { return {false, i, std::move(why)}; }

template <class Run, class StepFn> Validation replay(const Run &run, StepFn step) {
	if (run.confs.empty()) return fail_at(0, "empty run");
	if (run.confs.size() != run.length() + 1) return fail_at(0, "configuration/label count mismatch");
	for (std::size_t i = 0; i < run.length(); ++i) {
		auto res = step(run.confs[i], i);
		if (!res) return fail_at(i + 1, res.reason);
		if (!(*res.conf == run.confs[i + 1])) return fail_at(i + 1, "configuration differs from replay");
	}
	return {};
}

} // namespace detail

inline Validation validate_run(const PtaRun &run, const Pta &a, Int n) {
	if (!run.confs.empty() && run.confs[0].v.size() != a.clocks.size())
		return detail::fail_at(0, "valuation does not cover all clocks");
	return detail::replay(run, [&](const PtaConf &c, std::size_t i) {
		return pta_step(a, n, c, run.labels[i].rule, run.labels[i].delay);
	});
}

inline Validation validate_run(const ZeroOneRun &run, const ZeroOnePta &b, Int n) {
	if (!run.confs.empty() && run.confs[0].v.size() != b.clocks.size())
		return detail::fail_at(0, "valuation does not cover all clocks");
	return detail::replay(run, [&](const PtaConf &c, std::size_t i) {
		return zero_one_step(b, n, c, run.labels[i].time, run.labels[i].rule);
	});
}

inline Validation validate_run(const PocaRun &run, const Poca &c, Int n) {
	return detail::replay(run, [&](const PocaConf &conf, std::size_t i) {
		return poca_step(c, n, conf, run.rules[i]);
	});
}

inline Validation validate_semirun(const PocaRun &run, const Poca &c, Int n) {
	return detail::replay(run, [&](const PocaConf &conf, std::size_t i) {
		return semitransition_step(c, n, conf, run.rules[i]);
	});
}

// A run that starts in the initial configuration and ends in a final state.
inline bool is_accepting(const PtaRun &run, const Pta &a) {
	if (run.confs.empty() || run.confs.front().state != a.initial || !a.is_final(run.confs.back().state))
		return false;
	for (Int x : run.confs.front().v)
		if (x != 0) return false;
	return true;
}

inline bool is_accepting(const ZeroOneRun &run, const ZeroOnePta &b) {
	if (run.confs.empty() || run.confs.front().state != b.initial || !b.is_final(run.confs.back().state))
		return false;
	for (Int x : run.confs.front().v)
		if (x != 0) return false;
	return true;
}

inline bool is_accepting(const PocaRun &run, const Poca &c) {
	return !run.confs.empty() && run.confs.front().state == c.initial && run.confs.front().z == 0 &&
	       c.is_final(run.confs.back().state);
}

// ---- brute-force oracles ----

namespace detail {

struct VecHash {
	std::size_t operator()(const std::vector<Int> &v) const {
		std::size_t h = 1469598103934665603ull;
		for (Int x : v) h = (h ^ (std::size_t)x) * 1099511628211ull;
		return h;
	}
};

// BFS over (state, saturated valuation). succ(key, emit) enumerates successors.
template <class Label, class Succ>
std::optional<std::vector<Label>> saturated_bfs(std::vector<Int> start, Succ succ,
                                                const std::function<bool(const std::vector<Int> &)> &goal) {
	std::unordered_map<std::vector<Int>, std::pair<std::vector<Int>, Label>, VecHash> parent;
	std::deque<std::vector<Int>> queue{start};
	parent.emplace(start, std::make_pair(std::vector<Int>{}, Label{}));
	auto build = [&](std::vector<Int> k) {
		std::vector<Label> labels;
		while (!(k == start)) {
			const auto &p = parent.at(k);
			labels.push_back(p.second);
			k = p.first;
		}
		std::reverse(labels.begin(), labels.end());
		return labels;
	};
	if (goal(start)) return std::vector<Label>{};
	while (!queue.empty()) {
		auto cur = std::move(queue.front());
		queue.pop_front();
		std::optional<std::vector<Int>> hit;
		succ(cur, [&](std::vector<Int> next, Label l) {
			if (hit) return;
			if (parent.count(next)) return;
			parent.emplace(next, std::make_pair(cur, l));
			if (goal(next)) hit = next;
			else queue.push_back(std::move(next));
		});
		if (hit) return build(*hit);
	}
	return std::nullopt;
}

} // namespace detail

inline PtaRun replay_pta_labels(const Pta &a, Int n, const std::vector<PtaLabel> &labels) {
	PtaRun run;
	run.confs.push_back(PtaConf{a.initial, std::vector<Int>(a.clocks.size(), 0)});
	for (const auto &l : labels) {
		auto res = pta_step(a, n, run.confs.back(), l.rule, l.delay);
		if (!res) throw std::logic_error("witness replay failed: " + res.reason);
		run.confs.push_back(*res.conf);
		run.labels.push_back(l);
	}
	return run;
}

inline Int pta_min_cap(const Pta &a, Int n) {
	Int m = n;
	for (Int c : pta_consts(a)) m = std::max(m, c);
	return m + 1;
}

// Shortest accepting run (in steps). Clock values saturate at cap.
inline std::optional<PtaRun> pta_reach_bruteforce(const Pta &a, Int n, Int cap) {
	if (cap < pta_min_cap(a, n)) throw MalformedError("clock cap below max(N, max constant) + 1");
	std::vector<std::vector<int>> out(a.states.size());
	for (int i = 0; i < (int)a.rules.size(); ++i) out[a.rules[i].from].push_back(i);
	std::vector<Int> start(a.clocks.size() + 1, 0);
	start[0] = a.initial;
	auto goal = [&](const std::vector<Int> &k) { return a.is_final((int)k[0]); };
	auto succ = [&](const std::vector<Int> &k, auto emit) {
		for (int ri : out[k[0]]) {
			const auto &r = a.rules[ri];
			for (Int t = 0; t <= cap; ++t) {
				std::vector<Int> next = k;
				next[0] = r.to;
				for (std::size_t c = 1; c < next.size(); ++c) next[c] = std::min(cap, next[c] + t);
				if (!r.guard.holds(next[1 + r.guard.clock], n)) continue;
				for (int c : r.resets) next[1 + c] = 0;
				emit(std::move(next), PtaLabel{ri, t});
			}
		}
	};
	auto labels = detail::saturated_bfs<PtaLabel>(start, succ, goal);
	if (!labels) return std::nullopt;
	return replay_pta_labels(a, n, *labels);
}

inline std::optional<PtaRun> pta_reach_bruteforce(const Pta &a, Int n) {
	return pta_reach_bruteforce(a, n, pta_min_cap(a, n));
}

inline Int zero_one_min_cap(const ZeroOnePta &b, Int n) {
	Int m = n;
	for (Int c : zero_one_consts(b)) m = std::max(m, c);
	return m + 1;
}

// Search from an arbitrary configuration to any configuration accepted by goal.
inline std::optional<ZeroOneRun> zero_one_search(const ZeroOnePta &b, Int n, Int cap, const PtaConf &from,
                                                 const std::function<bool(const PtaConf &)> &goal_conf) {
	std::vector<std::vector<std::pair<int, int>>> out(b.states.size());
	for (int t = 0; t < 2; ++t)
		for (int i = 0; i < (int)b.rules(t).size(); ++i) out[b.rules(t)[i].from].push_back({t, i});
	std::vector<Int> start(b.clocks.size() + 1);
	start[0] = from.state;
	for (std::size_t c = 0; c < from.v.size(); ++c) start[c + 1] = std::min(cap, from.v[c]);
	auto as_conf = [](const std::vector<Int> &k) {
		return PtaConf{(int)k[0], std::vector<Int>(k.begin() + 1, k.end())};
	};
	auto goal = [&](const std::vector<Int> &k) { return goal_conf(as_conf(k)); };
	auto succ = [&](const std::vector<Int> &k, auto emit) {
		for (auto [t, ri] : out[k[0]]) {
			const auto &r = b.rules(t)[ri];
			std::vector<Int> next = k;
			next[0] = r.to;
			for (std::size_t c = 1; c < next.size(); ++c) next[c] = std::min(cap, next[c] + t);
			if (!r.guard.holds(next[1 + r.guard.clock], n)) continue;
			for (int c : r.resets) next[1 + c] = 0;
			emit(std::move(next), ZeroOneLabel{t, ri});
		}
	};
	auto labels = detail::saturated_bfs<ZeroOneLabel>(start, succ, goal);
	if (!labels) return std::nullopt;
	ZeroOneRun run;
	run.confs.push_back(from);
	for (const auto &l : *labels) {
		auto res = zero_one_step(b, n, run.confs.back(), l.time, l.rule);
		if (!res) throw std::logic_error("witness replay failed: " + res.reason);
		run.confs.push_back(*res.conf);
		run.labels.push_back(l);
	}
	return run;
}

inline std::optional<ZeroOneRun> zero_one_reach(const ZeroOnePta &b, Int n, Int cap) {
	if (cap < zero_one_min_cap(b, n)) throw MalformedError("clock cap below max(N, max constant) + 1");
	PtaConf init{b.initial, std::vector<Int>(b.clocks.size(), 0)};
	return zero_one_search(b, n, cap, init, [&](const PtaConf &c) { return b.is_final(c.state); });
}

inline std::optional<ZeroOneRun> zero_one_reach(const ZeroOnePta &b, Int n) {
	return zero_one_reach(b, n, zero_one_min_cap(b, n));
}

// Shortest run from q_init(0) to a final state with every value in [lo, hi].
inline std::optional<PocaRun> poca_reach_bounded(const Poca &c, Int n, Int lo, Int hi) {
	if (lo > 0 || hi < 0) throw MalformedError("window must contain 0");
	std::vector<std::vector<int>> out(c.states.size());
	for (int i = 0; i < (int)c.rules.size(); ++i) out[c.rules[i].from].push_back(i);
	auto key = [&](const PocaConf &k) { return ((std::uint64_t)k.state << 32) | (std::uint64_t)(k.z - lo); };
	std::unordered_map<std::uint64_t, std::pair<PocaConf, int>> parent;
	PocaConf start{c.initial, 0};
	auto build = [&](PocaConf k) {
		PocaRun run;
		while (!(k == start)) {
			const auto &p = parent.at(key(k));
			run.confs.push_back(k);
			run.rules.push_back(p.second);
			k = p.first;
		}
		run.confs.push_back(start);
		std::reverse(run.confs.begin(), run.confs.end());
		std::reverse(run.rules.begin(), run.rules.end());
		return run;
	};
	if (c.is_final(start.state)) return build(start);
	std::deque<PocaConf> queue{start};
	parent.emplace(key(start), std::make_pair(start, -1));
	while (!queue.empty()) {
		PocaConf cur = queue.front();
		queue.pop_front();
		for (int ri : out[cur.state]) {
			auto res = poca_step(c, n, cur, ri);
			if (!res) continue;
			const PocaConf &next = *res.conf;
			if (next.z < lo || next.z > hi) continue;
			if (!parent.emplace(key(next), std::make_pair(cur, ri)).second) continue;
			if (c.is_final(next.state)) return build(next);
			queue.push_back(next);
		}
	}
	return std::nullopt;
}

} // namespace ptapoca
