#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "core.hpp"

namespace ptapoca {

// Finite union of progressions a + bN. Period 0 encodes the singleton {a}.
class APSet {
public:
	using Pair = std::pair<Int, Int>;

	APSet() = default;
	explicit APSet(std::vector<Pair> pairs) : pairs_(std::move(pairs)) { normalize(); }

	const std::vector<Pair> &pairs() const { return pairs_; }
	bool empty() const { return pairs_.empty(); }
	std::size_t size() const { return pairs_.size(); }

	bool member(Int t) const {
		for (auto [a, b] : pairs_)
			if (t == a || (b > 0 && t > a && (t - a) % b == 0)) return true;
		return false;
	}
	bool contains_zero() const { return member(0); }
	Int min_element() const {
		Int m = std::numeric_limits<Int>::max();
		for (auto [a, b] : pairs_) m = std::min(m, a);
		return m;
	}
	Int max_offset() const {
		Int m = 0;
		for (auto [a, b] : pairs_) m = std::max(m, a);
		return m;
	}
	Int max_period() const {
		Int m = 0;
		for (auto [a, b] : pairs_) m = std::max(m, b);
		return m;
	}
	Int period_lcm() const {
		Int l = 1;
		for (auto [a, b] : pairs_)
			if (b > 0) l = std::lcm(l, b);
		return l;
	}

	bool operator==(const APSet &) const = default;

	std::string to_string() const {
		std::string s = "{";
		for (std::size_t i = 0; i < pairs_.size(); ++i) {
			if (i) s += ", ";
			s += std::to_string(pairs_[i].first);
			if (pairs_[i].second) s += "+" + std::to_string(pairs_[i].second) + "N";
		}
		return s + "}";
	}

	static bool subsumes(const Pair &outer, const Pair &inner) {
		auto [a2, b2] = outer;
		auto [a, b] = inner;
		if (b2 == 0) return a == a2 && b == 0;
		return (b == 0 || b % b2 == 0) && a >= a2 && (a - a2) % b2 == 0;
	}

private:
	void normalize() {
		for (auto [a, b] : pairs_)
			if (a < 0 || b < 0) throw MalformedError("progressions need a, b >= 0");
		std::sort(pairs_.begin(), pairs_.end());
		pairs_.erase(std::unique(pairs_.begin(), pairs_.end()), pairs_.end());
		std::vector<Pair> kept;
		for (std::size_t i = 0; i < pairs_.size(); ++i) {
			bool covered = false;
			for (std::size_t j = 0; j < pairs_.size() && !covered; ++j)
				covered = j != i && subsumes(pairs_[j], pairs_[i]) && !(subsumes(pairs_[i], pairs_[j]) && j > i);
			if (!covered) kept.push_back(pairs_[i]);
		}
		pairs_ = std::move(kept);
	}

	std::vector<Pair> pairs_;
};

inline bool apset_member(const APSet &s, Int t) { return s.member(t); }
inline bool apset_contains_zero(const APSet &s) { return s.contains_zero(); }

struct SemilinearCapError : std::runtime_error {
	using std::runtime_error::runtime_error;
};

namespace detail {

class Bits {
public:
	explicit Bits(std::size_t n = 0) : w_((n + 63) / 64, 0) {}
	void set(std::size_t i) { w_[i / 64] |= 1ull << (i % 64); }
	bool test(std::size_t i) const { return (w_[i / 64] >> (i % 64)) & 1ull; }
	Bits &operator|=(const Bits &o) {
		for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
		return *this;
	}
	template <class F> void for_each(F f) const {
		for (std::size_t i = 0; i < w_.size(); ++i) {
			std::uint64_t x = w_[i];
			while (x) {
				int b = __builtin_ctzll(x);
				f(i * 64 + b);
				x &= x - 1;
			}
		}
	}

private:
	std::vector<std::uint64_t> w_;
};

// Unary view of a +0/+1 automaton: epsilon-closed letter steps.
struct UnaryGraph {
	int n = 0;
	std::vector<Bits> closure;       // eps-closure, reflexive
	std::vector<Bits> step;          // one letter then eps-closure
	std::vector<std::vector<int>> succ;
	std::vector<int> scc;            // component id
	std::vector<Int> period;         // per component; 0 if it has no cycle
	int components = 0;

	explicit UnaryGraph(const Poca &o) : n((int)o.states.size()) {
		std::vector<std::vector<int>> eps(n), inc(n);
		for (const auto &r : o.rules) {
			if (r.op.kind != CounterOp::Update || r.op.value < 0 || r.op.value > 1)
				throw MalformedError("reach_lengths supports +0/+1 updates only");
			(r.op.value ? inc : eps)[r.from].push_back(r.to);
		}
		closure.assign(n, Bits(n));
		for (int s = 0; s < n; ++s) {
			std::vector<int> stack{s};
			closure[s].set(s);
			while (!stack.empty()) {
				int u = stack.back();
				stack.pop_back();
				for (int v : eps[u])
					if (!closure[s].test(v)) {
						closure[s].set(v);
						stack.push_back(v);
					}
			}
		}
		step.assign(n, Bits(n));
		succ.assign(n, {});
		for (int u = 0; u < n; ++u) {
			for (int v : inc[u]) step[u] |= closure[v];
			step[u].for_each([&](std::size_t v) { succ[u].push_back((int)v); });
		}
		tarjan();
		compute_periods();
	}

	void tarjan() {
		scc.assign(n, -1);
		std::vector<int> index(n, -1), low(n, 0), stack;
		std::vector<char> on(n, 0);
		int counter = 0;
		std::function<void(int)> visit = [&](int u) {
			index[u] = low[u] = counter++;
			stack.push_back(u);
			on[u] = 1;
			for (int v : succ[u]) {
				if (index[v] < 0) {
					visit(v);
					low[u] = std::min(low[u], low[v]);
				} else if (on[v]) {
					low[u] = std::min(low[u], index[v]);
				}
			}
			if (low[u] == index[u]) {
				int v;
				do {
					v = stack.back();
					stack.pop_back();
					on[v] = 0;
					scc[v] = components;
				} while (v != u);
				++components;
			}
		};
		for (int u = 0; u < n; ++u)
			if (index[u] < 0) visit(u);
	}

	void compute_periods() {
		period.assign(components, 0);
		std::vector<Int> level(n, -1);
		for (int root = 0; root < n; ++root) {
			int c = scc[root];
			if (level[root] >= 0) continue;
			std::vector<int> queue{root};
			level[root] = 0;
			for (std::size_t i = 0; i < queue.size(); ++i) {
				int u = queue[i];
				for (int v : succ[u]) {
					if (scc[v] != c) continue;
					if (level[v] < 0) {
						level[v] = level[u] + 1;
						queue.push_back(v);
					}
					period[c] = std::gcd(period[c], std::abs(level[u] + 1 - level[v]));
				}
			}
			// components without an inner edge keep period 0
		}
	}
};

} // namespace detail

struct SemilinearLimits {
	Int max_offset, max_period, max_pairs;
	static SemilinearLimits for_states(Int n) { return {2 * n * n, n, 4 * n * n}; }
};

// Pi(O, s, q) for every target q.
inline std::vector<APSet> reach_lengths_from(const Poca &oca, int s) {
	detail::UnaryGraph g(oca);
	const int n = g.n;
	detail::check_range(s, (std::size_t)n, "state");
	const Int horizon = 3 * (Int)n * n + 2 * n + 8;

	// exact membership bits per time step
	std::vector<detail::Bits> cur;
	cur.reserve(horizon + 1);
	cur.push_back(g.closure[s]);
	for (Int t = 0; t < horizon; ++t) {
		detail::Bits next(n);
		cur.back().for_each([&](std::size_t u) { next |= g.step[u]; });
		cur.push_back(std::move(next));
	}

	// residues of s->q path lengths through each cyclic component
	struct Wheel {
		Int period;
		std::vector<std::vector<char>> residues; // [q][r]
	};
	std::vector<Wheel> wheels;
	for (int c = 0; c < g.components; ++c) {
		Int p = g.period[c];
		if (p == 0) continue;
		std::vector<char> seen((std::size_t)n * p * 2, 0);
		auto id = [&](int v, Int r, int f) { return ((std::size_t)v * p + r) * 2 + f; };
		std::vector<std::tuple<int, Int, int>> queue;
		g.closure[s].for_each([&](std::size_t u) {
			int f = g.scc[u] == c;
			if (!seen[id((int)u, 0, f)]) {
				seen[id((int)u, 0, f)] = 1;
				queue.emplace_back((int)u, 0, f);
			}
		});
		for (std::size_t i = 0; i < queue.size(); ++i) {
			auto [u, r, f] = queue[i];
			for (int v : g.succ[u]) {
				Int r2 = (r + 1) % p;
				int f2 = f | (g.scc[v] == c);
				if (!seen[id(v, r2, f2)]) {
					seen[id(v, r2, f2)] = 1;
					queue.emplace_back(v, r2, f2);
				}
			}
		}
		Wheel w{p, std::vector<std::vector<char>>(n, std::vector<char>(p, 0))};
		bool any = false;
		for (int q = 0; q < n; ++q)
			for (Int r = 0; r < p; ++r)
				if (seen[id(q, r, 1)]) w.residues[q][r] = any = 1;
		if (any) wheels.push_back(std::move(w));
	}

	const auto limits = SemilinearLimits::for_states(n);
	std::vector<APSet> result(n);
	for (int q = 0; q < n; ++q) {
		auto tail = [&](Int t) {
			for (const auto &w : wheels)
				if (w.residues[q][t % w.period]) return true;
			return false;
		};
		Int threshold = 0;
		for (Int t = horizon; t >= 0; --t)
			if (cur[t].test(q) != tail(t)) {
				threshold = t + 1;
				break;
			}
		if (threshold > horizon - n - 4)
			throw SemilinearCapError("ultimately periodic tail not reached within the horizon");
		std::vector<APSet::Pair> pairs;
		for (Int t = 0; t < threshold; ++t)
			if (cur[t].test(q)) pairs.push_back({t, 0});
		for (const auto &w : wheels)
			for (Int r = 0; r < w.period; ++r) {
				if (!w.residues[q][r]) continue;
				Int a = threshold + floor_mod(r - threshold, w.period);
				while (a - w.period >= 0 && cur[a - w.period].test(q)) a -= w.period;
				pairs.push_back({a, w.period});
			}
		APSet set(std::move(pairs));
		if ((Int)set.size() > limits.max_pairs || set.max_offset() > limits.max_offset ||
		    set.max_period() > limits.max_period)
			throw SemilinearCapError("progression bounds exceeded: " + set.to_string());
		result[q] = std::move(set);
	}
	return result;
}

inline APSet reach_lengths(const Poca &oca, int from, int to) {
	detail::check_range(to, oca.states.size(), "state");
	return reach_lengths_from(oca, from)[to];
}

} // namespace ptapoca
