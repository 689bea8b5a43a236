#pragma once

#include <deque>
#include <map>
#include <string>
#include <vector>

#include "core.hpp"

namespace ptapoca {

struct NotTwoOneError : MalformedError {
	NotTwoOneError() : MalformedError("not a (2,1)-PTA") {}
};

inline Int max_constant(const Pta &a) {
	auto cs = pta_consts(a);
	return cs.empty() ? 0 : *cs.rbegin();
}

// Clocks kept by the reduction: the parametric ones, padded to two.
inline std::vector<int> kept_clocks(const Pta &a) {
	if (a.params.size() != 1) throw NotTwoOneError();
	std::vector<int> kept = parametric_clocks(a);
	if (kept.size() > 2) throw NotTwoOneError();
	for (int c = 0; c < (int)a.clocks.size() && kept.size() < 2; ++c)
		if (std::find(kept.begin(), kept.end(), c) == kept.end()) kept.push_back(c);
	std::sort(kept.begin(), kept.end());
	return kept;
}

// Upper bound on the number of states of to_zero_one_pta(a).
inline BigInt zero_one_state_bound(const Pta &a) {
	return BigInt(a.states.size()) * boost::multiprecision::pow(BigInt(max_constant(a) + 2), (unsigned)a.clocks.size());
}

// Stores every clock value up to c_max+1 in the control state. Only the
// parametric clocks survive as real clocks; all other guards are evaluated
// on the stored values. If origin is given, it receives the rule of a behind
// every untimed rule of the result.
inline ZeroOnePta to_zero_one_pta(const Pta &a, std::vector<int> *origin = nullptr) {
	std::vector<int> kept = kept_clocks(a);
	const Int top = max_constant(a) + 1;

	ZeroOnePta b;
	b.params = a.params;
	std::vector<int> to_b(a.clocks.size(), -1);
	for (int c : kept) {
		to_b[c] = (int)b.clocks.size();
		b.clocks.push_back(a.clocks[c]);
	}
	while (b.clocks.size() < 2) {
		std::string name = "_pad";
		while (std::find(a.clocks.begin(), a.clocks.end(), name) != a.clocks.end()) name += "_";
		b.clocks.push_back(name);
	}
	const Guard eps = Guard::empty(0);

	using Key = std::pair<int, std::vector<Int>>;
	std::map<Key, int> ids;
	std::deque<Key> work;
	auto id_of = [&](const Key &k) {
		auto [it, fresh] = ids.emplace(k, (int)b.states.size());
		if (fresh) {
			std::string name = a.states[k.first] + "[";
			for (std::size_t i = 0; i < k.second.size(); ++i)
				name += (i ? "," : "") + std::to_string(k.second[i]);
			b.states.push_back(name + "]");
			if (a.is_final(k.first)) b.finals.push_back(it->second);
			work.push_back(k);
		}
		return it->second;
	};

	std::vector<std::vector<int>> out(a.states.size());
	for (int i = 0; i < (int)a.rules.size(); ++i) out[a.rules[i].from].push_back(i);

	if (origin) origin->clear();
	b.initial = id_of({a.initial, std::vector<Int>(a.clocks.size(), 0)});
	while (!work.empty()) {
		Key k = work.front();
		work.pop_front();
		const int from = ids.at(k);

		Key tick = k;
		for (auto &v : tick.second) v = std::min(top, v + 1);
		const int tick_to = id_of(tick);
		b.r1.push_back(TimedRule{from, eps, {}, tick_to});

		for (int ri : out[k.first]) {
			const auto &r = a.rules[ri];
			Guard g = eps;
			if (r.guard.parametric) {
				g = r.guard;
				g.clock = to_b[r.guard.clock];
			} else if (!r.guard.holds(k.second[r.guard.clock], 0)) {
				continue;
			}
			Key next{r.to, k.second};
			std::vector<int> resets;
			for (int c : r.resets) {
				next.second[c] = 0;
				if (to_b[c] >= 0) resets.push_back(to_b[c]);
			}
			const int to = id_of(next);
			b.r0.push_back(TimedRule{from, g, resets, to});
			if (origin) origin->push_back(ri);
		}
	}
	b.validate();
	return b;
}

} // namespace ptapoca
