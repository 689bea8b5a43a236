#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "core.hpp"
#include "semantics.hpp"

namespace ptapoca {

// A semirun is a PocaRun replayed with semitransition_step.
using Semirun = PocaRun;

struct SemirunError : std::invalid_argument {
	using std::invalid_argument::invalid_argument;
};

// Thrown when depumping cannot find enough windows for the given constants.
struct DepumpShortfall : std::runtime_error {
	using std::runtime_error::runtime_error;
};

// ---- bracket projection ----

using BracketWord = std::string; // over '[' and ']'

// '[' for +p, ']' for -p, 0 otherwise.
inline char phi_at(const Poca &c, const Semirun &pi, std::size_t i) {
	const auto &op = c.rules.at(pi.rules.at(i)).op;
	if (op.kind != CounterOp::AddParam) return 0;
	return op.sign > 0 ? '[' : ']';
}

inline BracketWord phi(const Poca &c, const Semirun &pi) {
	BracketWord w;
	for (std::size_t i = 0; i < pi.length(); ++i)
		if (char b = phi_at(c, pi, i)) w.push_back(b);
	return w;
}

inline Int bracket_balance(const BracketWord &w) {
	Int b = 0;
	for (char ch : w) b += ch == '[' ? 1 : -1;
	return b;
}

inline bool in_psi(const BracketWord &w, Int k) {
	Int b = 0;
	for (char ch : w) {
		b += ch == '[' ? 1 : -1;
		if (b > k || b < -k) return false;
	}
	return true;
}

inline bool in_lambda(const BracketWord &w, Int k) { return in_psi(w, k) && bracket_balance(w) == 0; }

// lambda(i) for every configuration index i.
inline std::vector<Int> prefix_balance(const Poca &c, const Semirun &pi) {
	std::vector<Int> lam(pi.confs.size(), 0);
	for (std::size_t i = 0; i < pi.length(); ++i) {
		char b = phi_at(c, pi, i);
		lam[i + 1] = lam[i] + (b == '[' ? 1 : b == ']' ? -1 : 0);
	}
	return lam;
}

// ---- shifting and gluing ----

inline Semirun shift(const Semirun &pi, Int d, Int z) {
	if (z < 1) throw SemirunError("shift needs Z >= 1");
	if (d % z != 0) throw SemirunError("shift amount is not a multiple of Z");
	Semirun out = pi;
	for (auto &conf : out.confs) conf.z += d;
	return out;
}

// Removes the part between configurations i and j.
inline Semirun glue(const Semirun &pi, std::size_t i, std::size_t j, Int z) {
	if (z < 1) throw SemirunError("glue needs Z >= 1");
	if (i >= j) throw SemirunError("glue needs i < j");
	if (j >= pi.confs.size()) throw SemirunError("glue index out of range");
	if (pi.confs[i].state != pi.confs[j].state) throw SemirunError("glue endpoints have different states");
	const Int gap = pi.confs[j].z - pi.confs[i].z;
	if (gap % z != 0) throw SemirunError("glue value gap is not a multiple of Z");
	Semirun out;
	out.confs.assign(pi.confs.begin(), pi.confs.begin() + (long)i + 1);
	out.rules.assign(pi.rules.begin(), pi.rules.begin() + (long)i);
	for (std::size_t k = j + 1; k < pi.confs.size(); ++k) out.confs.push_back({pi.confs[k].state, pi.confs[k].z - gap});
	out.rules.insert(out.rules.end(), pi.rules.begin() + (long)j, pi.rules.end());
	return out;
}

using Interval = std::pair<std::size_t, std::size_t>;

// Glues the intervals left to right, re-indexing each after the previous cut.
inline Semirun multi_glue(const Semirun &pi, const std::vector<Interval> &intervals, Int z) {
	for (std::size_t k = 0; k + 1 < intervals.size(); ++k)
		if (intervals[k].second > intervals[k + 1].first)
			throw SemirunError("glue intervals overlap or are out of order");
	Semirun out = pi;
	std::size_t removed = 0;
	for (auto [i, j] : intervals) {
		if (i < removed) throw SemirunError("glue intervals overlap or are out of order");
		out = glue(out, i - removed, j - removed, z);
		removed += j - i;
	}
	return out;
}

// ---- depumping ----

struct DepumpResult {
	Semirun run;
	std::vector<Interval> intervals; // in the coordinates of the input
	Int d = 0;                       // every interval lowers |Delta| by d*Z
};

// Moves Delta towards zero by exactly Gamma = LCM(1..k) * Z.
inline DepumpResult depump(const Poca &c, const Semirun &pi, Int n, Int k, const DerivedConstants &consts) {
	if (k < 1) throw SemirunError("depump needs K >= 1");
	const Int z = to_int(consts.Z);
	const Int l = to_int(lcm_range(k));
	if (BigInt(l) * z != consts.Gamma) throw SemirunError("Gamma differs from LCM(K) * Z");
	for (const auto &r : c.rules)
		if (r.op.kind == CounterOp::Mod && z % r.op.value != 0)
			throw SemirunError("a modulus of the automaton does not divide Z");
	if (auto v = validate_semirun(pi, c, n); !v) throw SemirunError("input is not a semirun: " + v.reason);
	if (!in_lambda(phi(c, pi), 8)) throw SemirunError("bracket projection is not in Lambda_8");
	const Int delta = pi.delta();
	if (BigInt(delta < 0 ? -delta : delta) <= consts.Upsilon) throw SemirunError("|Delta| does not exceed Upsilon");

	const int sign = delta > 0 ? 1 : -1;
	const auto lam = prefix_balance(c, pi);
	const std::size_t len = pi.confs.size();
	std::vector<Int> pot(len);
	for (std::size_t i = 0; i < len; ++i) {
		pot[i] = sign * (pi.confs[i].z - pi.confs[0].z - lam[i] * n);
		if (i > 0 && std::abs(pot[i] - pot[i - 1]) > 1) throw std::logic_error("potential jumps by more than one");
	}
	if (pot.back() != sign * delta) throw std::logic_error("potential does not end at Delta");

	// disjoint windows in which the (signed) potential climbs by K*Z + 1
	std::vector<Interval> windows;
	std::size_t start = 0, low = 0;
	for (std::size_t i = 0; i < len; ++i) {
		if (i == start || pot[i] < pot[low]) low = i;
		if (pot[i] - pot[low] >= k * z + 1) {
			windows.push_back({low, i});
			start = low = i + 1;
		}
	}

	// inside each window: equal state and balance, value gap d*Z with d in [1, K]
	std::vector<std::vector<Interval>> by_d(k + 1);
	for (auto [lo, hi] : windows) {
		bool found = false;
		for (std::size_t t = lo + 1; t <= hi && !found; ++t)
			for (std::size_t s = t; s-- > lo;) {
				if (pi.confs[s].state != pi.confs[t].state || lam[s] != lam[t]) continue;
				Int gap = sign * (pi.confs[t].z - pi.confs[s].z);
				if (gap <= 0 || gap % z != 0 || gap / z > k) continue;
				by_d[gap / z].push_back({s, t});
				found = true;
				break;
			}
	}
	for (Int d = 1; d <= k; ++d) {
		const std::size_t need = (std::size_t)(l / d);
		if (by_d[d].size() < need) continue;
		DepumpResult res;
		res.d = d;
		res.intervals.assign(by_d[d].begin(), by_d[d].begin() + (long)need);
		res.run = multi_glue(pi, res.intervals, z);
		return res;
	}
	throw DepumpShortfall("not enough depumpable windows (found " + std::to_string(windows.size()) +
	                      " windows); constants and K are inconsistent with this semirun");
}

// ---- bracket subruns ----

enum class Direction { Negative, Positive };

// First (c, d) with phi(pi[c,d]) in Lambda_8 and Delta beyond -Upsilon (or +Upsilon).
inline std::optional<Interval> find_bracket_subrun(const Poca &c, const Semirun &pi, const BigInt &upsilon,
                                                   Direction dir) {
	const std::size_t len = pi.confs.size();
	std::vector<Int> step(pi.length());
	for (std::size_t i = 0; i < pi.length(); ++i) {
		char b = phi_at(c, pi, i);
		step[i] = b == '[' ? 1 : b == ']' ? -1 : 0;
	}
	for (std::size_t a = 0; a < len; ++a) {
		Int bal = 0;
		for (std::size_t b = a + 1; b < len; ++b) {
			bal += step[b - 1];
			if (bal > 8 || bal < -8) break;
			if (bal != 0) continue;
			BigInt delta = pi.confs[b].z - pi.confs[a].z;
			if (dir == Direction::Negative ? delta < -upsilon : delta > upsilon) return Interval{a, b};
		}
	}
	return std::nullopt;
}

// ---- hills and valleys ----

enum class Shape { Hill, Valley, Candidate, Neither };

inline const char *shape_name(Shape s) {
	switch (s) {
	case Shape::Hill: return "hill";
	case Shape::Valley: return "valley";
	case Shape::Candidate: return "candidate";
	default: return "neither";
	}
}

inline Shape classify_hill_valley(const Poca &c, const Semirun &pi, Int level, const BigInt &upsilon) {
	if (pi.length() < 1) throw SemirunError("classification needs a nonempty semirun");
	const auto &v = pi.confs;
	const std::size_t n = pi.length();
	auto shaped = [&](bool hill) {
		auto outer = [&](Int x) { return hill ? x < level : x > level; };
		auto inner = [&](Int x) { return hill ? x >= level : x <= level; };
		if (!outer(v[0].z) || !outer(v[n].z)) return false;
		for (std::size_t i = 1; i < n; ++i)
			if (!inner(v[i].z)) return false;
		return true;
	};
	auto margins = [&](bool hill) {
		const BigInt z0 = v[0].z, zn = v[n].z;
		for (std::size_t i = 0; i < n; ++i) {
			char b = phi_at(c, pi, i);
			if (!b) continue;
			BigInt from = v[i].z, to = v[i + 1].z;
			bool ok;
			if (hill) ok = b == ']' ? from > z0 + upsilon : to > zn + upsilon;
			else ok = b == ']' ? to < zn - upsilon : from < z0 - upsilon;
			if (!ok) return false;
		}
		return true;
	};
	for (bool hill : {true, false})
		if (shaped(hill)) return margins(hill) ? (hill ? Shape::Hill : Shape::Valley) : Shape::Candidate;
	return Shape::Neither;
}

// ---- embeddings ----

struct Embedding {
	std::vector<std::size_t> psi;
	bool max_falling = false;
	bool min_rising = false;
};

// Is sigma an l-embedding of pi? Both semiruns are over the same automaton.
inline std::optional<Embedding> is_embedding(const Semirun &sigma, const Semirun &pi, Int l) {
	if (sigma.confs.empty() || pi.confs.empty()) return std::nullopt;
	const std::size_t n = sigma.length(), m = pi.length();
	if (sigma.confs.front().state != pi.confs.front().state || sigma.confs.back().state != pi.confs.back().state)
		return std::nullopt;
	auto side = [l](Int x) { return x < l ? -1 : x > l ? 1 : 0; };
	auto match = [&](std::size_t i, std::size_t j) {
		if (side(sigma.confs[i].z) != side(pi.confs[j].z)) return false;
		if (i < n) return j < m && sigma.rules[i] == pi.rules[j];
		return true;
	};
	// ok[i][j]: positions i.. of sigma embed with psi(i) = j
	std::vector<std::vector<char>> ok(n + 1, std::vector<char>(m + 1, 0));
	for (std::size_t j = 0; j <= m; ++j) ok[n][j] = match(n, j);
	for (std::size_t i = n; i-- > 0;) {
		bool later = false; // some j' > j with ok[i+1][j']
		for (std::size_t j = m + 1; j-- > 0;) {
			ok[i][j] = later && match(i, j);
			later = later || ok[i + 1][j];
		}
	}
	Embedding e;
	std::size_t j = 0;
	for (std::size_t i = 0; i <= n; ++i) {
		while (j <= m && !ok[i][j]) ++j;
		if (j > m) return std::nullopt;
		e.psi.push_back(j++);
	}
	e.max_falling = sigma.max_value() <= pi.max_value();
	e.min_rising = sigma.min_value() >= pi.min_value();
	return e;
}

} // namespace ptapoca
