#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "core.hpp"

namespace ptapoca {

// The 16 classes of clock pairs (x,y) w.r.t. guards over constants {0, N}.
enum class Region : int {
	C00, C0N, CN0, CNN,    // corner points
	V0, V0Up, VN, VNUp,    // vertical segments x=0 / x=N
	H0, H0Right, HN, HNRight, // horizontal segments y=0 / y=N
	LowerLeft, UpperLeft, LowerRight, UpperRight
};

constexpr int kRegionCount = 16;

inline constexpr std::array<Region, 16> all_regions() {
	std::array<Region, 16> out{};
	for (int i = 0; i < 16; ++i) out[i] = static_cast<Region>(i);
	return out;
}

namespace detail {

// 0: value 0, 1: strictly between, 2: exactly N, 3: above N
inline int bucket(Int v, Int n) { return v == 0 ? 0 : v < n ? 1 : v == n ? 2 : 3; }

inline constexpr std::array<std::array<Region, 4>, 4> kRegionGrid = {{
    {Region::C00, Region::V0, Region::C0N, Region::V0Up},
    {Region::H0, Region::LowerLeft, Region::HN, Region::UpperLeft},
    {Region::CN0, Region::VN, Region::CNN, Region::VNUp},
    {Region::H0Right, Region::LowerRight, Region::HNRight, Region::UpperRight},
}};

inline std::pair<int, int> buckets_of(Region r) {
	for (int bx = 0; bx < 4; ++bx)
		for (int by = 0; by < 4; ++by)
			if (kRegionGrid[bx][by] == r) return {bx, by};
	return {0, 0};
}

} // namespace detail

inline Region region_of(Int x, Int y, Int n) {
	if (n < 1) throw MalformedError("regions are defined for N >= 1 only");
	if (x < 0 || y < 0) throw MalformedError("clock values must be non-negative");
	return detail::kRegionGrid[detail::bucket(x, n)][detail::bucket(y, n)];
}

inline Region transpose(Region r) {
	auto [bx, by] = detail::buckets_of(r);
	return detail::kRegionGrid[by][bx];
}

// Empty when N == 1 (nothing lies strictly between 0 and N).
inline bool region_empty_at(Region r, Int n) {
	auto [bx, by] = detail::buckets_of(r);
	return n == 1 && (bx == 1 || by == 1);
}

inline const char *region_name(Region r) {
	static const char *names[] = {"(0,0)",         "(0,N)",         "(N,0)",         "(N,N)",
	                              "(0,0)-(0,N)",   "(0,N)-(0,inf)", "(N,0)-(N,N)",   "(N,N)-(N,inf)",
	                              "(0,0)-(N,0)",   "(N,0)-(inf,0)", "(0,N)-(N,N)",   "(N,N)-(inf,N)",
	                              "LowerLeft",     "UpperLeft",     "LowerRight",    "UpperRight"};
	return names[static_cast<int>(r)];
}

inline Region parse_region(const std::string &s) {
	for (Region r : all_regions())
		if (s == region_name(r)) return r;
	static const std::pair<const char *, Region> aliases[] = {
	    {"LL", Region::LowerLeft}, {"UL", Region::UpperLeft}, {"LR", Region::LowerRight},
	    {"UR", Region::UpperRight}};
	for (auto [k, r] : aliases)
		if (s == k) return r;
	if (s.size() > 0 && std::all_of(s.begin(), s.end(), ::isdigit)) {
		int i = std::stoi(s);
		if (i >= 0 && i < 16) return static_cast<Region>(i);
	}
	throw MalformedError("unknown region '" + s + "'");
}

// A member of the region for parameter value 4, where no region is empty.
inline std::pair<Int, Int> region_representative(Region r) {
	static constexpr Int rep[4] = {0, 2, 4, 6};
	auto [bx, by] = detail::buckets_of(r);
	return {rep[bx], rep[by]};
}

// Guard index layout: clock (2) x comparison (5) x rhs in {0, p} (2).
inline int guard_index(const Guard &g) {
	if (g.clock < 0 || g.clock > 1) throw MalformedError("region guards range over two clocks");
	if (!g.parametric && g.constant != 0) throw MalformedError("region guards only support the constant 0");
	return (g.clock * 5 + static_cast<int>(g.cmp)) * 2 + (g.parametric ? 1 : 0);
}

// Bit i set iff the region satisfies guard number i.
inline std::uint32_t region_guard_mask(Region r) {
	static const auto table = [] {
		std::array<std::uint32_t, 16> t{};
		for (Region reg : all_regions()) {
			auto [x, y] = region_representative(reg);
			std::uint32_t m = 0;
			for (int clock = 0; clock < 2; ++clock)
				for (int c = 0; c < 5; ++c)
					for (int par = 0; par < 2; ++par) {
						Int v = clock == 0 ? x : y;
						if (cmp_holds(v, static_cast<Cmp>(c), par ? 4 : 0))
							m |= 1u << ((clock * 5 + c) * 2 + par);
					}
			t[static_cast<int>(reg)] = m;
		}
		return t;
	}();
	return table[static_cast<int>(r)];
}

inline bool region_satisfies(Region r, const Guard &g) { return (region_guard_mask(r) >> guard_index(g)) & 1u; }

namespace detail {

inline void require_region_input(const ZeroOnePta &b) {
	if (b.clocks.size() != 2) throw MalformedError("region construction needs exactly two clocks");
	for (Int c : zero_one_consts(b))
		if (c != 0) throw MalformedError("region construction needs Consts = {0}");
}

} // namespace detail

// Reset-free rules enabled throughout R, with their guards erased.
inline ZeroOnePta region_automaton(const ZeroOnePta &b, Region r) {
	detail::require_region_input(b);
	ZeroOnePta out = b;
	out.r0.clear();
	out.r1.clear();
	for (int t = 0; t < 2; ++t)
		for (const auto &rule : b.rules(t)) {
			if (!rule.resets.empty() || !region_satisfies(r, rule.guard)) continue;
			(t ? out.r1 : out.r0).push_back(TimedRule{rule.from, Guard::empty(0), {}, rule.to});
		}
	return out;
}

// +0 for untimed rules, +1 for timed ones.
inline Poca region_oca(const ZeroOnePta &br) {
	Poca c;
	c.states = br.states;
	c.initial = br.initial;
	c.finals = br.finals;
	for (int t = 0; t < 2; ++t)
		for (const auto &rule : br.rules(t)) {
			if (!rule.resets.empty() || !rule.guard.is_empty())
				throw MalformedError("region OCA input must be reset-free with empty guards");
			c.rules.push_back(PocaRule{rule.from, CounterOp::update(t), rule.to});
		}
	return c;
}

} // namespace ptapoca
