#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "builder.hpp"
#include "core.hpp"
#include "semantics.hpp"
#include "zero_one.hpp"

namespace ptapoca {

// All stages for one PTA.
struct Pipeline {
	Pta pta;
	ZeroOnePta zero_one;
	std::vector<int> origin; // PTA rule behind each untimed rule of zero_one
	BuiltPoca built;
};

inline Pipeline make_pipeline(const Pta &a, BuildOptions opt = {}) {
	Pipeline p;
	p.pta = a;
	p.zero_one = to_zero_one_pta(a, &p.origin);
	p.built = build_poca(p.zero_one, opt);
	return p;
}

struct DecodeError : std::runtime_error {
	using std::runtime_error::runtime_error;
};

// Turns an accepting N-run of the POCA back into an accepting N-run of the PTA.
inline PtaRun decode_witness(const Pipeline &p, const PocaRun &run, Int n) {
	const ZeroOnePta &b = p.zero_one;
	const auto &info = p.built.info;
	const Int cap = n + 1;

	// checkpoints: segment starts and explicitly simulated states
	std::vector<PtaConf> checkpoints;
	for (const auto &conf : run.confs) {
		const StateInfo &si = info.at(conf.state);
		if (si.role == "explicit") {
			checkpoints.push_back({si.bstate, {si.vx, si.vy}});
		} else if (si.role == "enter" && si.phase == 0) {
			Int w = std::min(cap, std::abs(conf.z - 2 * n));
			if (si.cls == detail::ClsD) w = 0;
			checkpoints.push_back({si.bstate, si.sigma > 0 ? std::vector<Int>{w, 0} : std::vector<Int>{0, w}});
		}
	}

	ZeroOneRun brun;
	brun.confs.push_back({b.initial, {0, 0}});
	auto extend = [&](const std::function<bool(const PtaConf &)> &goal) {
		auto leg = zero_one_search(b, n, cap, brun.confs.back(), goal);
		if (!leg) throw DecodeError("no 0/1 run between consecutive checkpoints");
		brun.confs.insert(brun.confs.end(), leg->confs.begin() + 1, leg->confs.end());
		brun.labels.insert(brun.labels.end(), leg->labels.begin(), leg->labels.end());
	};
	for (const auto &cp : checkpoints)
		extend([&](const PtaConf &c) {
			return c.state == cp.state && std::min(cap, c.v[0]) == std::min(cap, cp.v[0]) &&
			       std::min(cap, c.v[1]) == std::min(cap, cp.v[1]);
		});
	extend([&](const PtaConf &c) { return b.is_final(c.state); });

	// ticks accumulate into the delay of the next untimed rule
	std::vector<PtaLabel> labels;
	Int delay = 0;
	for (const auto &l : brun.labels) {
		if (l.time == 1) {
			++delay;
		} else {
			labels.push_back({p.origin.at(l.rule), delay});
			delay = 0;
		}
	}
	PtaRun out;
	try {
		out = replay_pta_labels(p.pta, n, labels);
	} catch (const std::logic_error &e) {
		throw DecodeError(std::string("decoded labels do not replay: ") + e.what());
	}
	if (!is_accepting(out, p.pta)) throw DecodeError("decoded run is not accepting");
	return out;
}

enum class Mode { Direct, ViaPoca };

struct NResult {
	Int n = 0;
	bool reachable = false;
	std::optional<PtaRun> witness;
	std::optional<PocaRun> poca_witness;
	std::string decode_error; // set when a POCA witness could not be decoded
};

struct Verdict {
	Mode mode = Mode::Direct;
	Int n_max = 0;
	std::optional<Int> first; // smallest N with an accepting run
	std::vector<NResult> per_n;
	BigInt threshold; // max{M_C, |C|}
	bool complete = false;
	const char *qualifier() const { return complete ? "COMPLETE" : "BOUNDED"; }
};

// Window [lo, hi] searched for accepting N-runs of c.
inline std::pair<Int, Int> search_window(const Poca &c, Int n) { return {0, value_bound(c, n)}; }

inline NResult solve_poca_at(const Poca &c, Int n) {
	auto [lo, hi] = search_window(c, n);
	NResult r;
	r.n = n;
	r.poca_witness = poca_reach_bounded(c, n, lo, hi);
	r.reachable = r.poca_witness.has_value();
	return r;
}

inline NResult solve_at(const Pipeline &p, Int n, Mode mode) {
	if (mode == Mode::Direct) {
		NResult r;
		r.n = n;
		r.witness = pta_reach_bruteforce(p.pta, n);
		r.reachable = r.witness.has_value();
		return r;
	}
	NResult r = solve_poca_at(p.built.poca, n);
	if (r.reachable) {
		try {
			r.witness = decode_witness(p, *r.poca_witness, n);
		} catch (const DecodeError &e) {
			r.decode_error = e.what();
		}
	}
	return r;
}

inline Verdict decide(const Pipeline &p, Int n_max, Mode mode) {
	if (n_max < 0) throw MalformedError("n_max must be non-negative");
	Verdict v;
	v.mode = mode;
	v.n_max = n_max;
	const Poca &c = p.built.poca;
	v.threshold = std::max(derive_constants(c).M, BigInt(poca_size(c)));
	v.complete = BigInt(n_max) >= v.threshold;
	for (Int n = 0; n <= n_max; ++n) {
		v.per_n.push_back(solve_at(p, n, mode));
		if (v.per_n.back().reachable && !v.first) v.first = n;
	}
	return v;
}

inline Verdict decide(const Pta &a, Int n_max, Mode mode, BuildOptions opt = {}) {
	return decide(make_pipeline(a, opt), n_max, mode);
}

struct CrossReport {
	Int n_max = 0;
	std::vector<Int> disagreements;
	std::optional<Int> smallest;
	Verdict direct, via_poca;
	bool agree() const { return disagreements.empty(); }
};

// Runs both modes and lists every N where they disagree.
inline CrossReport cross_check(const Pta &a, Int n_max, BuildOptions opt = {}) {
	Pipeline p = make_pipeline(a, opt);
	CrossReport r;
	r.n_max = n_max;
	r.direct = decide(p, n_max, Mode::Direct);
	r.via_poca = decide(p, n_max, Mode::ViaPoca);
	for (Int n = 0; n <= n_max; ++n)
		if (r.direct.per_n[n].reachable != r.via_poca.per_n[n].reachable) r.disagreements.push_back(n);
	if (!r.disagreements.empty()) r.smallest = r.disagreements.front();
	return r;
}

} // namespace ptapoca
