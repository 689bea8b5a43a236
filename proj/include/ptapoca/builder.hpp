#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "core.hpp"
#include "region.hpp"
#include "semantics.hpp"
#include "semilinear.hpp"

namespace ptapoca {

struct BudgetExceeded : std::runtime_error {
	using std::runtime_error::runtime_error;
};

struct BuildOptions {
	std::size_t max_states = 3'000'000;
	// Parameter values up to this bound are simulated explicitly (>= 1).
	Int small_threshold = 1;
	// Test hook: breaks the duration test of open phases by one unit.
	bool corrupt_for_testing = false;
};

// Linear envelope lo_n*N + lo_c <= value <= hi_n*N + hi_c.
struct Envelope {
	Int lo_n = 0, lo_c = 0, hi_n = 0, hi_c = 0;
	bool contains(Int v, Int n) const { return v >= lo_n * n + lo_c && v <= hi_n * n + hi_c; }
};

struct GadgetSpec {
	std::string name;
	std::string case_label; // e.g. "LL/trail", "zero", "offset"
	int entry = -1, exit = -1;
	Int a = -1, b = -1; // progression hard-coded by the gadget, -1 when unused
	Envelope envelope;
};

// Per-state annotation used for witness decoding.
struct StateInfo {
	std::string role; // init, branch, explicit, enter, tick, hub, gadget, accept
	int bstate = -1;
	int cls = -1;  // 0=D 1=A 2=B 3=C
	int sigma = 0; // +1: x leads, -1: y leads
	int phase = -1;
	int region = -1;
	int gadget = -1;
	Int small_n = -1, vx = -1, vy = -1;
	Int copy = -1; // residue of N handled by this copy of the large branch
};

struct BuiltPoca {
	Poca poca;
	std::vector<StateInfo> info;
	std::vector<GadgetSpec> gadgets;
	ZeroOnePta normalized; // guards and resets only on untimed rules
	Int small_threshold = 1;
	Int modulus = 1; // N is split into residues modulo this value
};

// Moves guards and resets of timed rules onto a fresh untimed rule so that
// every timed rule is a plain tick. States of b keep their ids.
inline ZeroOnePta normalize_ticks(const ZeroOnePta &b) {
	ZeroOnePta out = b;
	out.r1.clear();
	for (const auto &r : b.r1) {
		if (r.guard.is_empty() && r.resets.empty()) {
			out.r1.push_back(r);
			continue;
		}
		int mid = (int)out.states.size();
		out.states.push_back(b.states[r.from] + "~" + std::to_string(out.r1.size()));
		out.r1.push_back(TimedRule{r.from, Guard::empty(0), {}, mid});
		out.r0.push_back(TimedRule{mid, r.guard, r.resets, r.to});
	}
	return out;
}

inline Poca normalize_accepting_zero(const Poca &c) {
	Poca out = c;
	int drain = out.add_state("r_minus");
	int fin = out.add_state("r_f");
	for (int f : c.finals) out.add_rule(f, CounterOp::cmp_const(Cmp::Ge, 0), drain);
	out.add_rule(drain, CounterOp::update(-1), drain);
	out.add_rule(drain, CounterOp::cmp_const(Cmp::Eq, 0), fin);
	out.finals = {fin};
	return out;
}

namespace detail {

enum Cls { ClsD = 0, ClsA = 1, ClsB = 2, ClsC = 3 };
enum EventKind { EvTrail = 0, EvLead = 1, EvBoth = 2, EvAccept = 3, EvExit = 4 };

// s*c + alpha*N + beta, c being the signed lead
struct Lin {
	int s;
	int alpha;
	Int beta;
	Lin minus(Int k) const { return {s, alpha, beta - k}; }
};

struct PhaseDef {
	bool open;
	Region canon; // in (lead, trail) orientation
	bool bounded; // open phase with a finite duration
};

inline const std::vector<PhaseDef> &phases_of(int cls) {
	static const std::vector<PhaseDef> d = {{false, Region::C00, false},
	                                        {true, Region::LowerLeft, true},
	                                        {false, Region::CNN, false},
	                                        {true, Region::UpperRight, false}};
	static const std::vector<PhaseDef> a = {{false, Region::H0, false},
	                                        {true, Region::LowerLeft, true},
	                                        {false, Region::VN, false},
	                                        {true, Region::LowerRight, true},
	                                        {false, Region::HNRight, false},
	                                        {true, Region::UpperRight, false}};
	static const std::vector<PhaseDef> b = {{false, Region::CN0, false},
	                                        {true, Region::LowerRight, true},
	                                        {false, Region::HNRight, false},
	                                        {true, Region::UpperRight, false}};
	static const std::vector<PhaseDef> c = {{false, Region::H0Right, false},
	                                        {true, Region::LowerRight, true},
	                                        {false, Region::HNRight, false},
	                                        {true, Region::UpperRight, false}};
	switch (cls) {
	case ClsD: return d;
	case ClsA: return a;
	case ClsB: return b;
	default: return c;
	}
}

inline const char *cls_name(int cls) {
	static const char *n[] = {"D", "A", "B", "C"};
	return n[cls];
}

class PocaBuilder {
public:
	PocaBuilder(const ZeroOnePta &b, BuildOptions opt) : opt_(opt) {
		if (b.clocks.size() != 2) throw MalformedError("builder input needs exactly two clocks");
		for (Int k : zero_one_consts(b))
			if (k != 0) throw MalformedError("builder input needs Consts = {0}");
		if (b.params.size() != 1) throw MalformedError("builder input needs exactly one parameter");
		if (opt_.small_threshold < 1) throw MalformedError("small threshold must be at least 1");
		out_.normalized = normalize_ticks(b);
		out_.small_threshold = opt_.small_threshold;
		bn_ = &out_.normalized;
		for (int t = 0; t < 2; ++t) {
			out_rules_[t].assign(bn_->states.size(), {});
			for (int i = 0; i < (int)bn_->rules(t).size(); ++i)
				out_rules_[t][bn_->rules(t)[i].from].push_back(i);
		}
		original_ = b;
	}

	BuiltPoca build() {
		C().params = bn_->params;
		init_ = fresh("init", {"init"});
		C().initial = init_;
		acc_ = fresh("acc", {"accept"});
		C().finals = {acc_};

		build_small_branches();

		// copy for residue 0 discovers the periods in use
		copy_ = 0;
		modulus_ = 0;
		int start0 = build_large_copy();
		Int l = 1;
		for (Int b : periods_) l = std::lcm(l, b);
		out_.modulus = l;
		std::vector<int> starts{start0};
		for (copy_ = 1; copy_ < l; ++copy_) starts.push_back(build_large_copy());

		// entry: +p, check N above the small threshold, pick the residue, +p
		int s = chain(init_, CounterOp::add_param(+1), {"branch"});
		s = chain(s, CounterOp::cmp_const(Cmp::Gt, opt_.small_threshold), {"branch"});
		for (Int r = 0; r < l; ++r) {
			int t = s;
			if (l > 1) {
				Int k = floor_mod(l - r, l);
				t = add(t, k, {"branch"});
				t = chain(t, CounterOp::mod(l), {"branch"});
				t = add(t, -k, {"branch"});
			}
			rule(t, CounterOp::add_param(+1), starts[r]);
		}
		trim();
		C().validate();
		return std::move(out_);
	}

private:
	Poca &C() { return out_.poca; }

	int fresh(const std::string &name, StateInfo info) {
		if (C().states.size() >= opt_.max_states) throw BudgetExceeded("POCA state budget exceeded");
		if (info.gadget < 0) info.gadget = cur_gadget_;
		if (info.copy < 0 && copy_ >= 0) info.copy = copy_;
		int id = C().add_state(name.empty() ? "s" + std::to_string(C().states.size()) : name);
		out_.info.push_back(info);
		return id;
	}
	int fresh() { return fresh("", {"gadget"}); }
	void rule(int from, CounterOp op, int to) { C().add_rule(from, op, to); }
	int chain(int from, CounterOp op, StateInfo info = {"gadget"}) {
		int to = fresh("", info);
		rule(from, op, to);
		return to;
	}
	static CounterOp nop() { return CounterOp::update(0); }

	int add(int from, Int k, StateInfo info = {"gadget"}) {
		for (Int i = 0; i < std::abs(k); ++i) from = chain(from, CounterOp::update(k > 0 ? 1 : -1), info);
		return from;
	}
	void add_into(int from, Int k, int to) {
		if (k == 0) return rule(from, nop(), to);
		for (Int i = 0; i + 1 < std::abs(k); ++i) from = chain(from, CounterOp::update(k > 0 ? 1 : -1));
		rule(from, CounterOp::update(k > 0 ? 1 : -1), to);
	}

	// ---- explicit simulation for small parameter values ----

	void build_small_branches() {
		const ZeroOnePta &b = original_;
		for (Int n = 0; n <= opt_.small_threshold; ++n) {
			int s = add(init_, n, {"branch"});
			s = chain(s, CounterOp::cmp_param(Cmp::Eq), {"branch"});
			s = add(s, -n, {"branch"});
			const Int cap = n + 1;
			std::map<std::tuple<int, Int, Int>, int> ids;
			std::vector<std::tuple<int, Int, Int>> work;
			auto id_of = [&](int q, Int x, Int y) {
				auto key = std::make_tuple(q, x, y);
				auto it = ids.find(key);
				if (it != ids.end()) return it->second;
				StateInfo info{"explicit"};
				info.bstate = q;
				info.small_n = n;
				info.vx = x;
				info.vy = y;
				int id = fresh("n" + std::to_string(n) + ":" + b.states[q] + "(" + std::to_string(x) + "," +
				                   std::to_string(y) + ")",
				               info);
				ids.emplace(key, id);
				work.push_back(key);
				if (b.is_final(q)) rule(id, nop(), acc_);
				return id;
			};
			rule(s, nop(), id_of(b.initial, 0, 0));
			while (!work.empty()) {
				auto [q, x, y] = work.back();
				work.pop_back();
				int from = ids.at({q, x, y});
				for (int t = 0; t < 2; ++t)
					for (const auto &r : b.rules(t)) {
						if (r.from != q) continue;
						Int v[2] = {std::min(cap, x + t), std::min(cap, y + t)};
						if (!r.guard.holds(v[r.guard.clock], n)) continue;
						for (int c : r.resets) v[c] = 0;
						rule(from, nop(), id_of(r.to, v[0], v[1]));
					}
			}
		}
	}

	// ---- large branch: physical counter X = c + 2N, N > small threshold ----

	// X cmp k*N + m for X >= 0, leaving the counter unchanged.
	void emit_cmp0(int from, int to, int k, Cmp op) {
		bool below_ok = op == Cmp::Lt || op == Cmp::Le;
		if (k == 0) return rule(from, CounterOp::cmp_const(op, 0), to);
		if (k == 1) return rule(from, CounterOp::cmp_param(op), to);
		if (below_ok) rule(from, CounterOp::cmp_param(Cmp::Lt), to);
		int s1 = chain(from, CounterOp::cmp_param(Cmp::Ge));
		int s2 = chain(s1, CounterOp::add_param(-1));
		int s3 = fresh();
		emit_cmp0(s2, s3, k - 1, op);
		rule(s3, CounterOp::add_param(+1), to);
	}

	void emit_cmp(int from, int to, int k, Int m, Cmp op) {
		note_excursion(std::abs(m));
		if (m < 0) {
			int s1 = add(from, -m);
			int s2 = fresh();
			emit_cmp0(s1, s2, k, op);
			add_into(s2, m, to);
		} else if (m > 0) {
			if (op == Cmp::Lt || op == Cmp::Le) rule(from, CounterOp::cmp_const(Cmp::Lt, m), to);
			int s1 = chain(from, CounterOp::cmp_const(Cmp::Ge, m));
			int s2 = add(s1, -m);
			int s3 = fresh();
			emit_cmp0(s2, s3, k, op);
			add_into(s3, m, to);
		} else {
			emit_cmp0(from, to, k, op);
		}
	}

	// lin cmp 0
	int test(int from, Lin l, Cmp op) {
		int to = fresh();
		if (l.s == 1) emit_cmp(from, to, 2 - l.alpha, -l.beta, op);
		else emit_cmp(from, to, 2 + l.alpha, l.beta, mirror(op));
		return to;
	}

	// lin == 0 mod b
	int mod_test(int from, Lin l, Int b) {
		if (b <= 1) return from;
		periods_.insert(b);
		Int r = floor_mod(copy_, b);
		Int rho = floor_mod(-l.s * ((l.alpha - 2 * l.s) * r + l.beta), b);
		Int k = floor_mod(b - rho, b);
		note_excursion(k);
		int s = add(from, k);
		s = chain(s, CounterOp::mod(b));
		return add(s, -k);
	}

	// lin in a + bN
	int ap_member(int from, Lin l, Int a, Int b) {
		Lin shifted = l.minus(a);
		if (b == 0) return test(from, shifted, Cmp::Eq);
		int s = test(from, shifted, Cmp::Ge);
		return mod_test(s, shifted, b);
	}

	// Walks the counter back to c = 0 from sign sigma.
	int zero(int from, int sigma) {
		int head = chain(from, nop());
		int g = test(head, Lin{sigma, 0, -1}, Cmp::Ge);
		add_into(g, -sigma, head);
		return test(head, Lin{1, 0, 0}, Cmp::Eq);
	}

	// Repeats "guard >= 0, add step" any number of times.
	int loop(int from, Lin guard, Int step) {
		if (step == 0) return from;
		int head = chain(from, nop());
		int g = test(head, guard, Cmp::Ge);
		add_into(g, step, head);
		return head;
	}

	int addp(int from, int sign) { return chain(from, CounterOp::add_param(sign)); }

	void note_excursion(Int k) { excursion_ = std::max(excursion_, k); }

	// ---- structure of the large branch ----

	using EnterKey = std::tuple<int, int, int, int>; // cls, sigma, phase, bstate
	using HubKey = std::tuple<int, int, int, int, Int, Int, int>; // cls, sigma, phase, kind, a, b, target

	Region actual_region(int cls, int sigma, int phase) const {
		Region r = phases_of(cls)[phase].canon;
		return sigma > 0 ? r : transpose(r);
	}

	int enter(int cls, int sigma, int phase, int q) {
		EnterKey key{cls, sigma, phase, q};
		auto it = enter_.find(key);
		if (it != enter_.end()) return it->second;
		StateInfo info{"enter"};
		info.cls = cls;
		info.sigma = sigma;
		info.phase = phase;
		info.bstate = q;
		info.region = static_cast<int>(actual_region(cls, sigma, phase));
		int id = fresh("c" + std::to_string(copy_) + ":" + cls_name(cls) + (sigma > 0 ? "+" : "-") + ":" +
		                   std::to_string(phase) + ":" + bn_->states[q],
		               info);
		enter_.emplace(key, id);
		pending_.push_back(key);
		return id;
	}

	// Exit form: duration of an open phase minus one, as a linear form.
	static Lin exit_form(int cls, int sigma, int phase) {
		switch (cls) {
		case ClsD: return {1, 1, -2};
		case ClsA: return phase == 1 ? Lin{-sigma, 1, -2} : Lin{sigma, 0, -2};
		case ClsB: return {sigma, 0, -2};
		default: return {sigma, 0, -3};
		}
	}

	int tick_hub(int cls, int sigma, int phase, int q) {
		auto key = std::make_tuple(cls, sigma, phase, q);
		auto it = ticks_.find(key);
		if (it != ticks_.end()) return it->second;
		StateInfo info{"tick"};
		info.cls = cls;
		info.sigma = sigma;
		info.phase = phase;
		info.bstate = q;
		int id = fresh("", info);
		ticks_.emplace(key, id);
		if (cls == ClsA && (phase == 0 || phase == 2)) {
			// the following open phase may be empty
			Lin room = phase == 0 ? Lin{-sigma, 1, -2} : Lin{sigma, 0, -2};
			rule(test(id, room, Cmp::Ge), nop(), enter(cls, sigma, phase + 1, q));
			rule(test(id, room.minus(-1), Cmp::Eq), nop(), enter(cls, sigma, phase + 2, q));
		} else {
			rule(id, nop(), enter(cls, sigma, phase + 1, q));
		}
		return id;
	}

	static EventKind event_of(const std::vector<int> &resets, int sigma) {
		if (resets.size() == 2) return EvBoth;
		int lead_clock = sigma > 0 ? 0 : 1;
		return resets[0] == lead_clock ? EvLead : EvTrail;
	}

	// Hub for one event; the counter program runs from the hub to the target.
	int hub(int cls, int sigma, int phase, EventKind kind, Int a, Int b, int target) {
		HubKey key{cls, sigma, phase, kind, a, b, target};
		auto it = hubs_.find(key);
		if (it != hubs_.end()) return it->second;
		StateInfo info{"hub"};
		info.cls = cls;
		info.sigma = sigma;
		info.phase = phase;
		int id = fresh("", info);
		hubs_.emplace(key, id);

		GadgetSpec spec;
		static const char *kinds[] = {"trail", "lead", "both", "accept", "exit"};
		spec.case_label = std::string(region_name(phases_of(cls)[phase].canon)) + "/" + kinds[kind];
		spec.name = std::string(cls_name(cls)) + (sigma > 0 ? "+" : "-") + ":" + spec.case_label;
		spec.entry = id;
		spec.a = a;
		spec.b = b;
		cur_gadget_ = (int)out_.gadgets.size();
		out_.gadgets.push_back(spec);
		excursion_ = 0;
		int end;
		int next_cls = -1, next_sigma = 1;
		end = program(id, cls, sigma, phase, kind, a, b, next_cls, next_sigma);
		int exit_state;
		if (kind == EvAccept) exit_state = acc_;
		else if (kind == EvExit) exit_state = tick_hub(cls, sigma, phase, target);
		else exit_state = enter(next_cls, next_sigma, 0, target);
		rule(end, nop(), exit_state);
		auto &g = out_.gadgets[cur_gadget_];
		g.exit = exit_state;
		g.envelope = Envelope{1, -1, 3, 1 + excursion_};
		cur_gadget_ = -1;
		return id;
	}

	// Emits the counter program of one event and names the next class.
	int program(int s, int cls, int sg, int phase, EventKind kind, Int a, Int b, int &ncls, int &nsg) {
		const bool open = phases_of(cls)[phase].open;
		const bool bounded = phases_of(cls)[phase].bounded;
		Lin e = exit_form(cls, sg, phase);
		if (opt_.corrupt_for_testing) e = e.minus(-1);
		if (kind == EvAccept) {
			if (bounded) s = test(s, e.minus(a), Cmp::Ge);
			return s;
		}
		if (kind == EvExit) return ap_member(s, e, a, b);
		if (kind == EvBoth) {
			if (bounded) s = test(s, e.minus(a), Cmp::Ge);
			ncls = ClsD;
			nsg = 1;
			switch (cls) {
			case ClsD: return s;
			case ClsA: return zero(s, sg);
			case ClsB: return addp(s, -sg);
			default: return add(addp(s, -sg), -sg);
			}
		}
		const bool trail = kind == EvTrail;
		const Region canon = phases_of(cls)[phase].canon;
		// adds sigma' * (1 + delta) with the bound "room - delta >= 0" kept in the loop
		auto add_delta = [&](int st, int dir, Lin bound_after) {
			st = add(st, dir * (1 + a));
			if (b > 0) st = loop(st, bound_after.minus(b), dir * b);
			return test(st, bound_after, Cmp::Ge);
		};
		if (cls == ClsD) {
			if (!open) {
				ncls = canon == Region::C00 ? ClsD : ClsB;
				if (canon == Region::C00) return s;
				nsg = trail ? 1 : -1;
				return addp(s, nsg);
			}
			if (canon == Region::UpperRight) {
				ncls = ClsC;
				nsg = trail ? 1 : -1;
				return add(addp(s, nsg), nsg);
			}
			ncls = ClsA;
			nsg = trail ? 1 : -1;
			return add_delta(s, nsg, Lin{-nsg, 1, -1});
		}
		if (cls == ClsA) {
			switch (phase) {
			case 0:
				if (trail) {
					ncls = ClsA;
					nsg = sg;
					return s;
				}
				ncls = ClsD;
				return zero(s, sg);
			case 1:
				if (trail) {
					ncls = ClsA;
					nsg = sg;
					return add_delta(s, sg, Lin{-sg, 1, -1});
				} else {
					ncls = ClsA;
					nsg = -sg;
					s = addp(s, -sg);
					s = add(s, sg);
					s = loop(s, Lin{-sg, 0, -2}, sg);
					return ap_member(s, Lin{-sg, 0, -1}, a, b);
				}
			case 2:
				if (trail) {
					ncls = ClsB;
					nsg = sg;
					return addp(zero(s, sg), sg);
				}
				ncls = ClsA;
				nsg = -sg;
				return addp(s, -sg);
			case 3:
				if (trail) {
					ncls = ClsC;
					nsg = sg;
					s = test(s, e.minus(a), Cmp::Ge);
					return add(addp(zero(s, sg), sg), sg);
				}
				ncls = ClsA;
				nsg = -sg;
				return add_delta(addp(s, -sg), -sg, Lin{sg, 1, -1});
			case 4:
				if (trail) {
					ncls = ClsC;
					nsg = sg;
					return add(addp(zero(s, sg), sg), sg);
				}
				ncls = ClsB;
				nsg = -sg;
				return addp(zero(s, sg), -sg);
			default:
				ncls = ClsC;
				nsg = trail ? sg : -sg;
				return add(addp(zero(s, sg), nsg), nsg);
			}
		}
		if (cls == ClsB) {
			switch (phase) {
			case 0:
				if (trail) {
					ncls = ClsB;
					nsg = sg;
					return s;
				}
				ncls = ClsD;
				return addp(s, -sg);
			case 1:
				if (trail) {
					ncls = ClsC;
					nsg = sg;
					return add(test(s, e.minus(a), Cmp::Ge), sg);
				}
				ncls = ClsA;
				nsg = -sg;
				return add_delta(addp(s, -sg), -sg, Lin{sg, 1, -1});
			case 2:
				if (trail) {
					ncls = ClsC;
					nsg = sg;
					return add(s, sg);
				}
				ncls = ClsB;
				nsg = -sg;
				return addp(addp(s, -sg), -sg);
			default:
				ncls = ClsC;
				nsg = trail ? sg : -sg;
				if (trail) return add(s, sg);
				return add(addp(addp(s, -sg), -sg), -sg);
			}
		}
		// class C
		switch (phase) {
		case 0:
			if (trail) {
				ncls = ClsC;
				nsg = sg;
				return s;
			}
			ncls = ClsD;
			return add(addp(s, -sg), -sg);
		case 1:
			if (trail) {
				ncls = ClsC;
				nsg = sg;
				return test(s, e.minus(a), Cmp::Ge);
			}
			ncls = ClsA;
			nsg = -sg;
			return add_delta(add(addp(s, -sg), -sg), -sg, Lin{sg, 1, -1});
		case 2:
			if (trail) {
				ncls = ClsC;
				nsg = sg;
				return s;
			}
			ncls = ClsB;
			nsg = -sg;
			return addp(add(addp(s, -sg), -sg), -sg);
		default:
			ncls = ClsC;
			nsg = trail ? sg : -sg;
			if (trail) return s;
			return add(addp(add(addp(s, -sg), -sg), -sg), -sg);
		}
	}

	const std::vector<APSet> &lengths(Region r, int s) {
		auto key = std::make_pair(static_cast<int>(r), s);
		auto it = lengths_.find(key);
		if (it != lengths_.end()) return it->second;
		auto oca_it = ocas_.find(static_cast<int>(r));
		if (oca_it == ocas_.end())
			oca_it = ocas_.emplace(static_cast<int>(r), region_oca(region_automaton(*bn_, r))).first;
		return lengths_.emplace(key, reach_lengths_from(oca_it->second, s)).first->second;
	}

	void expand(const EnterKey &key) {
		auto [cls, sg, phase, q] = key;
		const int from = enter_.at(key);
		const PhaseDef &ph = phases_of(cls)[phase];
		const Region reg = actual_region(cls, sg, phase);
		const bool last = phase + 1 == (int)phases_of(cls).size();
		const auto &r0 = bn_->r0;
		const auto &r1 = bn_->r1;

		if (!ph.open) {
			if (bn_->is_final(q)) rule(from, nop(), acc_);
			for (int ri : out_rules_[0][q]) {
				const auto &r = r0[ri];
				if (!region_satisfies(reg, r.guard)) continue;
				if (r.resets.empty()) rule(from, nop(), enter(cls, sg, phase, r.to));
				else rule(from, nop(), hub(cls, sg, phase, event_of(r.resets, sg), -1, -1, r.to));
			}
			if (!last)
				for (int ri : out_rules_[1][q]) rule(from, nop(), tick_hub(cls, sg, phase, r1[ri].to));
			return;
		}

		const auto &pi = lengths(reg, q);
		for (int t = 0; t < (int)pi.size(); ++t) {
			if (pi[t].empty()) continue;
			// unbounded phases only need some length
			std::vector<APSet::Pair> pairs = ph.bounded ? pi[t].pairs() : std::vector<APSet::Pair>{{-1, -1}};
			for (auto [a, b] : pairs) {
				if (bn_->is_final(t)) rule(from, nop(), hub(cls, sg, phase, EvAccept, a, b, -1));
				for (int ri : out_rules_[0][t]) {
					const auto &r = r0[ri];
					if (r.resets.empty() || !region_satisfies(reg, r.guard)) continue;
					rule(from, nop(), hub(cls, sg, phase, event_of(r.resets, sg), a, b, r.to));
				}
				if (!last)
					for (int ri : out_rules_[1][t]) rule(from, nop(), hub(cls, sg, phase, EvExit, a, b, r1[ri].to));
			}
		}
	}

	int build_large_copy() {
		enter_.clear();
		hubs_.clear();
		ticks_.clear();
		pending_.clear();
		int start = enter(ClsD, 1, 0, bn_->initial);
		while (!pending_.empty()) {
			EnterKey k = pending_.back();
			pending_.pop_back();
			expand(k);
		}
		return start;
	}

	// Keeps states that lie on some path from the initial to the final state.
	void trim() {
		Poca &c = C();
		const int n = (int)c.states.size();
		std::vector<std::vector<int>> fwd(n), bwd(n);
		for (const auto &r : c.rules) {
			fwd[r.from].push_back(r.to);
			bwd[r.to].push_back(r.from);
		}
		auto mark = [&](int root, const std::vector<std::vector<int>> &g) {
			std::vector<char> seen(n, 0);
			std::vector<int> st{root};
			seen[root] = 1;
			while (!st.empty()) {
				int u = st.back();
				st.pop_back();
				for (int v : g[u])
					if (!seen[v]) {
						seen[v] = 1;
						st.push_back(v);
					}
			}
			return seen;
		};
		auto f = mark(c.initial, fwd), b = mark(acc_, bwd);
		std::vector<int> remap(n, -1);
		Poca out;
		out.params = c.params;
		std::vector<StateInfo> info;
		for (int i = 0; i < n; ++i)
			if ((f[i] && b[i]) || i == c.initial) {
				remap[i] = (int)out.states.size();
				out.states.push_back(c.states[i]);
				info.push_back(out_.info[i]);
			}
		if (remap[acc_] < 0) {
			remap[acc_] = (int)out.states.size();
			out.states.push_back(c.states[acc_]);
			info.push_back(out_.info[acc_]);
		}
		for (const auto &r : c.rules)
			if (remap[r.from] >= 0 && remap[r.to] >= 0) out.rules.push_back({remap[r.from], r.op, remap[r.to]});
		out.initial = remap[c.initial];
		out.finals = {remap[acc_]};
		std::vector<GadgetSpec> gadgets;
		std::vector<int> gremap(out_.gadgets.size(), -1);
		for (std::size_t g = 0; g < out_.gadgets.size(); ++g) {
			auto spec = out_.gadgets[g];
			if (remap[spec.entry] < 0) continue;
			spec.entry = remap[spec.entry];
			spec.exit = remap[spec.exit];
			gremap[g] = (int)gadgets.size();
			gadgets.push_back(spec);
		}
		for (auto &i : info) i.gadget = i.gadget >= 0 ? gremap[i.gadget] : -1;
		out_.poca = std::move(out);
		out_.info = std::move(info);
		out_.gadgets = std::move(gadgets);
	}

	BuildOptions opt_;
	BuiltPoca out_;
	ZeroOnePta original_;
	const ZeroOnePta *bn_ = nullptr;
	std::vector<std::vector<int>> out_rules_[2];
	int init_ = -1, acc_ = -1;
	Int copy_ = -1, modulus_ = 0;
	int cur_gadget_ = -1;
	Int excursion_ = 0;
	std::set<Int> periods_;
	std::map<EnterKey, int> enter_;
	std::map<HubKey, int> hubs_;
	std::map<std::tuple<int, int, int, int>, int> ticks_;
	std::vector<EnterKey> pending_;
	std::map<int, Poca> ocas_;
	std::map<std::pair<int, int>, std::vector<APSet>> lengths_;
};

} // namespace detail

inline BuiltPoca build_poca(const ZeroOnePta &b, BuildOptions opt = {}) {
	return detail::PocaBuilder(b, opt).build();
}

// Largest counter value searched for accepting runs.
inline Int value_bound(const Poca &c, Int n) { return 4 * std::max(n, poca_size(c)); }

} // namespace ptapoca
