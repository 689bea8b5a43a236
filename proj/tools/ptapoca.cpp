// Command-line front end for the PTA to POCA pipeline.
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "ptapoca/builder.hpp"
#include "ptapoca/fixtures.hpp"
#include "ptapoca/json_io.hpp"
#include "ptapoca/region.hpp"
#include "ptapoca/semilinear.hpp"
#include "ptapoca/semirun.hpp"
#include "ptapoca/solver.hpp"
#include "ptapoca/zero_one.hpp"

using namespace ptapoca;
using io::Json;

namespace {

constexpr int kReachable = 0, kUnreachable = 1, kError = 2;

struct Failure : std::runtime_error {
	using std::runtime_error::runtime_error;
};

bool g_json = false;

Json read_json(const std::string &path) {
	std::ifstream in(path);
	if (!in) throw Failure("cannot open '" + path + "'");
	try {
		return Json::parse(in);
	} catch (const nlohmann::json::parse_error &e) {
		throw Failure("'" + path + "' is not valid JSON: " + e.what());
	}
}

void write_json(const Json &j, const std::string &path) {
	std::ofstream out(path);
	if (!out) throw Failure("cannot write '" + path + "'");
	out << j.dump(2) << "\n";
}

// Resolves bare fixture names against $PTAPOCA_FIXTURES.
std::string resolve(const std::string &path) {
	if (std::filesystem::exists(path)) return path;
	if (const char *dir = std::getenv("PTAPOCA_FIXTURES")) {
		auto p = std::filesystem::path(dir) / path;
		if (std::filesystem::exists(p)) return p.string();
	}
	return path;
}

void emit(const Json &report, const std::string &text) {
	if (g_json) std::cout << report.dump(2) << "\n";
	else std::cout << text;
}

std::string kind_of(const Json &j) {
	if (!j.contains("kind")) throw Failure("input has no 'kind' field");
	return j["kind"].get<std::string>();
}

// ---- subcommands ----

int cmd_parse(const std::string &path) {
	Json j = read_json(resolve(path));
	std::string kind = kind_of(j);
	Json canon;
	std::ostringstream text;
	if (kind == "pta") {
		Pta a = io::pta_from_json(j);
		canon = io::to_json(a);
		text << "PTA: " << a.states.size() << " states, " << a.clocks.size() << " clocks, size " << pta_size(a)
		     << ", (2,1): " << (a.params.size() == 1 && parametric_clocks(a).size() <= 2 ? "yes" : "no") << "\n";
	} else if (kind == "zero-one-pta") {
		ZeroOnePta b = io::zero_one_from_json(j);
		canon = io::to_json(b);
		text << "0/1-PTA: " << b.states.size() << " states, " << b.r0.size() << " untimed and " << b.r1.size()
		     << " timed rules, size " << zero_one_size(b) << "\n";
	} else if (kind == "poca") {
		Poca c = io::poca_from_json(j);
		canon = io::to_json(c);
		text << "POCA: " << c.states.size() << " states, " << c.rules.size() << " rules, size " << poca_size(c) << "\n";
	} else {
		throw Failure("cannot parse kind '" + kind + "'");
	}
	emit(canon, text.str());
	return 0;
}

int cmd_reduce(const std::string &path, const std::string &stage, const std::string &out,
               const std::string &annotations, std::size_t budget) {
	Json j = read_json(resolve(path));
	ZeroOnePta b;
	if (kind_of(j) == "pta") b = to_zero_one_pta(io::pta_from_json(j));
	else b = io::zero_one_from_json(j);
	Json result;
	std::ostringstream text;
	if (stage == "zero-one") {
		result = io::to_json(b);
		text << "0/1-PTA with " << b.states.size() << " states\n";
	} else if (stage == "poca") {
		BuildOptions opt;
		opt.max_states = budget;
		BuiltPoca built = build_poca(b, opt);
		result = io::to_json(built.poca);
		if (!annotations.empty()) write_json(io::annotations_json(built), annotations);
		text << "POCA with " << built.poca.states.size() << " states, " << built.poca.rules.size()
		     << " rules, size " << poca_size(built.poca) << ", residue modulus " << built.modulus << "\n";
	} else {
		throw Failure("unknown stage '" + stage + "' (use zero-one or poca)");
	}
	if (!out.empty()) write_json(result, out);
	if (g_json || out.empty()) emit(result, text.str());
	else std::cout << text.str();
	return 0;
}

int cmd_regions(Int n, const std::string &path) {
	Json report = Json::array();
	std::ostringstream text;
	std::optional<ZeroOnePta> b;
	if (!path.empty()) {
		Json j = read_json(resolve(path));
		b = kind_of(j) == "pta" ? to_zero_one_pta(io::pta_from_json(j)) : io::zero_one_from_json(j);
	}
	for (Region r : all_regions()) {
		Json row{{"region", region_name(r)}, {"empty", region_empty_at(r, n)}};
		text << region_name(r);
		if (region_empty_at(r, n)) {
			text << " (empty)";
		} else {
			// representatives are given for N = 4; move them to this N
			auto scale = [n](Int v) { return v == 0 ? 0 : v < 4 ? 1 : v == 4 ? n : n + 1; };
			auto [x, y] = region_representative(r);
			row["example"] = {scale(x), scale(y)};
			text << "  e.g. (" << scale(x) << "," << scale(y) << ")";
		}
		if (b) {
			ZeroOnePta br = region_automaton(*b, r);
			row["untimed_rules"] = br.r0.size();
			row["timed_rules"] = br.r1.size();
			text << "  rules " << br.r0.size() << "+" << br.r1.size();
		}
		text << "\n";
		report.push_back(row);
	}
	emit(Json{{"param", n}, {"regions", report}}, text.str());
	return 0;
}

int cmd_semilinear(const std::string &path, const std::string &from, const std::string &to) {
	Poca c = io::poca_from_json(read_json(resolve(path)));
	auto idx = ptapoca::detail::index_of(c.states, "state");
	int s = from.empty() ? c.initial : idx.count(from) ? idx.at(from) : throw Failure("unknown state '" + from + "'");
	auto sets = reach_lengths_from(c, s);
	Json report = Json::object();
	std::ostringstream text;
	for (int t = 0; t < (int)c.states.size(); ++t) {
		if (!to.empty() && c.states[t] != to) continue;
		report[c.states[t]] = io::to_json(sets[t]);
		text << c.states[from.empty() ? c.initial : s] << " -> " << c.states[t] << ": " << sets[t].to_string() << "\n";
	}
	emit(report, text.str());
	return 0;
}

const char *mode_name(Mode m) { return m == Mode::Direct ? "direct" : "via-poca"; }

Json verdict_json(const Verdict &v) {
	Json per = Json::array();
	for (const auto &r : v.per_n) {
		Json x{{"n", r.n}, {"reachable", r.reachable}};
		if (!r.decode_error.empty()) x["decode_error"] = r.decode_error;
		per.push_back(x);
	}
	Json j{{"mode", mode_name(v.mode)}, {"n_max", v.n_max}, {"qualifier", v.qualifier()},
	       {"threshold", v.threshold.str()}, {"per_n", per}};
	j["first"] = v.first ? Json(*v.first) : Json(nullptr);
	return j;
}

int cmd_solve(const std::string &path, Int n_max, const std::string &mode, const std::string &witness,
              std::size_t budget) {
	Json j = read_json(resolve(path));
	std::ostringstream text;
	Json report;
	bool reachable = false;
	if (kind_of(j) == "poca") {
		Poca c = io::poca_from_json(j);
		Json per = Json::array();
		std::optional<NResult> first;
		for (Int n = 0; n <= n_max; ++n) {
			NResult r = solve_poca_at(c, n);
			per.push_back({{"n", n}, {"reachable", r.reachable}});
			if (r.reachable && !first) first = r;
		}
		reachable = first.has_value();
		report = {{"mode", "poca"}, {"n_max", n_max}, {"per_n", per}};
		report["first"] = first ? Json(first->n) : Json(nullptr);
		if (first && !witness.empty()) write_json(io::to_json(*first->poca_witness, c, first->n), witness);
		text << (first ? "reachable, minimal N = " + std::to_string(first->n) : "unreachable up to N = " + std::to_string(n_max))
		     << "\n";
		emit(report, text.str());
		return reachable ? kReachable : kUnreachable;
	}
	Pta a = io::pta_from_json(j);
	BuildOptions opt;
	opt.max_states = budget;
	Pipeline p = make_pipeline(a, opt);
	std::vector<Mode> modes;
	if (mode == "direct" || mode == "both") modes.push_back(Mode::Direct);
	if (mode == "via-poca" || mode == "both") modes.push_back(Mode::ViaPoca);
	if (modes.empty()) throw Failure("unknown mode '" + mode + "' (use direct, via-poca or both)");
	Json verdicts = Json::array();
	std::optional<Int> first;
	std::optional<PtaRun> run;
	for (Mode m : modes) {
		Verdict v = decide(p, n_max, m);
		verdicts.push_back(verdict_json(v));
		text << mode_name(m) << ": ";
		if (v.first) {
			text << "reachable, minimal N = " << *v.first;
			const auto &r = v.per_n[*v.first];
			if (r.witness && !run) run = r.witness;
			if (!r.decode_error.empty()) text << " (witness decoding failed: " << r.decode_error << ")";
		} else {
			text << "unreachable up to N = " << n_max;
		}
		text << " [" << v.qualifier() << "]\n";
		if (first && v.first != first) text << "warning: modes disagree\n";
		if (!first) first = v.first;
	}
	if (run && !witness.empty()) write_json(io::to_json(*run, a, *first), witness);
	emit(Json{{"verdicts", verdicts}}, text.str());
	return first ? kReachable : kUnreachable;
}

int cmd_simulate(const std::string &path, Int n, Int hi, const std::string &out) {
	Json j = read_json(resolve(path));
	std::string kind = kind_of(j);
	Json run;
	if (kind == "pta") {
		Pta a = io::pta_from_json(j);
		if (auto r = pta_reach_bruteforce(a, n)) run = io::to_json(*r, a, n);
	} else if (kind == "zero-one-pta") {
		ZeroOnePta b = io::zero_one_from_json(j);
		if (auto r = zero_one_reach(b, n)) run = io::to_json(*r, b, n);
	} else if (kind == "poca") {
		Poca c = io::poca_from_json(j);
		Int bound = hi >= 0 ? hi : value_bound(c, n);
		if (auto r = poca_reach_bounded(c, n, 0, bound)) run = io::to_json(*r, c, n);
	} else {
		throw Failure("cannot simulate kind '" + kind + "'");
	}
	if (run.is_null()) {
		emit(Json{{"reachable", false}, {"param", n}}, "no accepting run for N = " + std::to_string(n) + "\n");
		return kUnreachable;
	}
	if (!out.empty()) write_json(run, out);
	emit(run, "accepting run with " + std::to_string(run["run"].size() - 1) + " steps\n");
	return kReachable;
}

int cmd_validate(const std::string &run_path, const std::string &aut_path, std::optional<Int> param, bool semi) {
	Json rj = read_json(resolve(run_path));
	Json aj = read_json(resolve(aut_path));
	Int n = param ? *param : io::run_param(rj);
	std::string kind = kind_of(aj);
	Validation v;
	bool accepting = false;
	if (kind == "pta") {
		Pta a = io::pta_from_json(aj);
		PtaRun r = io::pta_run_from_json(rj, a);
		v = validate_run(r, a, n);
		accepting = is_accepting(r, a);
	} else if (kind == "zero-one-pta") {
		ZeroOnePta b = io::zero_one_from_json(aj);
		ZeroOneRun r = io::zero_one_run_from_json(rj, b);
		v = validate_run(r, b, n);
		accepting = is_accepting(r, b);
	} else if (kind == "poca") {
		Poca c = io::poca_from_json(aj);
		PocaRun r = io::poca_run_from_json(rj, c);
		v = semi ? validate_semirun(r, c, n) : validate_run(r, c, n);
		accepting = is_accepting(r, c);
	} else {
		throw Failure("cannot validate against kind '" + kind + "'");
	}
	Json report{{"valid", v.ok}, {"accepting", accepting}, {"param", n}};
	std::string text = v.ok ? "valid" : "invalid at configuration " + std::to_string(v.index) + ": " + v.reason;
	if (!v.ok) {
		report["index"] = v.index;
		report["reason"] = v.reason;
	}
	emit(report, text + (v.ok ? (accepting ? ", accepting\n" : ", not accepting\n") : "\n"));
	return v.ok ? 0 : 1;
}

int cmd_depump(const std::string &run_path, const std::string &aut_path, const std::string &consts_path,
               Int k, const std::string &out) {
	Json cj = read_json(resolve(consts_path));
	if (k < 1) {
		if (!cj.contains("K")) throw Failure("pass --k or put K into the constants file");
		k = cj["K"].get<Int>();
	}
	DerivedConstants d = io::constants_from_json(cj);
	Poca c = io::poca_from_json(read_json(resolve(aut_path)));
	Json rj = read_json(resolve(run_path));
	Int n = io::run_param(rj);
	Semirun pi = io::poca_run_from_json(rj, c);
	DepumpResult res = depump(c, pi, n, k, d);
	Json run = io::to_json(res.run, c, n);
	run["kind"] = "semirun";
	Json intervals = Json::array();
	for (auto [s, t] : res.intervals) intervals.push_back({s, t});
	if (!out.empty()) write_json(run, out);
	Json report{{"delta_before", pi.delta()}, {"delta_after", res.run.delta()}, {"d", res.d},
	            {"intervals", intervals}, {"run", run}};
	emit(report, "Delta " + std::to_string(pi.delta()) + " -> " + std::to_string(res.run.delta()) + " by gluing " +
	                 std::to_string(res.intervals.size()) + " intervals\n");
	return 0;
}

int cmd_fixtures(const std::string &dir, std::uint64_t seed, int random_count) {
	std::filesystem::create_directories(dir);
	Json index = Json::array();
	auto put = [&](const std::string &name, const Json &j) {
		write_json(j, (std::filesystem::path(dir) / (name + ".json")).string());
		index.push_back(name);
	};
	put("fig1", io::to_json(fixtures::fig1()));
	put("fig2", io::to_json(fixtures::fig2()));
	for (const auto &f : fixtures::corpus()) put(f.name, io::to_json(f.pta));
	put("bad-three-parametric", io::to_json(fixtures::three_parametric()));
	put("staircase", io::to_json(fixtures::staircase()));
	put("staircase-run", [] {
		Json r = io::to_json(fixtures::staircase_run(9), fixtures::staircase(), 3);
		r["kind"] = "semirun";
		return r;
	}());
	put("staircase-consts", Json{{"K", 2}, {"Z", 1}, {"Gamma", 2}, {"Upsilon", 8}});
	std::mt19937_64 rng(seed);
	for (int i = 0; i < random_count; ++i) put("random-" + std::to_string(i), io::to_json(fixtures::random_pta(rng)));
	emit(Json{{"dir", dir}, {"seed", seed}, {"files", index}},
	     "wrote " + std::to_string(index.size()) + " fixtures to " + dir + "\n");
	return 0;
}

} // namespace

int main(int argc, char **argv) {
	CLI::App app{"ptapoca: (2,1)-PTA reachability through parametric one-counter automata"};
	app.require_subcommand(1);
	app.add_flag("--json", g_json, "Machine-readable output");

	std::string path, out, stage = "poca", annotations, mode = "both", witness, run_path, consts_path, from, to;
	Int n = 0, n_max = 8, hi = -1, k = 0;
	std::optional<Int> param;
	std::uint64_t seed = 1;
	int random_count = 0;
	bool semi = false;
	std::size_t budget = BuildOptions{}.max_states;

	auto *parse = app.add_subcommand("parse", "Parse and canonicalize an automaton");
	parse->add_option("file", path, "Automaton JSON")->required();

	auto *reduce = app.add_subcommand("reduce", "Run the reduction up to a stage");
	reduce->add_option("--pta,file", path, "PTA or 0/1-PTA JSON")->required();
	reduce->add_option("--stage", stage, "zero-one or poca");
	reduce->add_option("--out", out, "Write the result here");
	reduce->add_option("--annotations", annotations, "Write the state annotations here");
	reduce->add_option("--budget", budget, "Maximum number of POCA states");

	auto *regions = app.add_subcommand("regions", "List the 16 regions");
	regions->add_option("--param", n, "Parameter value")->check(CLI::PositiveNumber);
	regions->add_option("--automaton", path, "Optional 0/1-PTA or PTA to restrict");

	auto *semilinear = app.add_subcommand("semilinear", "Reachability lengths of a one-counter automaton");
	semilinear->add_option("--poca,file", path, "OCA JSON with +0/+1 updates")->required();
	semilinear->add_option("--from", from, "Source state (default: initial)");
	semilinear->add_option("--to", to, "Only this target state");

	auto *solve = app.add_subcommand("solve", "Search parameter values with an accepting run");
	solve->add_option("--pta,file", path, "PTA (or POCA) JSON")->required();
	solve->add_option("--max-n", n_max, "Largest parameter value tried")->check(CLI::NonNegativeNumber);
	solve->add_option("--mode", mode, "direct, via-poca or both");
	solve->add_option("--emit-witness", witness, "Write the witness run here");
	solve->add_option("--budget", budget, "Maximum number of POCA states");

	auto *simulate = app.add_subcommand("simulate", "Find an accepting run for one parameter value");
	simulate->add_option("--automaton,file", path, "Automaton JSON")->required();
	simulate->add_option("--param", n, "Parameter value")->required();
	simulate->add_option("--hi", hi, "Upper counter bound for POCA search");
	simulate->add_option("--out", out, "Write the run here");

	auto *validate = app.add_subcommand("validate", "Replay a run");
	validate->add_option("--run", run_path, "Run JSON")->required();
	validate->add_option("--automaton", path, "Automaton JSON")->required();
	validate->add_option("--param", param, "Parameter value (default: from the run)");
	validate->add_flag("--semirun", semi, "Do not enforce comparison tests");

	auto *dep = app.add_subcommand("depump", "Depump a semirun");
	dep->add_option("--run", run_path, "Semirun JSON")->required();
	dep->add_option("--automaton", path, "POCA JSON")->required();
	dep->add_option("--consts", consts_path, "Constants JSON")->required();
	dep->add_option("--k", k, "State-count parameter K");
	dep->add_option("--out", out, "Write the depumped semirun here");

	auto *fix = app.add_subcommand("fixtures", "Regenerate the fixture corpus");
	fix->add_option("--out", out, "Output directory")->default_val("fixtures");
	fix->add_option("--seed", seed, "Seed for random fixtures");
	fix->add_option("--random", random_count, "Number of random PTAs");

	try {
		app.parse(argc, argv);
	} catch (const CLI::ParseError &e) {
		int code = app.exit(e);
		return code == 0 ? 0 : kError;
	}

	try {
		if (*parse) return cmd_parse(path);
		if (*reduce) return cmd_reduce(path, stage, out, annotations, budget);
		if (*regions) return cmd_regions(std::max<Int>(n, 1), path);
		if (*semilinear) return cmd_semilinear(path, from, to);
		if (*solve) return cmd_solve(path, n_max, mode, witness, budget);
		if (*simulate) return cmd_simulate(path, n, hi, out);
		if (*validate) return cmd_validate(run_path, path, param, semi);
		if (*dep) return cmd_depump(run_path, path, consts_path, k, out);
		if (*fix) return cmd_fixtures(out, seed, random_count);
	} catch (const std::exception &e) {
		if (g_json) std::cout << Json{{"error", e.what()}}.dump(2) << "\n";
		else std::cerr << "error: " << e.what() << "\n";
		return kError;
	}
	return kError;
}
