// Reduces the mod-3 fixture to a POCA and prints the verdict per parameter value.
#include <iostream>

#include "ptapoca/fixtures.hpp"
#include "ptapoca/solver.hpp"

int main() {
	using namespace ptapoca;
	Pipeline p = make_pipeline(fixtures::fig1());
	std::cout << "0/1-PTA states: " << p.zero_one.states.size() << "\n"
	          << "POCA states:    " << p.built.poca.states.size() << "\n";
	Verdict v = decide(p, 9, Mode::ViaPoca);
	for (const auto &r : v.per_n) {
		std::cout << "N = " << r.n << ": " << (r.reachable ? "reachable" : "unreachable");
		if (r.witness) std::cout << " (PTA witness with " << r.witness->length() << " steps)";
		std::cout << "\n";
	}
	std::cout << "qualifier: " << v.qualifier() << "\n";
}
