// Shifts, glues and depumps a small staircase semirun.
#include <iostream>

#include "ptapoca/fixtures.hpp"
#include "ptapoca/semirun.hpp"

int main() {
	using namespace ptapoca;
	Poca c = fixtures::staircase();
	Semirun pi = fixtures::staircase_run(21);
	const Int n = 4;

	Semirun up = shift(pi, 6, 2);
	std::cout << "shifted by 6: Delta " << up.delta() << ", min " << up.min_value() << "\n";

	Semirun cut = glue(pi, 2, 6, 2);
	std::cout << "glued [2,6]: length " << cut.length() << ", Delta " << cut.delta() << "\n";

	DerivedConstants k2 = DerivedConstants::test_scale(2, 1);
	DepumpResult d = depump(c, pi, n, 2, k2);
	std::cout << "depumped: Delta " << pi.delta() << " -> " << d.run.delta() << " (Gamma " << k2.Gamma << ")\n";
	std::cout << "valid semirun: " << (validate_semirun(d.run, c, n) ? "yes" : "no") << "\n";
}
