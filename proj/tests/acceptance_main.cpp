// Runs the acceptance criteria and prints one line per criterion.
// Exit status is nonzero when any criterion fails.
#include "alblab/acceptance.hpp"

#include <fmt/format.h>

int main(int argc, char **argv)
{
	alblab::AcceptanceOptions opts;
	for (int i = 1; i < argc; ++i)
		if (std::string_view(argv[i]) == "--quick")
			opts.full = false;
	int failed = 0;
	alblab::run_acceptance(opts, [&](alblab::CriterionResult const &r) {
		fmt::print("{} {:2d} {:<34} {:7.2f}s / {:>4.0f}s  {}\n", r.passed ? "PASS" : "FAIL", r.id, r.name, r.seconds,
		           r.budget_seconds, r.detail);
		std::fflush(stdout);
		failed += r.passed ? 0 : 1;
	});
	fmt::print("{} of 11 criteria failed\n", failed);
	return failed == 0 ? 0 : 1;
}
