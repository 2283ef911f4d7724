#pragma once

#include "alblab/path_integrals.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace alblab {

struct CriterionResult {
	int id = 0;
	std::string name;
	bool passed = false;
	double seconds = 0.0;
	double budget_seconds = 0.0;
	long checks = 0;
	long failures = 0;
	double worst = 0.0; // largest observed error where meaningful
	std::string detail;
};

struct AcceptanceOptions {
	bool full = true;
	QuadratureConfig cfg{};
	std::uint64_t seed = 0x5eed2024;
	std::vector<int> only; // run just these ids when nonempty
};

/// Runs the acceptance criteria (all eleven in full mode; the algebraic and
/// shuffle/composition ones in quick mode).  `on_result` fires after each.
std::vector<CriterionResult> run_acceptance(AcceptanceOptions const &opts,
                                            std::function<void(CriterionResult const &)> const &on_result = {});

std::vector<int> quick_criteria();

} // namespace alblab
