#pragma once

#include <stdexcept>
#include <string>

namespace alblab {

/// Precondition or domain violation (bad input, invalid path, ...).
class DomainError : public std::runtime_error {
public:
	using std::runtime_error::runtime_error;
};

/// A numerical procedure did not reach the requested tolerance.
class ConvergenceError : public std::runtime_error {
public:
	using std::runtime_error::runtime_error;
};

} // namespace alblab
