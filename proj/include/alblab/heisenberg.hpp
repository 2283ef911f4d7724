#pragma once

#include <array>
#include <cstdint>

namespace alblab {

/// Unipotent upper-triangular 3x3 matrix
///     [[1, b, c],
///      [0, 1, a],
///      [0, 0, 1]]
/// stored as (a, b, c).  With entries (alpha, beta, lambda) it is the point
/// F(alpha, beta, lambda) of the rank-3 period domain; with integer entries
/// it is an element of the integral Heisenberg group.
template <class T> struct Heisenberg {
	T a{}, b{}, c{};

	static Heisenberg identity() { return {T(0), T(0), T(0)}; }

	friend Heisenberg operator*(Heisenberg const &x, Heisenberg const &y)
	{
		return {x.a + y.a, x.b + y.b, y.c + x.b * y.a + x.c};
	}
	Heisenberg inverse() const { return {-a, -b, a * b - c}; }

	std::array<std::array<T, 3>, 3> matrix() const
	{
		return {{{T(1), b, c}, {T(0), T(1), a}, {T(0), T(0), T(1)}}};
	}

	friend bool operator==(Heisenberg const &, Heisenberg const &) = default;
};

using IntHeisenberg = Heisenberg<std::int64_t>;

} // namespace alblab
