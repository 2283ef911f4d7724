#pragma once

#include "alblab/group_word.hpp"
#include "alblab/heisenberg.hpp"
#include "alblab/hodge.hpp"
#include "alblab/path_integrals.hpp"

#include <array>
#include <string>
#include <vector>

namespace alblab {

/// A point of the second higher Albanese manifold of P^1 - {0, 1, oo}, base
/// point the tangent vector 1 at 0.  `raw` holds the unreduced coordinates of
/// the path actually used (loop_prefix, then the standard path to x).
struct AlbanesePoint {
	Complex x;
	GroupWord homotopy_class;
	Heisenberg<Complex> raw;
	ReducedPoint reduced;
	double abs_err_est = 0.0;
};

/// F((2 pi i)^-1 log x, (2 pi i)^-1 l1(x), (2 pi i)^-2 l2(x)) modulo the
/// integral Heisenberg group.
AlbanesePoint albanese_point(Complex x, GroupWord const &loop_prefix = {}, QuadratureConfig const &cfg = {});

/// The same point in the dilogarithm-sheaf coordinates: the inverse of
/// [[1, -alpha, lambda], [0, 1, -beta], [0, 0, 1]].
AlbanesePoint albanese_point_alt(Complex x, GroupWord const &loop_prefix = {}, QuadratureConfig const &cfg = {});

/// Coordinate change from the primary to the alternative coordinates,
/// (alpha, beta, lambda) -> (beta, alpha, alpha beta - lambda).  It carries
/// left multiplication by g to left multiplication by to_alt_coordinates(g).
template <class T> Heisenberg<T> to_alt_coordinates(Heisenberg<T> const &p)
{
	return {p.b, p.a, p.a * p.b - p.c};
}

/// (q, beta, lambda) = (x, (2 pi i)^-1 l1(x), (2 pi i)^-2 l2(x)) for |x| < 1/2;
/// (0, 0, 0) at x = 0.
BoundaryChartPoint extended_albanese(Complex x, QuadratureConfig const &cfg = {});
inline constexpr double extended_albanese_radius = 0.5;

struct MonodromyAction {
	IntHeisenberg matrix;
	double max_deviation = 0.0; // distance of the continued matrix from integers
};

/// Integer matrix g by which continuing the period matrix along the loop
/// word multiplies it on the left.  The period matrix is continued from the
/// standard path to `base_x`.  Throws ConvergenceError when an entry is more
/// than 1e-3 from an integer.
MonodromyAction monodromy_action(GroupWord const &word, QuadratureConfig const &cfg = {}, Complex base_x = 0.5);

// ---------------------------------------------------------------------------
// Lie(G) acting on the rank-3 lattice

/// Action of N0, N1 on e1, e2, e3; column j of a matrix is the image of e_{j+1}.
struct LieActionTable {
	std::string name;
	RationalMatrix n0, n1;

	RationalMatrix bracket() const; // [N1, N0] = N1 N0 - N0 N1

	static LieActionTable e23(); // N0 e3 = e2, N1 e2 = e1
	static LieActionTable e24(); // N0 e2 = e1, N1 e3 = e2
	static LieActionTable perturbed(); // e23 with N0 e3 = e1 + e2
};

struct MhsCheck {
	std::string element; // "N0", "N1", "[N1,N0]", "[N0,[N1,N0]]", ...
	std::string basis_vector;
	bool weight_ok = true;
	bool hodge_ok = true;
};

struct MhsMorphismReport {
	std::string table;
	bool weight_ok = true;
	bool hodge_ok = true;
	bool nilpotent_class_ok = true; // brackets of length 3 act as zero
	std::vector<MhsCheck> failures;

	bool passed() const { return weight_ok && hodge_ok && nilpotent_class_ok; }
};

/// Weight and Hodge bookkeeping for Lie(G) x V -> V: N0, N1 have type
/// (-1,-1) and weight -2, [N1, N0] type (-2,-2) and weight -4; V carries
/// W and F(0, 0, 0).
MhsMorphismReport lie_action_is_mhs_morphism(LieActionTable const &table);

// ---------------------------------------------------------------------------
// Differential relations

struct DifferentialResidual {
	Complex x, direction;
	double d_alpha = 0.0;  // |d alpha/dt - (2 pi i)^-1 x'/x|
	double d_beta = 0.0;   // |d beta/dt - (2 pi i)^-1 x'/(1-x)|
	double d_lambda = 0.0; // |d lambda/dt - beta d alpha/dt|
	double d_lambda_swapped = 0.0; // |d lambda/dt - alpha d beta/dt|, for comparison
	double max() const { return std::max({d_alpha, d_beta, d_lambda}); }
};

/// Central differences of the continued coordinates at x along `direction`
/// with step h.
DifferentialResidual differential_residual(Complex x, Complex direction, double h = 1e-4,
                                           QuadratureConfig const &cfg = {});

} // namespace alblab
