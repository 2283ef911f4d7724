#pragma once

#include "alblab/heisenberg.hpp"
#include "alblab/linalg.hpp"
#include "alblab/rational.hpp"

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace alblab {

using Complex = std::complex<double>;

// ---------------------------------------------------------------------------
// Filtrations

/// Increasing filtration of Q^n (or C^n) given by its jumps: step(k) is the
/// subspace attached to the largest jump index <= k, zero below the first
/// jump.  The last jump must be the whole space.
template <class T> class IncreasingFiltration {
public:
	IncreasingFiltration() = default;
	IncreasingFiltration(std::size_t dim, std::map<int, linalg::Subspace<T>> jumps);

	std::size_t dim() const { return dim_; }
	linalg::Subspace<T> at(int k) const;
	std::map<int, linalg::Subspace<T>> const &jumps() const { return jumps_; }
	int lowest() const { return jumps_.begin()->first; }
	int highest() const { return jumps_.rbegin()->first; }
	/// Indices k where dim step(k) > dim step(k-1).
	std::vector<int> strict_jumps() const;

	friend bool operator==(IncreasingFiltration const &a, IncreasingFiltration const &b)
	{
		if (a.dim_ != b.dim_)
			return false;
		int const lo = std::min(a.lowest(), b.lowest()) - 1;
		int const hi = std::max(a.highest(), b.highest());
		for (int k = lo; k <= hi; ++k)
			if (!(a.at(k) == b.at(k)))
				return false;
		return true;
	}

private:
	std::size_t dim_ = 0;
	std::map<int, linalg::Subspace<T>> jumps_;
};

using RationalFiltration = IncreasingFiltration<Rational>;
using RationalMatrix = linalg::Mat<Rational>;

/// Monodromy filtration of a nilpotent N centered at `center`:
///   M_{center+k} = sum_{j >= max(0,k)} ker N^{j+1} cap im N^{j-k}.
RationalFiltration monodromy_filtration(RationalMatrix const &n, int center);

/// Relative monodromy filtration M(N, W), or nullopt if it does not exist.
/// Throws DomainError if N is not nilpotent or does not preserve W.
std::optional<RationalFiltration> relative_monodromy_filtration(RationalMatrix const &n,
                                                                RationalFiltration const &w);

/// Checks N M_k in M_{k-2} and the isomorphisms
/// N^k : gr^M_{w+k} gr^W_w -> gr^M_{w-k} gr^W_w directly.
bool satisfies_relative_monodromy(RationalMatrix const &n, RationalFiltration const &w,
                                  RationalFiltration const &m);

// ---------------------------------------------------------------------------
// The rank-3 example

/// Static data of the rank-3 lattice H_0 = Z e1 + Z e2 + Z e3 with
/// W_{-4} = Q e1, W_{-2} = Q e1 + Q e2, W_0 = H_0, unit polarizations on
/// the graded pieces and h^{0,0} = h^{-1,-1} = h^{-2,-2} = 1.
struct LambdaData {
	static constexpr int rank = 3;
	/// Weight of e1, e2, e3.
	static constexpr std::array<int, 3> weights{-4, -2, 0};
	/// Hodge type (p, p) of e1, e2, e3 for the base point F(0, 0, 0).
	static constexpr std::array<int, 3> hodge_p{-2, -1, 0};

	static RationalFiltration weight_filtration();
	static std::map<std::pair<int, int>, int> hodge_numbers();
	/// <e_j, e_j> on gr^W_{weight(e_j)}.
	static Rational polarization(int basis_index) { return basis_index >= 0 && basis_index < 3 ? 1 : 0; }
};

/// Decreasing flag F^0 in F^{-1} in F^{-2} = C^3 (F^1 = 0) in the basis
/// e1, e2, e3.  Entries are exact rationals or complex doubles.
template <class T> struct HodgeFiltration {
	linalg::Vec<T> f0;               // spans F^0
	std::array<linalg::Vec<T>, 2> f1; // spans F^{-1}

	linalg::Subspace<T> step(int p) const;
};

/// F(alpha, beta, lambda): F^0 = <e3 + alpha e2 + lambda e1>,
/// F^{-1} = F^0 + <e2 + beta e1>.
template <class T> HodgeFiltration<T> hodge_filtration_from(T const &alpha, T const &beta, T const &lambda);

/// Recovers (alpha, beta, lambda) from any spanning vectors of the flag.
template <class T> Heisenberg<T> coordinates_of(HodgeFiltration<T> const &f);

/// Rational N with N e3 = a e2 + c e1, N e2 = b e1, N e1 = 0.
struct NilpotentEndo {
	Rational a, b, c;
	RationalMatrix matrix() const;
	bool is_zero() const { return alblab::is_zero(a) && alblab::is_zero(b) && alblab::is_zero(c); }
};

/// N F^p in F^{p-1} for all p.
template <class T> bool griffiths_transversal(NilpotentEndo const &n, HodgeFiltration<T> const &f);

template <class T> struct OrbitReport {
	bool generates = false;
	T criterion_residual{}; // c - (a beta - b alpha)
	bool transversal = false;
	bool admissible = false;   // M(N, W) exists
	bool positivity = true;    // D = G_{u,C} here, so exp(zN)F lies in D for all z
	bool agrees_with_transversality = false;
	std::string reason;
};

/// Decides whether (N, F(alpha, beta, lambda)) generates a nilpotent orbit
/// via c = a beta - b alpha (exact for rationals, tolerance 1e-12 for
/// doubles) and cross-checks against griffiths_transversal.
template <class T> OrbitReport<T> generates_nilpotent_orbit(NilpotentEndo const &n, HodgeFiltration<T> const &f);

/// Canonical representative with real parts of alpha, beta, lambda in [0, 1)
/// and the integer matrix g with reduced = g * input.
struct ReducedPoint {
	Heisenberg<Complex> point;
	IntHeisenberg matrix;
};
ReducedPoint reduce_mod_integral(Heisenberg<Complex> const &x);

/// Point (q, beta, lambda) of the chart Y; beta = 0 whenever q = 0.
struct BoundaryChartPoint {
	Complex q, beta, lambda;
};

struct InteriorClass {
	ReducedPoint reduced; // class of F(alpha, beta, lambda), q = exp(2 pi i alpha)
};
struct OrbitClass {
	NilpotentEndo cone_generator; // N = (1, 0, 0)
	Complex lambda;               // orbit through F(0, 0, lambda)
};
using ChartClass = std::variant<InteriorClass, OrbitClass>;

/// Image of a chart point: an interior class for q != 0, the
/// sigma-nilpotent orbit through F(0, 0, lambda) for q = 0.
/// `branch` picks alpha = log(q)/(2 pi i) + branch.  Throws DomainError when
/// q = 0 and beta != 0.
ChartClass boundary_chart_point(BoundaryChartPoint const &y, int branch = 0);

} // namespace alblab
