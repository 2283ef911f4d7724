#pragma once

// Independent reference computations used by the self-test and the unit
// tests.  Nothing here shares code with the routines it checks beyond the
// linear-algebra primitives.

#include "alblab/heisenberg.hpp"
#include "alblab/hodge.hpp"
#include "alblab/path.hpp"

#include <optional>
#include <random>
#include <vector>

namespace alblab::oracle {

/// Li_2(x) = sum x^n / n^2 for |x| <= 0.6 (partial sums until the terms
/// drop below 1e-18).
Complex dilog_series(Complex x);

/// -log(1 - x) = sum x^n / n.
Complex log1m_series(Complex x);

/// True when p = g q for an integer Heisenberg matrix g, up to `tol`.
bool same_class(Heisenberg<Complex> const &p, Heisenberg<Complex> const &q, double tol);

/// Direct check of the defining conditions of M(N, W): N M_k in M_{k-2} and
/// N^k : gr^M_{w+k} gr^W_w -> gr^M_{w-k} gr^W_w bijective for all w, k >= 0.
bool rmf_conditions_hold(RationalMatrix const &n, RationalFiltration const &w, RationalFiltration const &m);

struct BruteForceRmf {
	std::vector<RationalFiltration> solutions; // all hits among candidate subspaces
	long nodes = 0;                             // search nodes visited
};

/// Exhaustive search over filtrations whose steps are spanned by vectors
/// with entries in {-1, 0, 1}, jumping inside [min W - n, max W + n].
/// Intended for n <= 4.
BruteForceRmf brute_force_rmf(RationalMatrix const &n, RationalFiltration const &w);

/// True if every step of m is spanned by {-1, 0, 1}-vectors.
bool within_candidate_lattice(RationalFiltration const &m);

struct RmfInstance {
	RationalMatrix n;
	RationalFiltration w;
	std::vector<int> weights; // weight of each basis vector
};

/// Random W given by nondecreasing weights on the basis vectors and a random
/// strictly upper triangular N with entries in {-1, 0, 1}.
RmfInstance random_rmf_instance(std::mt19937_64 &rng, int dim);

/// W_k = span of the basis vectors of weight <= k.
RationalFiltration filtration_from_weights(std::vector<int> const &weights);

/// Random polyline with `waypoints` vertices inside [-1.5, 2.5] x [-1.5, 1.5]
/// whose segments keep at least `clearance` from 0 and 1.
Path random_path(std::mt19937_64 &rng, int waypoints, double clearance = 0.15);

/// Random reduced group word in gamma0, gamma1 of length 1..max_len.
GroupWord random_loop_word(std::mt19937_64 &rng, int max_len);

} // namespace alblab::oracle
