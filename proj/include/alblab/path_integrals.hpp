#pragma once

#include "alblab/heisenberg.hpp"
#include "alblab/json_io.hpp"
#include "alblab/path.hpp"
#include "alblab/tensor_series.hpp"
#include "alblab/word.hpp"

#include <vector>

namespace alblab {

struct QuadratureConfig {
	double abs_tol = 1e-10;
	int max_subdivisions = 20000;
	/// Split points (as distances from the puncture) at which the local
	/// expansion at a tangential anchor hands over to numerical transport.
	/// The results for all of them must agree.
	std::vector<double> regularization_epsilons{1e-3, 1e-4, 1e-5, 1e-6};

	/// Throws DomainError on non-positive tolerance, empty or non-decreasing
	/// epsilons, or epsilons above 0.25.
	void validate() const;
};

struct IntegralResult {
	Complex value;
	double abs_err_est = 0.0;
};

struct SignatureResult {
	TruncatedSeries series;
	double abs_err_est = 0.0;
	int pieces = 0;
};

/// Chen iterated integral of w along the path by nested adaptive
/// Gauss-Kronrod quadrature over the simplex, for words of length <= 2.
/// Longer words are read off the transport signature.  Tangential anchors
/// are accepted when the integral converges there (w does not begin, resp.
/// end, with the letter that is singular at the anchored puncture).
IntegralResult iterated_integral(Word const &w, Path const &path, QuadratureConfig const &cfg = {});

/// Longest word handled by direct simplex quadrature.
inline constexpr int max_direct_word_length = 2;

/// Truncated signature: solves S' = S (f0 e0 + f1 e1) along the path with
/// adaptive spectral steps.  Tangential anchors are regularized so that the
/// result is the signature from/to the tangential base point.
SignatureResult signature_with_error(Path const &path, int level, QuadratureConfig const &cfg = {});
inline TruncatedSeries signature(Path const &path, int level, QuadratureConfig const &cfg = {})
{
	return signature_with_error(path, level, cfg).series;
}

/// Concatenation product; the signature of a composite path.
TruncatedSeries compose_signatures(TruncatedSeries const &a, TruncatedSeries const &b);

/// Regularized local solution at a tangential base point: the signature of
/// the straight path from (puncture, vector) to puncture + vector * s.
/// Requires 0 < |vector| s <= 1/2.
TruncatedSeries tangential_series(TangentialAnchor const &anchor, double s, int level);

/// Signature from the tangential base point (0, v = 1) to x along
/// loop_prefix followed by Path::standard(x).
SignatureResult regularized_signature(Complex x, int level, QuadratureConfig const &cfg = {},
                                      GroupWord const &loop_prefix = {});

/// The unipotent period matrix of a signature in (alpha, beta, lambda)
/// coordinates: alpha = S(0)/(2 pi i), beta = S(1)/(2 pi i),
/// lambda = S(10)/(2 pi i)^2.  Needs level >= 2.
Heisenberg<Complex> period_matrix(TruncatedSeries const &s);

/// Integer matrix g with period_matrix(loop * base) = g * period_matrix(base).
/// Throws ConvergenceError when an entry is farther than 1e-3 from an integer.
IntHeisenberg monodromy_matrix(Path const &loop, TruncatedSeries const &base_signature,
                               QuadratureConfig const &cfg = {});

/// Nearest integer matrix and the largest distance of an entry from it.
struct RoundedMonodromy {
	IntHeisenberg matrix;
	double max_deviation = 0.0;
};
RoundedMonodromy round_to_integers(Heisenberg<Complex> const &g);

} // namespace alblab
