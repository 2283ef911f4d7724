#pragma once

#include "alblab/path.hpp"
#include "alblab/tensor_series.hpp"

#include <complex>

namespace alblab::detail {

using Complex = std::complex<double>;

struct TransportOutcome {
	TensorSeries<Complex> series;
	double err = 0.0;
	int pieces = 0;
};

/// Signature of one segment between parameters u0 < u1 by adaptive
/// Chebyshev-Picard steps; the step is accepted when the 17- and 33-node
/// results agree to piece_tol.  Throws ConvergenceError once more than
/// max_pieces steps would be needed.
TransportOutcome transport_segment(Segment const &seg, int level, double piece_tol, int max_pieces);

} // namespace alblab::detail
