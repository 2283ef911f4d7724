#include "transport.hpp"

#include "alblab/errors.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

namespace alblab::detail {

namespace {

/// Chebyshev-Lobatto nodes on [-1, 1] (increasing) with the spectral
/// integration matrix Q: (Q f)_i = integral from -1 to x_i of the
/// interpolant of f.
struct ChebyshevRule {
	int n;
	std::vector<double> nodes;
	std::vector<double> q; // row-major n x n

	explicit ChebyshevRule(int count) : n(count), nodes(count), q(count * count)
	{
		using real = long double;
		int const N = n - 1;
		real const pi = std::numbers::pi_v<long double>;
		std::vector<real> theta(n);
		for (int j = 0; j < n; ++j) {
			theta[j] = pi * (N - j) / N;
			nodes[j] = static_cast<double>(std::cos(theta[j]));
		}
		for (int col = 0; col < n; ++col) {
			// Chebyshev coefficients of the cardinal function for node col
			std::vector<real> coef(N + 2, 0.0L);
			for (int m = 0; m <= N; ++m) {
				real w = (col == 0 || col == N) ? 0.5L : 1.0L;
				coef[m] = 2.0L / N * w * std::cos(m * theta[col]);
			}
			coef[0] *= 0.5L;
			coef[N] *= 0.5L;
			// antiderivative coefficients
			std::vector<real> anti(N + 2, 0.0L);
			for (int m = 0; m <= N; ++m) {
				if (m == 0) {
					anti[1] += coef[0];
				} else if (m == 1) {
					anti[2] += coef[1] / 4.0L;
				} else {
					anti[m + 1] += coef[m] / (2.0L * (m + 1));
					anti[m - 1] -= coef[m] / (2.0L * (m - 1));
				}
			}
			real at_minus_one = 0.0L;
			for (int m = 0; m <= N + 1; ++m)
				at_minus_one += anti[m] * ((m % 2 == 0) ? 1.0L : -1.0L);
			for (int row = 0; row < n; ++row) {
				real v = -at_minus_one;
				for (int m = 0; m <= N + 1; ++m)
					v += anti[m] * std::cos(m * theta[row]);
				q[row * n + col] = static_cast<double>(v);
			}
		}
	}
};

ChebyshevRule const &coarse_rule()
{
	static ChebyshevRule const rule(17);
	return rule;
}

ChebyshevRule const &fine_rule()
{
	static ChebyshevRule const rule(33);
	return rule;
}

TensorSeries<Complex> piece_signature(Segment const &seg, double u0, double u1, int level,
                                      ChebyshevRule const &rule)
{
	int const n = rule.n;
	double const mid = 0.5 * (u0 + u1);
	double const half = 0.5 * (u1 - u0);
	std::array<std::vector<Complex>, 2> forms{std::vector<Complex>(n), std::vector<Complex>(n)};
	for (int j = 0; j < n; ++j) {
		double const u = mid + half * rule.nodes[j];
		Complex const z = seg.point(u);
		Complex const dz = seg.derivative(u) * half;
		forms[0][j] = dz / z;
		forms[1][j] = dz / (1.0 - z);
	}
	std::size_t const total = series_size(level);
	std::size_t const parents = level == 0 ? 0 : series_size(level - 1);
	std::vector<Complex> values(total * n);
	for (int j = 0; j < n; ++j)
		values[j] = 1.0;
	std::vector<Complex> integrand(n);
	for (std::size_t w = 0; w < parents; ++w) {
		Complex const *parent = &values[w * n];
		for (int a = 0; a < 2; ++a) {
			for (int j = 0; j < n; ++j)
				integrand[j] = parent[j] * forms[a][j];
			Complex *child = &values[(2 * w + 1 + a) * n];
			for (int i = 0; i < n; ++i) {
				Complex acc = 0.0;
				double const *row = &rule.q[i * n];
				for (int j = 0; j < n; ++j)
					acc += row[j] * integrand[j];
				child[i] = acc;
			}
		}
	}
	TensorSeries<Complex> out(level);
	for (std::size_t w = 0; w < total; ++w)
		out[w] = values[w * n + n - 1];
	return out;
}

double max_diff(TensorSeries<Complex> const &a, TensorSeries<Complex> const &b)
{
	double d = 0.0;
	for (std::size_t i = 0; i < a.size(); ++i)
		d = std::max(d, std::abs(a[i] - b[i]));
	return d;
}

} // namespace

TransportOutcome transport_segment(Segment const &seg, int level, double piece_tol, int max_pieces)
{
	TransportOutcome out{TensorSeries<Complex>::identity(level), 0.0, 0};
	int initial = 1;
	if (seg.kind() == Segment::Kind::arc)
		initial = std::max(1, static_cast<int>(std::ceil(std::abs(seg.theta1() - seg.theta0()) /
		                                                 (0.25 * std::numbers::pi))));
	// stack of pending intervals, leftmost on top
	std::vector<std::pair<double, double>> pending;
	for (int k = initial; k-- > 0;)
		pending.emplace_back(static_cast<double>(k) / initial, static_cast<double>(k + 1) / initial);
	while (!pending.empty()) {
		auto [u0, u1] = pending.back();
		pending.pop_back();
		auto coarse = piece_signature(seg, u0, u1, level, coarse_rule());
		auto fine = piece_signature(seg, u0, u1, level, fine_rule());
		double const err = max_diff(coarse, fine);
		double const um = 0.5 * (u0 + u1);
		bool const can_split = um > u0 && um < u1;
		if (err > piece_tol && can_split) {
			pending.emplace_back(um, u1);
			pending.emplace_back(u0, um);
			if (out.pieces + static_cast<int>(pending.size()) > max_pieces)
				throw ConvergenceError("transport did not converge within the subdivision limit");
			continue;
		}
		out.series = out.series * fine;
		out.err += err;
		++out.pieces;
	}
	return out;
}

} // namespace alblab::detail
