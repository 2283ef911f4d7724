#include "alblab/path_integrals.hpp"

#include "alblab/errors.hpp"
#include "transport.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <functional>
#include <numbers>

namespace alblab {

namespace {

constexpr Complex two_pi_i{0.0, 2.0 * std::numbers::pi};

Complex puncture_point(int p) { return {static_cast<double>(p), 0.0}; }

/// Letter whose form has a pole at the puncture: dx/x at 0, dx/(1-x) at 1.
int singular_letter(int puncture) { return puncture; }

double max_abs(TruncatedSeries const &s)
{
	double m = 0.0;
	for (auto const &c : s.coefficients())
		m = std::max(m, std::abs(c));
	return m;
}

SignatureResult signature_split_at(Path const &path, int level, QuadratureConfig const &cfg, double eps)
{
	SignatureResult res{TruncatedSeries::identity(level), 0.0, 0};
	if (path.is_constant())
		return res;
	auto segs = path.segments();
	TruncatedSeries head = TruncatedSeries::identity(level);
	TruncatedSeries tail = TruncatedSeries::identity(level);
	if (auto const &a = path.start_anchor()) {
		Complex const p = puncture_point(a->puncture);
		Complex const far = segs.front().end();
		double const s = std::min(eps, 0.5 * std::abs(far - p)) / std::abs(a->vector);
		head = tangential_series(*a, s, level);
		segs.front() = Segment::line(p + a->vector * s, far);
	}
	if (auto const &a = path.end_anchor()) {
		Complex const q = puncture_point(a->puncture);
		Complex const far = segs.back().start();
		double const s = std::min(eps, 0.5 * std::abs(far - q)) / std::abs(a->vector);
		tail = inverse_series(tangential_series(*a, s, level));
		segs.back() = Segment::line(far, q + a->vector * s);
	}
	double const piece_tol = cfg.abs_tol / 64.0;
	res.series = head;
	for (auto const &seg : segs) {
		auto t = detail::transport_segment(seg, level, piece_tol, cfg.max_subdivisions - res.pieces);
		res.series = res.series * t.series;
		res.abs_err_est += t.err;
		res.pieces += t.pieces;
	}
	res.series = res.series * tail;
	return res;
}

// Parametrization of the whole path by t in [0, #segments].
struct PathParam {
	std::vector<Segment> const &segs;

	Complex form(int letter, double t) const
	{
		auto i = static_cast<std::size_t>(std::floor(t));
		i = std::min(i, segs.size() - 1);
		double const u = t - static_cast<double>(i);
		Complex const z = segs[i].point(u);
		Complex const dz = segs[i].derivative(u);
		return letter == 0 ? dz / z : dz / (1.0 - z);
	}
};

} // namespace

void QuadratureConfig::validate() const
{
	if (!(abs_tol > 0.0))
		throw DomainError("abs_tol must be positive");
	if (max_subdivisions < 1)
		throw DomainError("max_subdivisions must be positive");
	if (regularization_epsilons.empty())
		throw DomainError("at least one regularization epsilon is required");
	for (std::size_t i = 0; i < regularization_epsilons.size(); ++i) {
		double const e = regularization_epsilons[i];
		if (!(e > 0.0) || e > 0.25)
			throw DomainError("regularization epsilons must lie in (0, 1/4]");
		if (i > 0 && !(e < regularization_epsilons[i - 1]))
			throw DomainError("regularization epsilons must be strictly decreasing");
	}
}

TruncatedSeries tangential_series(TangentialAnchor const &anchor, double s, int level)
{
	double const scale = std::abs(anchor.vector) * s;
	if (!(s > 0.0) || !(scale <= 0.5))
		throw DomainError("tangential expansion needs 0 < |v| s <= 1/2");
	Complex const v = anchor.vector;
	int const terms = std::max(4, static_cast<int>(std::ceil(std::log(1e-19) / std::log(scale))) + level + 2);
	int const logs = level + 1;
	auto at = [logs](int n, int k) { return static_cast<std::size_t>(n * logs + k); };

	// Pullback of each letter along z = p + v s: residue/s + sum_m g[m] s^m.
	std::array<double, 2> residue{0.0, 0.0};
	std::array<std::vector<Complex>, 2> regular{std::vector<Complex>(terms, 0.0), std::vector<Complex>(terms, 0.0)};
	if (anchor.puncture == 0) {
		residue[0] = 1.0;
		Complex vp = v;
		for (int m = 0; m < terms; ++m, vp *= v)
			regular[1][m] = vp;
	} else {
		residue[1] = -1.0;
		Complex vp = v;
		for (int m = 0; m < terms; ++m, vp *= -v)
			regular[0][m] = vp;
	}

	// Each coefficient is sum_{n,k} C[n][k] s^n log(s)^k; the constant term
	// of every nonempty word vanishes (the tangential normalization).
	std::size_t const total = series_size(level);
	std::size_t const parents = level == 0 ? 0 : series_size(level - 1);
	std::vector<std::vector<Complex>> poly(total);
	poly[0].assign(static_cast<std::size_t>(terms + 1) * logs, 0.0);
	poly[0][at(0, 0)] = 1.0;
	std::vector<Complex> integrand; // index n' + 1 for s^{n'}, n' >= -1
	for (std::size_t w = 0; w < parents; ++w) {
		auto const &c = poly[w];
		for (int a = 0; a < 2; ++a) {
			integrand.assign(static_cast<std::size_t>(terms + 1) * logs, 0.0);
			for (int n = 0; n <= terms; ++n)
				for (int k = 0; k < logs; ++k) {
					Complex const x = c[at(n, k)];
					if (x == 0.0)
						continue;
					if (residue[a] != 0.0)
						integrand[at(n, k)] += residue[a] * x; // s^{n-1}
					for (int m = 0; n + m + 1 <= terms; ++m)
						if (regular[a][m] != 0.0)
							integrand[at(n + m + 1, k)] += regular[a][m] * x;
				}
			auto &out = poly[2 * w + 1 + a];
			out.assign(static_cast<std::size_t>(terms + 1) * logs, 0.0);
			for (int k = 0; k < logs; ++k) {
				// s^{-1} log^k -> log^{k+1} / (k+1)
				if (integrand[at(0, k)] != 0.0 && k + 1 < logs)
					out[at(0, k + 1)] += integrand[at(0, k)] / static_cast<double>(k + 1);
			}
			for (int j = 1; j <= terms; ++j)
				for (int k = 0; k < logs; ++k) {
					Complex const x = integrand[at(j, k)]; // s^{j-1} log^k
					if (x == 0.0)
						continue;
					// s^j sum_i (-1)^i k!/(k-i)! log^{k-i} / j^{i+1}
					double factor = 1.0 / j;
					for (int i = 0; i <= k; ++i) {
						out[at(j, k - i)] += x * ((i % 2 == 0) ? factor : -factor);
						factor *= static_cast<double>(k - i) / j;
					}
				}
		}
	}
	double const ls = std::log(s);
	TruncatedSeries result(level);
	for (std::size_t w = 0; w < total; ++w) {
		Complex acc = 0.0;
		double sp = 1.0;
		for (int n = 0; n <= terms; ++n, sp *= s) {
			double lp = 1.0;
			for (int k = 0; k < logs; ++k, lp *= ls)
				acc += poly[w][at(n, k)] * (sp * lp);
		}
		result[w] = acc;
	}
	return result;
}

SignatureResult signature_with_error(Path const &path, int level, QuadratureConfig const &cfg)
{
	cfg.validate();
	if (level < 0)
		throw DomainError("level must be non-negative");
	if (!path.has_tangential_anchor() || path.is_constant())
		return signature_split_at(path, level, cfg, cfg.regularization_epsilons.front());

	auto first = signature_split_at(path, level, cfg, cfg.regularization_epsilons.front());
	double spread = 0.0;
	double stab_tol = 0.0;
	for (double eps : cfg.regularization_epsilons) {
		// transport errors are amplified by the size of the local expansion
		TangentialAnchor probe{0, {1.0, 0.0}};
		double const amplification = std::max(1.0, max_abs(tangential_series(probe, eps, level)));
		stab_tol = std::max(stab_tol, 10.0 * cfg.abs_tol * amplification);
		if (eps == cfg.regularization_epsilons.front())
			continue;
		auto other = signature_split_at(path, level, cfg, eps);
		for (std::size_t i = 0; i < other.series.size(); ++i)
			spread = std::max(spread, std::abs(other.series[i] - first.series[i]));
	}
	if (spread > stab_tol)
		throw ConvergenceError("regularization at the tangential anchor did not stabilize (spread " +
		                       std::to_string(spread) + ")");
	first.abs_err_est = std::max(first.abs_err_est, spread);
	return first;
}

TruncatedSeries compose_signatures(TruncatedSeries const &a, TruncatedSeries const &b)
{
	if (a.level() != b.level())
		throw DomainError("cannot compose signatures of different levels");
	return a * b;
}

IntegralResult iterated_integral(Word const &w, Path const &path, QuadratureConfig const &cfg)
{
	cfg.validate();
	if (w.empty())
		return {1.0, 0.0};
	if (path.is_constant())
		return {0.0, 0.0};
	// words singular at a tangential anchor get the regularized value
	bool const singular_start = path.start_anchor() && w[0] == singular_letter(path.start_anchor()->puncture);
	bool const singular_end = path.end_anchor() && w[w.size() - 1] == singular_letter(path.end_anchor()->puncture);

	if (singular_start || singular_end || static_cast<int>(w.size()) > max_direct_word_length) {
		auto sig = signature_with_error(path, static_cast<int>(w.size()), cfg);
		return {sig.series[w], sig.abs_err_est};
	}

	using boost::math::quadrature::gauss_kronrod;
	PathParam param{path.segments()};
	auto const nseg = static_cast<int>(path.segments().size());
	unsigned const depth = static_cast<unsigned>(std::max(4.0, std::log2(static_cast<double>(cfg.max_subdivisions))));
	double const rel_tol = 1e-13;
	double outer_err = 0.0;
	bool failed = false;

	// value(k, t): integral of the first k letters over {0 <= t_1 <= ... <= t_k <= t}
	std::function<Complex(int, double, double *)> value = [&](int k, double t, double *err_out) -> Complex {
		if (k == 0)
			return 1.0;
		int const letter = w[k - 1];
		Complex total = 0.0;
		double err_sum = 0.0;
		for (int i = 0; i < nseg && i < t; ++i) {
			double const hi = std::min<double>(i + 1, t);
			if (hi <= i)
				break;
			double err = 0.0, l1 = 0.0;
			auto f = [&](double s) { return value(k - 1, s, nullptr) * param.form(letter, s); };
			total += gauss_kronrod<double, 15>::integrate(f, static_cast<double>(i), hi, depth, rel_tol, &err, &l1);
			err_sum += err;
			if (err > std::max(cfg.abs_tol, rel_tol * l1) * 10.0)
				failed = true;
		}
		if (err_out)
			*err_out = err_sum;
		return total;
	};
	Complex const v = value(static_cast<int>(w.size()), static_cast<double>(nseg), &outer_err);
	if (failed)
		throw ConvergenceError("simplex quadrature did not converge within the subdivision limit");
	return {v, outer_err};
}

SignatureResult regularized_signature(Complex x, int level, QuadratureConfig const &cfg, GroupWord const &loop_prefix)
{
	Path const path = Path::loop_word(loop_prefix).then(Path::standard(x));
	return signature_with_error(path, level, cfg);
}

Heisenberg<Complex> period_matrix(TruncatedSeries const &s)
{
	if (s.level() < 2)
		throw DomainError("period matrix needs signature level >= 2");
	return {s[Word("0")] / two_pi_i, s[Word("1")] / two_pi_i, s[Word("10")] / (two_pi_i * two_pi_i)};
}

RoundedMonodromy round_to_integers(Heisenberg<Complex> const &g)
{
	RoundedMonodromy out;
	auto round_one = [&out](Complex z) {
		double const r = std::round(z.real());
		out.max_deviation = std::max(out.max_deviation, std::abs(z - Complex(r, 0.0)));
		return static_cast<std::int64_t>(r);
	};
	out.matrix = {round_one(g.a), round_one(g.b), round_one(g.c)};
	return out;
}

IntHeisenberg monodromy_matrix(Path const &loop, TruncatedSeries const &base_signature, QuadratureConfig const &cfg)
{
	if (base_signature.level() < 2)
		throw DomainError("monodromy needs level >= 2 signatures");
	auto const loop_sig = signature(loop, base_signature.level(), cfg);
	auto const before = period_matrix(base_signature);
	auto const after = period_matrix(compose_signatures(loop_sig, base_signature));
	auto const rounded = round_to_integers(after * before.inverse());
	if (rounded.max_deviation > 1e-3)
		throw ConvergenceError("monodromy entries are not integral (branch tracking failure)");
	return rounded.matrix;
}

} // namespace alblab
