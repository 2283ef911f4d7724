#include "alblab/albanese.hpp"

#include "alblab/errors.hpp"

#include <array>
#include <numbers>

namespace alblab {

namespace {

Complex const two_pi_i{0.0, 2.0 * std::numbers::pi};

void check_point(Complex x)
{
	if (std::abs(x) < 1e-300 || std::abs(x - 1.0) < 1e-300)
		throw DomainError("x must avoid the punctures 0 and 1");
	if (!std::isfinite(x.real()) || !std::isfinite(x.imag()))
		throw DomainError("x must be finite");
}

} // namespace

AlbanesePoint albanese_point(Complex x, GroupWord const &loop_prefix, QuadratureConfig const &cfg)
{
	check_point(x);
	auto const sig = regularized_signature(x, 2, cfg, loop_prefix);
	AlbanesePoint p;
	p.x = x;
	p.homotopy_class = loop_prefix;
	p.raw = period_matrix(sig.series);
	p.reduced = reduce_mod_integral(p.raw);
	p.abs_err_est = sig.abs_err_est;
	return p;
}

AlbanesePoint albanese_point_alt(Complex x, GroupWord const &loop_prefix, QuadratureConfig const &cfg)
{
	auto p = albanese_point(x, loop_prefix, cfg);
	// [[1, -alpha, lambda], [0, 1, -beta], [0, 0, 1]]^-1
	Heisenberg<Complex> const m{-p.raw.b, -p.raw.a, p.raw.c};
	p.raw = m.inverse();
	p.reduced = reduce_mod_integral(p.raw);
	return p;
}

BoundaryChartPoint extended_albanese(Complex x, QuadratureConfig const &cfg)
{
	if (!(std::abs(x) < extended_albanese_radius))
		throw DomainError("extended_albanese needs |x| < 1/2");
	if (x == Complex(0.0))
		return {0.0, 0.0, 0.0};
	auto const p = period_matrix(regularized_signature(x, 2, cfg).series);
	return {x, p.b, p.c};
}

MonodromyAction monodromy_action(GroupWord const &word, QuadratureConfig const &cfg, Complex base_x)
{
	if (word.empty())
		return {IntHeisenberg::identity(), 0.0};
	auto const base = regularized_signature(base_x, 2, cfg).series;
	auto const loop = signature(Path::loop_word(word), 2, cfg);
	auto const before = period_matrix(base);
	auto const after = period_matrix(compose_signatures(loop, base));
	auto const r = round_to_integers(after * before.inverse());
	if (r.max_deviation > 1e-3)
		throw ConvergenceError("continued period matrix is not an integral translate");
	return {r.matrix, r.max_deviation};
}

// ---------------------------------------------------------------------------

RationalMatrix LieActionTable::bracket() const
{
	auto const a = linalg::multiply(n1, n0);
	auto const b = linalg::multiply(n0, n1);
	RationalMatrix out = a;
	for (std::size_t i = 0; i < 3; ++i)
		for (std::size_t j = 0; j < 3; ++j)
			out[i][j] -= b[i][j];
	return out;
}

namespace {

RationalMatrix zero3() { return RationalMatrix(3, linalg::Vec<Rational>(3, Rational(0))); }

} // namespace

LieActionTable LieActionTable::e23()
{
	LieActionTable t{"E23", zero3(), zero3()};
	t.n0[1][2] = 1; // N0 e3 = e2
	t.n1[0][1] = 1; // N1 e2 = e1
	return t;
}

LieActionTable LieActionTable::e24()
{
	LieActionTable t{"E24", zero3(), zero3()};
	t.n0[0][1] = 1; // N0 e2 = e1
	t.n1[1][2] = 1; // N1 e3 = e2
	return t;
}

LieActionTable LieActionTable::perturbed()
{
	auto t = e23();
	t.name = "E23-perturbed";
	t.n0[0][2] = 1; // N0 e3 = e1 + e2
	return t;
}

MhsMorphismReport lie_action_is_mhs_morphism(LieActionTable const &table)
{
	MhsMorphismReport report;
	report.table = table.name;
	auto const w = LambdaData::weight_filtration();
	auto const f = hodge_filtration_from(Rational(0), Rational(0), Rational(0));

	struct Element {
		std::string name;
		RationalMatrix m;
		int weight, p;
	};
	std::array<Element, 3> const elements{{
	    {"N0", table.n0, -2, -1},
	    {"N1", table.n1, -2, -1},
	    {"[N1,N0]", table.bracket(), -4, -2},
	}};
	char const *const names[] = {"e1", "e2", "e3"};
	auto const basis = linalg::identity<Rational>(3);
	for (auto const &el : elements) {
		for (std::size_t j = 0; j < 3; ++j) {
			auto const image = linalg::apply(el.m, basis[j]);
			MhsCheck c{el.name, names[j]};
			c.weight_ok = w.at(el.weight + LambdaData::weights[j]).contains(image);
			c.hodge_ok = f.step(el.p + LambdaData::hodge_p[j]).contains(image);
			report.weight_ok = report.weight_ok && c.weight_ok;
			report.hodge_ok = report.hodge_ok && c.hodge_ok;
			if (!c.weight_ok || !c.hodge_ok)
				report.failures.push_back(c);
		}
	}
	// Lie(G) is two-step nilpotent at r = 2: brackets with [N1, N0] act as 0
	auto const br = table.bracket();
	for (auto const &n : {table.n0, table.n1}) {
		auto const x = linalg::multiply(n, br), y = linalg::multiply(br, n);
		for (std::size_t i = 0; i < 3; ++i)
			for (std::size_t j = 0; j < 3; ++j)
				if (x[i][j] != y[i][j])
					report.nilpotent_class_ok = false;
	}
	return report;
}

// ---------------------------------------------------------------------------

DifferentialResidual differential_residual(Complex x, Complex direction, double h, QuadratureConfig const &cfg)
{
	check_point(x);
	if (std::abs(direction) == 0.0 || !(h > 0.0))
		throw DomainError("need a nonzero direction and a positive step");
	Complex const d = direction / std::abs(direction);
	auto const base = regularized_signature(x, 2, cfg).series;
	auto continued = [&](double t) {
		auto const step = signature(Path::polyline({x, x + t * d}), 2, cfg);
		return period_matrix(compose_signatures(base, step));
	};
	auto const p0 = period_matrix(base);
	auto const pp = continued(h), pm = continued(-h);
	Complex const da = (pp.a - pm.a) / (2.0 * h);
	Complex const db = (pp.b - pm.b) / (2.0 * h);
	Complex const dl = (pp.c - pm.c) / (2.0 * h);

	DifferentialResidual r;
	r.x = x;
	r.direction = d;
	r.d_alpha = std::abs(da - d / (two_pi_i * x));
	r.d_beta = std::abs(db - d / (two_pi_i * (1.0 - x)));
	r.d_lambda = std::abs(dl - p0.b * da);
	r.d_lambda_swapped = std::abs(dl - p0.a * db);
	return r;
}

} // namespace alblab
