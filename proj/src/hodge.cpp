#include "alblab/hodge.hpp"

#include "alblab/errors.hpp"

#include <cmath>
#include <numbers>

namespace alblab {

using linalg::Mat;
using linalg::Subspace;
using linalg::Vec;

// ---------------------------------------------------------------------------
// IncreasingFiltration

template <class T>
IncreasingFiltration<T>::IncreasingFiltration(std::size_t dim, std::map<int, Subspace<T>> jumps)
    : dim_(dim), jumps_(std::move(jumps))
{
	if (jumps_.empty())
		throw DomainError("a filtration needs at least one step");
	Subspace<T> const *prev = nullptr;
	for (auto const &[k, s] : jumps_) {
		if (s.ambient() != dim_)
			throw DomainError("filtration step of wrong ambient dimension");
		if (prev && !s.contains(*prev))
			throw DomainError("filtration steps are not nested");
		prev = &s;
	}
	if (prev->dim() != dim_)
		throw DomainError("filtration is not exhaustive");
}

template <class T> Subspace<T> IncreasingFiltration<T>::at(int k) const
{
	auto it = jumps_.upper_bound(k);
	if (it == jumps_.begin())
		return Subspace<T>(dim_);
	return std::prev(it)->second;
}

template <class T> std::vector<int> IncreasingFiltration<T>::strict_jumps() const
{
	std::vector<int> out;
	std::size_t prev = 0;
	for (auto const &[k, s] : jumps_) {
		if (s.dim() > prev)
			out.push_back(k);
		prev = s.dim();
	}
	return out;
}

template class IncreasingFiltration<Rational>;

// ---------------------------------------------------------------------------
// LambdaData

RationalFiltration LambdaData::weight_filtration()
{
	auto e = linalg::identity<Rational>(3);
	std::map<int, Subspace<Rational>> jumps;
	jumps.emplace(-4, Subspace<Rational>(3, {e[0]}));
	jumps.emplace(-2, Subspace<Rational>(3, {e[0], e[1]}));
	jumps.emplace(0, Subspace<Rational>::whole(3));
	return RationalFiltration(3, std::move(jumps));
}

std::map<std::pair<int, int>, int> LambdaData::hodge_numbers()
{
	return {{{0, 0}, 1}, {{-1, -1}, 1}, {{-2, -2}, 1}};
}

// ---------------------------------------------------------------------------
// Hodge filtrations on C^3

template <class T> Subspace<T> HodgeFiltration<T>::step(int p) const
{
	if (p >= 1)
		return Subspace<T>(3);
	if (p == 0)
		return Subspace<T>(3, {f0});
	if (p == -1)
		return Subspace<T>(3, {f1[0], f1[1]});
	return Subspace<T>::whole(3);
}

template <class T> HodgeFiltration<T> hodge_filtration_from(T const &alpha, T const &beta, T const &lambda)
{
	HodgeFiltration<T> f;
	f.f0 = {lambda, alpha, T(1)};
	f.f1 = {f.f0, Vec<T>{beta, T(1), T(0)}};
	return f;
}

template <class T> Heisenberg<T> coordinates_of(HodgeFiltration<T> const &f)
{
	using F = linalg::Field<T>;
	if (F::is_zero(f.f0[2]))
		throw DomainError("F^0 is not in general position (no e3 component)");
	T const alpha = f.f0[1] / f.f0[2];
	T const lambda = f.f0[0] / f.f0[2];
	// the vector of F^{-1} with e3-coefficient 0 and e2-coefficient 1
	Mat<T> sys{{f.f1[0][2], f.f1[1][2]}, {f.f1[0][1], f.f1[1][1]}};
	auto mix = linalg::solve(sys, Vec<T>{T(0), T(1)}, 2);
	if (!mix)
		throw DomainError("F^{-1} is not in general position");
	T const beta = (*mix)[0] * f.f1[0][0] + (*mix)[1] * f.f1[1][0];
	return {alpha, beta, lambda};
}

RationalMatrix NilpotentEndo::matrix() const
{
	return {{0, b, c}, {0, 0, a}, {0, 0, 0}};
}

namespace {

template <class T> Mat<T> converted(RationalMatrix const &m);

template <> Mat<Rational> converted<Rational>(RationalMatrix const &m) { return m; }

template <> Mat<Complex> converted<Complex>(RationalMatrix const &m)
{
	Mat<Complex> out(m.size(), Vec<Complex>(m.empty() ? 0 : m[0].size()));
	for (std::size_t i = 0; i < m.size(); ++i)
		for (std::size_t j = 0; j < m[i].size(); ++j)
			out[i][j] = m[i][j].get_d();
	return out;
}

template <class T> T from_rational(Rational const &q);
template <> Rational from_rational<Rational>(Rational const &q) { return q; }
template <> Complex from_rational<Complex>(Rational const &q) { return q.get_d(); }

} // namespace

template <class T> bool griffiths_transversal(NilpotentEndo const &n, HodgeFiltration<T> const &f)
{
	auto const m = converted<T>(n.matrix());
	for (int p = -2; p <= 1; ++p)
		if (!f.step(p - 1).contains(f.step(p).image(m)))
			return false;
	return true;
}

template <class T> OrbitReport<T> generates_nilpotent_orbit(NilpotentEndo const &n, HodgeFiltration<T> const &f)
{
	OrbitReport<T> r;
	auto const x = coordinates_of(f);
	T const a = from_rational<T>(n.a), b = from_rational<T>(n.b), c = from_rational<T>(n.c);
	// x.a = alpha, x.b = beta
	r.criterion_residual = c - (a * x.b - b * x.a);
	r.generates = linalg::Field<T>::is_zero(r.criterion_residual);
	r.transversal = griffiths_transversal(n, f);
	r.admissible = relative_monodromy_filtration(n.matrix(), LambdaData::weight_filtration()).has_value();
	r.agrees_with_transversality = r.generates == r.transversal;
	if (n.is_zero())
		r.reason = "N = 0: the zero cone, every F is an orbit";
	else if (r.generates)
		r.reason = "c = a*beta - b*alpha holds";
	else
		r.reason = "c != a*beta - b*alpha: Griffiths transversality fails on F^0";
	return r;
}

template struct HodgeFiltration<Rational>;
template struct HodgeFiltration<Complex>;
template HodgeFiltration<Rational> hodge_filtration_from(Rational const &, Rational const &, Rational const &);
template HodgeFiltration<Complex> hodge_filtration_from(Complex const &, Complex const &, Complex const &);
template Heisenberg<Rational> coordinates_of(HodgeFiltration<Rational> const &);
template Heisenberg<Complex> coordinates_of(HodgeFiltration<Complex> const &);
template bool griffiths_transversal(NilpotentEndo const &, HodgeFiltration<Rational> const &);
template bool griffiths_transversal(NilpotentEndo const &, HodgeFiltration<Complex> const &);
template OrbitReport<Rational> generates_nilpotent_orbit(NilpotentEndo const &, HodgeFiltration<Rational> const &);
template OrbitReport<Complex> generates_nilpotent_orbit(NilpotentEndo const &, HodgeFiltration<Complex> const &);

// ---------------------------------------------------------------------------
// Fundamental domain and chart

ReducedPoint reduce_mod_integral(Heisenberg<Complex> const &x)
{
	auto const a = static_cast<std::int64_t>(-std::floor(x.a.real()));
	auto const b = static_cast<std::int64_t>(-std::floor(x.b.real()));
	Complex const lam = x.c + static_cast<double>(b) * x.a;
	auto const c = static_cast<std::int64_t>(-std::floor(lam.real()));
	IntHeisenberg const g{a, b, c};
	Heisenberg<Complex> const gc{static_cast<double>(a), static_cast<double>(b), static_cast<double>(c)};
	auto p = gc * x;
	// exact integer shifts can leave -0.0 or 1 - ulp artifacts; snap into [0, 1)
	auto snap = [](Complex z) {
		double re = z.real();
		if (re >= 1.0)
			re -= 1.0;
		if (re < 0.0 && re > -1e-300)
			re = 0.0;
		return Complex(re, z.imag());
	};
	return {{snap(p.a), snap(p.b), snap(p.c)}, g};
}

ChartClass boundary_chart_point(BoundaryChartPoint const &y, int branch)
{
	if (y.q == Complex(0.0)) {
		if (y.beta != Complex(0.0))
			throw DomainError("chart point with q = 0 must have beta = 0");
		return OrbitClass{NilpotentEndo{1, 0, 0}, y.lambda};
	}
	Complex const two_pi_i{0.0, 2.0 * std::numbers::pi};
	Complex const alpha = std::log(y.q) / two_pi_i + static_cast<double>(branch);
	// exp(alpha N) F(0, beta, lambda) = F(alpha, beta, lambda)
	Heisenberg<Complex> const f = Heisenberg<Complex>{alpha, 0.0, 0.0} * Heisenberg<Complex>{0.0, y.beta, y.lambda};
	return InteriorClass{reduce_mod_integral(f)};
}

} // namespace alblab
