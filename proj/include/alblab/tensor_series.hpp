#pragma once

#include "alblab/errors.hpp"
#include "alblab/word.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace alblab {

/// Element of the tensor algebra on e0, e1 truncated above degree `level`.
/// Coefficients are stored densely in shortlex word order, so index 0 is
/// the constant term.  Multiplication is concatenation of words.
template <class T> class TensorSeries {
public:
	TensorSeries() : TensorSeries(0) {}
	explicit TensorSeries(int level) : level_(level), coeffs_(series_size(level), T(0))
	{
		if (level < 0)
			throw DomainError("truncation level must be non-negative");
	}

	static TensorSeries identity(int level)
	{
		TensorSeries s(level);
		s.coeffs_[0] = T(1);
		return s;
	}
	static TensorSeries letter(int level, int a, T const &scale = T(1))
	{
		TensorSeries s(level);
		if (level >= 1)
			s.coeffs_[1 + a] = scale;
		return s;
	}

	int level() const { return level_; }
	std::size_t size() const { return coeffs_.size(); }

	T const &operator[](std::size_t i) const { return coeffs_[i]; }
	T &operator[](std::size_t i) { return coeffs_[i]; }
	T const &operator[](Word const &w) const { return coeffs_.at(w.index()); }
	T &operator[](Word const &w) { return coeffs_.at(w.index()); }

	std::span<T const> coefficients() const { return coeffs_; }

	TensorSeries &operator+=(TensorSeries const &o)
	{
		check_level(o);
		for (std::size_t i = 0; i < coeffs_.size(); ++i)
			coeffs_[i] += o.coeffs_[i];
		return *this;
	}
	TensorSeries &operator-=(TensorSeries const &o)
	{
		check_level(o);
		for (std::size_t i = 0; i < coeffs_.size(); ++i)
			coeffs_[i] -= o.coeffs_[i];
		return *this;
	}
	TensorSeries &operator*=(T const &s)
	{
		for (auto &c : coeffs_)
			c *= s;
		return *this;
	}
	friend TensorSeries operator+(TensorSeries a, TensorSeries const &b) { return a += b; }
	friend TensorSeries operator-(TensorSeries a, TensorSeries const &b) { return a -= b; }
	friend TensorSeries operator*(TensorSeries a, T const &s) { return a *= s; }
	friend TensorSeries operator*(T const &s, TensorSeries a) { return a *= s; }

	/// Concatenation product, truncated at the common level.
	friend TensorSeries operator*(TensorSeries const &a, TensorSeries const &b)
	{
		a.check_level(b);
		int const r = a.level_;
		TensorSeries out(r);
		for (int la = 0; la <= r; ++la) {
			std::size_t const na = std::size_t{1} << la;
			for (std::size_t va = 0; va < na; ++va) {
				T const &x = a.coeffs_[level_offset(la) + va];
				if (x == T(0))
					continue;
				for (int lb = 0; la + lb <= r; ++lb) {
					std::size_t const nb = std::size_t{1} << lb;
					std::size_t const base = level_offset(la + lb) + (va << lb);
					std::size_t const boff = level_offset(lb);
					for (std::size_t vb = 0; vb < nb; ++vb)
						out.coeffs_[base + vb] += x * b.coeffs_[boff + vb];
				}
			}
		}
		return out;
	}

	friend bool operator==(TensorSeries const &a, TensorSeries const &b)
	{
		return a.level_ == b.level_ && a.coeffs_ == b.coeffs_;
	}

	/// Same coefficients, truncated (or zero-extended) to another level.
	TensorSeries at_level(int level) const
	{
		TensorSeries out(level);
		for (std::size_t i = 0; i < std::min(out.size(), size()); ++i)
			out.coeffs_[i] = coeffs_[i];
		return out;
	}

private:
	void check_level(TensorSeries const &o) const
	{
		if (o.level_ != level_)
			throw DomainError("truncation levels differ");
	}

	int level_;
	std::vector<T> coeffs_;
};

/// Sum_{k<=r} h^k / k!  for h without constant term.
template <class T> TensorSeries<T> exp_series(TensorSeries<T> const &h)
{
	if (!(h[0] == T(0)))
		throw DomainError("exp: constant term must vanish");
	auto result = TensorSeries<T>::identity(h.level());
	auto power = TensorSeries<T>::identity(h.level());
	for (int k = 1; k <= h.level(); ++k) {
		power = power * h;
		power *= T(1) / T(k);
		result += power;
	}
	return result;
}

/// Sum_{k<=r} (-1)^{k+1} (g-1)^k / k  for g with constant term 1.
template <class T> TensorSeries<T> log_series(TensorSeries<T> const &g)
{
	if (!(g[0] == T(1)))
		throw DomainError("log: constant term must be 1");
	auto x = g;
	x[0] = T(0);
	TensorSeries<T> result(g.level());
	auto power = TensorSeries<T>::identity(g.level());
	for (int k = 1; k <= g.level(); ++k) {
		power = power * x;
		auto term = power;
		term *= T(k % 2 == 1 ? 1 : -1) / T(k);
		result += term;
	}
	return result;
}

/// Multiplicative inverse of a series with constant term 1.
template <class T> TensorSeries<T> inverse_series(TensorSeries<T> const &g)
{
	if (!(g[0] == T(1)))
		throw DomainError("inverse: constant term must be 1");
	auto x = g;
	x[0] = T(0);
	auto result = TensorSeries<T>::identity(g.level());
	auto power = TensorSeries<T>::identity(g.level());
	for (int k = 1; k <= g.level(); ++k) {
		power = power * x;
		auto term = power;
		if (k % 2 == 1)
			term *= T(-1);
		result += term;
	}
	return result;
}

} // namespace alblab
