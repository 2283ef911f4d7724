#pragma once

#include "alblab/rational.hpp"

#include <cmath>
#include <complex>
#include <optional>
#include <vector>

namespace alblab::linalg {

template <class T> using Vec = std::vector<T>;
template <class T> using Mat = std::vector<std::vector<T>>; // row-major

/// Zero test and pivot magnitude per scalar type.  Floating types use an
/// absolute tolerance on entries of order one.
template <class T> struct Field;

template <> struct Field<Rational> {
	static bool is_zero(Rational const &x) { return sgn(x) == 0; }
	static double magnitude(Rational const &x) { return std::abs(x.get_d()); }
};

template <> struct Field<std::complex<double>> {
	static inline double tolerance = 1e-12;
	static bool is_zero(std::complex<double> const &x) { return std::abs(x) <= tolerance; }
	static double magnitude(std::complex<double> const &x) { return std::abs(x); }
};

template <> struct Field<double> {
	static inline double tolerance = 1e-12;
	static bool is_zero(double x) { return std::abs(x) <= tolerance; }
	static double magnitude(double x) { return std::abs(x); }
};

template <class T> bool is_zero_vec(Vec<T> const &v)
{
	for (auto const &x : v)
		if (!Field<T>::is_zero(x))
			return false;
	return true;
}

/// Reduced row echelon form in place; returns pivot columns.
template <class T> std::vector<std::size_t> rref(Mat<T> &m)
{
	std::vector<std::size_t> pivots;
	if (m.empty())
		return pivots;
	std::size_t const rows = m.size(), cols = m[0].size();
	std::size_t r = 0;
	for (std::size_t c = 0; c < cols && r < rows; ++c) {
		std::size_t best = rows;
		double best_mag = 0.0;
		for (std::size_t i = r; i < rows; ++i) {
			if (Field<T>::is_zero(m[i][c]))
				continue;
			double const mag = Field<T>::magnitude(m[i][c]);
			if (best == rows || mag > best_mag) {
				best = i;
				best_mag = mag;
			}
		}
		if (best == rows)
			continue;
		std::swap(m[r], m[best]);
		T const inv = T(1) / m[r][c];
		for (auto &x : m[r])
			x *= inv;
		for (std::size_t i = 0; i < rows; ++i) {
			if (i == r || Field<T>::is_zero(m[i][c]))
				continue;
			T const f = m[i][c];
			for (std::size_t k = 0; k < cols; ++k)
				m[i][k] -= f * m[r][k];
		}
		pivots.push_back(c);
		++r;
	}
	// clear tiny residues in floating arithmetic
	for (auto &row : m)
		for (auto &x : row)
			if (Field<T>::is_zero(x))
				x = T(0);
	return pivots;
}

template <class T> std::size_t rank(Mat<T> m) { return rref(m).size(); }

/// Basis of {x : m x = 0} for an r x n matrix.
template <class T> Mat<T> nullspace(Mat<T> m, std::size_t cols)
{
	auto const pivots = rref(m);
	std::vector<bool> is_pivot(cols, false);
	for (auto p : pivots)
		is_pivot[p] = true;
	Mat<T> basis;
	for (std::size_t free = 0; free < cols; ++free) {
		if (is_pivot[free])
			continue;
		Vec<T> v(cols, T(0));
		v[free] = T(1);
		for (std::size_t i = 0; i < pivots.size(); ++i)
			v[pivots[i]] = -m[i][free];
		basis.push_back(std::move(v));
	}
	return basis;
}

/// Some x with a x = b, if one exists (a is rows x cols).
template <class T> std::optional<Vec<T>> solve(Mat<T> const &a, Vec<T> const &b, std::size_t cols)
{
	Mat<T> aug = a;
	for (std::size_t i = 0; i < aug.size(); ++i)
		aug[i].push_back(b[i]);
	auto const pivots = rref(aug);
	if (!pivots.empty() && pivots.back() == cols)
		return std::nullopt;
	Vec<T> x(cols, T(0));
	for (std::size_t i = 0; i < pivots.size(); ++i)
		x[pivots[i]] = aug[i][cols];
	return x;
}

template <class T> Vec<T> apply(Mat<T> const &m, Vec<T> const &v)
{
	Vec<T> out(m.size(), T(0));
	for (std::size_t i = 0; i < m.size(); ++i)
		for (std::size_t j = 0; j < v.size(); ++j)
			out[i] += m[i][j] * v[j];
	return out;
}

template <class T> Mat<T> multiply(Mat<T> const &a, Mat<T> const &b)
{
	std::size_t const n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
	Mat<T> out(n, Vec<T>(m, T(0)));
	for (std::size_t i = 0; i < n; ++i)
		for (std::size_t l = 0; l < k; ++l)
			for (std::size_t j = 0; j < m; ++j)
				out[i][j] += a[i][l] * b[l][j];
	return out;
}

template <class T> Mat<T> identity(std::size_t n)
{
	Mat<T> out(n, Vec<T>(n, T(0)));
	for (std::size_t i = 0; i < n; ++i)
		out[i][i] = T(1);
	return out;
}

template <class T> Mat<T> power(Mat<T> const &m, int k)
{
	Mat<T> out = identity<T>(m.size());
	for (int i = 0; i < k; ++i)
		out = multiply(out, m);
	return out;
}

/// Subspace of T^n stored as a basis (rows in reduced echelon form, so two
/// equal subspaces have identical bases).
template <class T> class Subspace {
public:
	explicit Subspace(std::size_t dim = 0) : dim_(dim) {}
	Subspace(std::size_t dim, Mat<T> spanning) : dim_(dim)
	{
		for (auto &v : spanning)
			if (v.size() != dim)
				throw std::invalid_argument("vector of wrong dimension");
		basis_ = std::move(spanning);
		canonicalize();
	}
	static Subspace whole(std::size_t dim) { return Subspace(dim, identity<T>(dim)); }

	std::size_t ambient() const { return dim_; }
	std::size_t dim() const { return basis_.size(); }
	Mat<T> const &basis() const { return basis_; }

	bool contains(Vec<T> const &v) const
	{
		if (is_zero_vec(v))
			return true;
		Mat<T> m = basis_;
		m.push_back(v);
		return rank(m) == basis_.size();
	}
	bool contains(Subspace const &o) const
	{
		if (o.basis_.empty())
			return true;
		if (o.dim() > dim())
			return false;
		Mat<T> m = basis_;
		m.insert(m.end(), o.basis_.begin(), o.basis_.end());
		return rank(m) == basis_.size();
	}

	friend Subspace operator+(Subspace const &a, Subspace const &b)
	{
		Mat<T> m = a.basis_;
		m.insert(m.end(), b.basis_.begin(), b.basis_.end());
		return Subspace(a.dim_, std::move(m));
	}

	friend Subspace intersect(Subspace const &a, Subspace const &b)
	{
		// x in a ∩ b  <=>  x = A^T s = B^T t
		std::size_t const ka = a.dim(), kb = b.dim();
		if (ka == 0 || kb == 0)
			return Subspace(a.dim_);
		Mat<T> sys(a.dim_, Vec<T>(ka + kb, T(0)));
		for (std::size_t i = 0; i < a.dim_; ++i) {
			for (std::size_t j = 0; j < ka; ++j)
				sys[i][j] = a.basis_[j][i];
			for (std::size_t j = 0; j < kb; ++j)
				sys[i][ka + j] = -b.basis_[j][i];
		}
		Mat<T> out;
		for (auto const &st : nullspace(sys, ka + kb)) {
			Vec<T> x(a.dim_, T(0));
			for (std::size_t j = 0; j < ka; ++j)
				for (std::size_t i = 0; i < a.dim_; ++i)
					x[i] += st[j] * a.basis_[j][i];
			out.push_back(std::move(x));
		}
		return Subspace(a.dim_, std::move(out));
	}

	/// Image under the linear map m (acting on column vectors).
	Subspace image(Mat<T> const &m) const
	{
		Mat<T> out;
		for (auto const &v : basis_)
			out.push_back(apply(m, v));
		return Subspace(m.size(), std::move(out));
	}

	/// {x : m x in this}.
	Subspace preimage(Mat<T> const &m) const
	{
		std::size_t const n = m.empty() ? 0 : m[0].size();
		// m x in span(B)  <=>  m x = B^T y
		std::size_t const k = dim();
		Mat<T> sys(dim_, Vec<T>(n + k, T(0)));
		for (std::size_t i = 0; i < dim_; ++i) {
			for (std::size_t j = 0; j < n; ++j)
				sys[i][j] = m[i][j];
			for (std::size_t j = 0; j < k; ++j)
				sys[i][n + j] = -basis_[j][i];
		}
		Mat<T> out;
		for (auto const &xy : nullspace(sys, n + k))
			out.emplace_back(xy.begin(), xy.begin() + static_cast<std::ptrdiff_t>(n));
		return Subspace(n, std::move(out));
	}

	friend bool operator==(Subspace const &a, Subspace const &b)
	{
		return a.dim_ == b.dim_ && a.dim() == b.dim() && a.contains(b);
	}

private:
	void canonicalize()
	{
		if (basis_.empty())
			return;
		auto const pivots = rref(basis_);
		basis_.resize(pivots.size());
	}

	std::size_t dim_;
	Mat<T> basis_;
};

template <class T> Subspace<T> kernel(Mat<T> const &m, std::size_t cols)
{
	return Subspace<T>(cols, nullspace(m, cols));
}

} // namespace alblab::linalg
