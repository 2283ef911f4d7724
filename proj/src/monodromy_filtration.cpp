#include "alblab/errors.hpp"
#include "alblab/hodge.hpp"

namespace alblab {

using linalg::Mat;
using linalg::Subspace;
using linalg::Vec;

namespace {

using Space = Subspace<Rational>;
using Steps = std::map<int, Space>;

// Monodromy filtration of the map induced by n on top/bottom, centered at
// `center`, as subspaces of the ambient space that contain `bottom`.
Steps quotient_monodromy(RationalMatrix const &n, Space const &top, Space const &bottom, int center)
{
	int const d = static_cast<int>(top.dim() - bottom.dim());
	std::vector<Space> ker(static_cast<std::size_t>(2 * d + 2)), im(static_cast<std::size_t>(2 * d + 2));
	auto np = linalg::identity<Rational>(top.ambient());
	for (int j = 0; j <= 2 * d + 1; ++j) {
		ker[static_cast<std::size_t>(j)] = intersect(bottom.preimage(np), top);
		im[static_cast<std::size_t>(j)] = top.image(np) + bottom;
		np = linalg::multiply(n, np);
	}
	Steps out;
	for (int k = -d - 1; k <= d; ++k) {
		Space s = bottom;
		for (int j = std::max(0, k); j <= d; ++j)
			s = s + intersect(ker[static_cast<std::size_t>(j + 1)], im[static_cast<std::size_t>(j - k)]);
		out[center + k] = s;
	}
	return out;
}

Space step_at(Steps const &s, int k, Space const &below)
{
	auto it = s.upper_bound(k);
	if (it == s.begin())
		return below;
	return std::prev(it)->second;
}

RationalFiltration to_filtration(std::size_t dim, Steps const &steps)
{
	std::map<int, Space> jumps;
	std::size_t prev = 0;
	for (auto const &[k, s] : steps) {
		if (s.dim() > prev)
			jumps.emplace(k, s);
		prev = s.dim();
	}
	if (jumps.empty())
		jumps.emplace(0, Space::whole(dim));
	return RationalFiltration(dim, std::move(jumps));
}

// Vectors of `big` completing a basis of `small` (small inside big).
Mat<Rational> complement(Space const &big, Space const &small)
{
	Mat<Rational> out;
	Space acc = small;
	for (auto const &v : big.basis()) {
		if (acc.contains(v))
			continue;
		out.push_back(v);
		acc = acc + Space(big.ambient(), {v});
	}
	return out;
}

void check_inputs(RationalMatrix const &n, RationalFiltration const &w)
{
	std::size_t const dim = w.dim();
	if (n.size() != dim)
		throw DomainError("N has the wrong size for W");
	for (auto const &row : n)
		if (row.size() != dim)
			throw DomainError("N is not square");
	if (!linalg::is_zero_vec([&] {
		    Vec<Rational> flat;
		    for (auto const &row : linalg::power(n, static_cast<int>(dim)))
			    flat.insert(flat.end(), row.begin(), row.end());
		    return flat;
	    }()))
		throw DomainError("N is not nilpotent");
	for (auto const &[k, s] : w.jumps())
		if (!s.contains(s.image(n)))
			throw DomainError("N does not preserve W");
}

} // namespace

RationalFiltration monodromy_filtration(RationalMatrix const &n, int center)
{
	std::size_t const dim = n.size();
	auto steps = quotient_monodromy(n, Space::whole(dim), Space(dim), center);
	return to_filtration(dim, steps);
}

std::optional<RationalFiltration> relative_monodromy_filtration(RationalMatrix const &n,
                                                                RationalFiltration const &w)
{
	check_inputs(n, w);
	std::size_t const dim = w.dim();
	auto const weights = w.strict_jumps();

	int const lo = w.lowest() - static_cast<int>(2 * dim) - 2;
	int const hi = w.highest() + static_cast<int>(2 * dim) + 2;
	Steps m; // M' on the part of W handled so far
	for (int k = lo; k <= hi; ++k)
		m.emplace(k, Space(dim));
	Space lower(dim); // W_{l-1}
	for (int l : weights) {
		Space const top = w.at(l);
		auto const mq = quotient_monodromy(n, top, lower, l);
		int const d = static_cast<int>(top.dim() - lower.dim());

		Steps next = m;
		std::map<int, Mat<Rational>> added; // new vectors by M-degree
		for (int k = 0; k <= d; ++k) {
			auto const q_at = [&](int j) { return step_at(mq, j, lower); };
			Space kerk = intersect(lower.preimage(linalg::power(n, k + 1)), top);
			Space target = intersect(kerk, q_at(l + k));
			Space noise = q_at(l + k - 1) + q_at(l + k + 2).image(n) + lower;
			auto const prims = complement(target, intersect(target, noise));
			if (prims.empty())
				continue;
			auto const nk = linalg::power(n, k + 1);
			Space const dest = step_at(m, l - k - 2, Space(dim));
			for (auto const &q : prims) {
				// u in W_{l-1} with N^{k+1}(q + u) in M'_{l-k-2}
				auto const &ub = lower.basis();
				auto const &db = dest.basis();
				Mat<Rational> sys(dim, Vec<Rational>(ub.size() + db.size(), Rational(0)));
				auto const nu = [&] {
					Mat<Rational> cols;
					for (auto const &b : ub)
						cols.push_back(linalg::apply(nk, b));
					return cols;
				}();
				for (std::size_t i = 0; i < dim; ++i) {
					for (std::size_t j = 0; j < ub.size(); ++j)
						sys[i][j] = nu[j][i];
					for (std::size_t j = 0; j < db.size(); ++j)
						sys[i][ub.size() + j] = -db[j][i];
				}
				auto rhs = linalg::apply(nk, q);
				for (auto &x : rhs)
					x = -x;
				Vec<Rational> v = q;
				if (ub.size() + db.size() == 0) {
					if (!linalg::is_zero_vec(rhs))
						return std::nullopt;
				} else {
					auto const sol = linalg::solve(sys, rhs, ub.size() + db.size());
					if (!sol)
						return std::nullopt;
					for (std::size_t j = 0; j < ub.size(); ++j)
						for (std::size_t i = 0; i < dim; ++i)
							v[i] += (*sol)[j] * ub[j][i];
				}
				Vec<Rational> nv = v;
				for (int j = 0; j <= k; ++j) {
					added[l + k - 2 * j].push_back(nv);
					nv = linalg::apply(n, nv);
				}
			}
		}
		Mat<Rational> acc;
		for (auto &[idx, s] : next) {
			for (auto it = added.begin(); it != added.end() && it->first <= idx;) {
				acc.insert(acc.end(), it->second.begin(), it->second.end());
				it = added.erase(it);
			}
			if (!acc.empty()) {
				Mat<Rational> span = s.basis();
				span.insert(span.end(), acc.begin(), acc.end());
				s = Space(dim, std::move(span));
			}
		}
		m = std::move(next);
		lower = top;
	}
	auto result = to_filtration(dim, m);
	if (!satisfies_relative_monodromy(n, w, result))
		return std::nullopt;
	return result;
}

bool satisfies_relative_monodromy(RationalMatrix const &n, RationalFiltration const &w, RationalFiltration const &m)
{
	check_inputs(n, w);
	std::size_t const dim = w.dim();
	if (m.dim() != dim)
		return false;
	// both filtrations are constant outside these bounds
	int const lo = std::min(m.lowest(), w.lowest() - static_cast<int>(dim)) - 1;
	int const hi = std::max(m.highest(), w.highest() + static_cast<int>(dim)) + 2;
	for (int k = lo; k <= hi; ++k)
		if (!m.at(k - 2).contains(m.at(k).image(n)))
			return false;
	Space lower(dim);
	for (int l : w.strict_jumps()) {
		Space const top = w.at(l);
		auto const mq = quotient_monodromy(n, top, lower, l);
		for (int k = lo; k <= hi; ++k)
			if (!(intersect(m.at(k), top) + lower == step_at(mq, k, lower)))
				return false;
		lower = top;
	}
	return true;
}

} // namespace alblab
