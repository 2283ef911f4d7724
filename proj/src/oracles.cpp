#include "alblab/oracles.hpp"

#include "alblab/errors.hpp"
#include "alblab/path_integrals.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <set>

namespace alblab::oracle {

using linalg::Mat;
using linalg::Vec;
using Space = linalg::Subspace<Rational>;

Complex dilog_series(Complex x)
{
	if (std::abs(x) > 0.6)
		throw DomainError("dilog_series needs |x| <= 0.6");
	Complex sum = 0.0, power = x;
	for (int n = 1; n < 400; ++n) {
		Complex const term = power / (double(n) * n);
		sum += term;
		if (std::abs(term) < 1e-18)
			break;
		power *= x;
	}
	return sum;
}

Complex log1m_series(Complex x)
{
	if (std::abs(x) > 0.6)
		throw DomainError("log1m_series needs |x| <= 0.6");
	Complex sum = 0.0, power = x;
	for (int n = 1; n < 400; ++n) {
		Complex const term = power / double(n);
		sum += term;
		if (std::abs(term) < 1e-18)
			break;
		power *= x;
	}
	return sum;
}

bool same_class(Heisenberg<Complex> const &p, Heisenberg<Complex> const &q, double tol)
{
	return round_to_integers(p * q.inverse()).max_deviation <= tol;
}

// ---------------------------------------------------------------------------

namespace {

Space graded_step(RationalFiltration const &m, RationalFiltration const &w, int k, int weight)
{
	return intersect(m.at(k), w.at(weight)) + w.at(weight - 1);
}

// Exact integer linear algebra for the brute-force search, kept apart from
// linalg.hpp on purpose.
using IVec = std::vector<long long>;

int int_rank(std::vector<IVec> const &rows)
{
	if (rows.empty())
		return 0;
	std::size_t const cols = rows[0].size();
	std::vector<std::vector<__int128>> m(rows.size(), std::vector<__int128>(cols));
	for (std::size_t i = 0; i < rows.size(); ++i)
		for (std::size_t j = 0; j < cols; ++j)
			m[i][j] = rows[i][j];
	// fraction-free (Bareiss) elimination
	std::size_t r = 0;
	__int128 prev = 1;
	for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
		std::size_t p = r;
		while (p < m.size() && m[p][c] == 0)
			++p;
		if (p == m.size())
			continue;
		std::swap(m[p], m[r]);
		for (std::size_t i = r + 1; i < m.size(); ++i) {
			for (std::size_t j = c + 1; j < cols; ++j)
				m[i][j] = (m[r][c] * m[i][j] - m[i][c] * m[r][j]) / prev;
			m[i][c] = 0;
		}
		prev = m[r][c];
		++r;
	}
	return static_cast<int>(r);
}

std::vector<IVec> concat(std::vector<IVec> a, std::vector<IVec> const &b)
{
	a.insert(a.end(), b.begin(), b.end());
	return a;
}

IVec int_apply(std::vector<IVec> const &m, IVec const &v)
{
	IVec out(m.size(), 0);
	for (std::size_t i = 0; i < m.size(); ++i)
		for (std::size_t j = 0; j < v.size(); ++j)
			out[i] += m[i][j] * v[j];
	return out;
}

using Bits = std::uint64_t;

// All subspaces spanned by {-1,0,1}-vectors, each recorded by the set of
// such lines it contains.
struct Lattice {
	std::vector<IVec> lines; // first nonzero entry positive
	struct Cand {
		Bits bits = 0;
		std::vector<IVec> basis;
	};
	std::vector<Cand> cands;
};

Lattice const &lattice(std::size_t dim)
{
	static std::mutex mu;
	static std::map<std::size_t, Lattice> cache;
	std::lock_guard lock(mu);
	if (auto it = cache.find(dim); it != cache.end())
		return it->second;
	if (dim > 4)
		throw DomainError("brute-force search is limited to dimension 4");

	Lattice lat;
	std::size_t total = 1;
	for (std::size_t i = 0; i < dim; ++i)
		total *= 3;
	for (std::size_t code = 1; code < total; ++code) {
		IVec v(dim);
		std::size_t c = code;
		for (std::size_t i = 0; i < dim; ++i, c /= 3)
			v[i] = static_cast<long long>(c % 3) - 1;
		if (*std::find_if(v.begin(), v.end(), [](long long x) { return x != 0; }) > 0)
			lat.lines.push_back(std::move(v));
	}
	std::set<Bits> seen{0};
	lat.cands.push_back({});
	for (std::size_t i = 0; i < lat.cands.size(); ++i) {
		for (std::size_t l = 0; l < lat.lines.size(); ++l) {
			if (lat.cands[i].bits >> l & 1)
				continue;
			auto basis = lat.cands[i].basis;
			basis.push_back(lat.lines[l]);
			Bits bits = 0;
			for (std::size_t t = 0; t < lat.lines.size(); ++t) {
				basis.push_back(lat.lines[t]);
				bool const in = int_rank(basis) == static_cast<int>(basis.size()) - 1;
				basis.pop_back();
				if (in)
					bits |= Bits{1} << t;
			}
			if (seen.insert(bits).second)
				lat.cands.push_back({bits, std::move(basis)});
		}
	}
	return cache.emplace(dim, std::move(lat)).first->second;
}

std::vector<IVec> int_basis(Space const &s)
{
	std::vector<IVec> rows;
	for (auto const &r : s.basis()) {
		mpz_class l = 1;
		for (auto const &x : r)
			l = lcm(l, mpz_class(x.get_den()));
		IVec v;
		for (auto const &x : r) {
			Rational const y = x * Rational(l);
			v.push_back(y.get_num().get_si());
		}
		rows.push_back(std::move(v));
	}
	return rows;
}

Vec<Rational> to_rational(IVec const &v)
{
	Vec<Rational> out;
	for (auto x : v)
		out.emplace_back(static_cast<long>(x));
	return out;
}

Space rational_span(std::size_t dim, std::vector<IVec> const &rows)
{
	Mat<Rational> span;
	for (auto const &r : rows)
		span.push_back(to_rational(r));
	return Space(dim, std::move(span));
}

} // namespace

bool rmf_conditions_hold(RationalMatrix const &n, RationalFiltration const &w, RationalFiltration const &m)
{
	int const d = static_cast<int>(w.dim());
	int const lo = std::min(m.lowest(), w.lowest()) - 2 * d - 2;
	int const hi = std::max(m.highest(), w.highest()) + 2 * d + 2;
	for (int k = lo; k <= hi; ++k)
		if (!m.at(k - 2).contains(m.at(k).image(n)))
			return false;
	for (int wt : w.strict_jumps()) {
		for (int k = 0; k <= hi - wt; ++k) {
			Space const a = graded_step(m, w, wt + k, wt), a1 = graded_step(m, w, wt + k - 1, wt);
			Space const b = graded_step(m, w, wt - k, wt), b1 = graded_step(m, w, wt - k - 1, wt);
			std::size_t const da = a.dim() - a1.dim(), db = b.dim() - b1.dim();
			if (da != db)
				return false;
			Space const img = a.image(linalg::power(n, k)) + b1;
			if (!b.contains(img) || img.dim() - b1.dim() != da)
				return false;
		}
	}
	return true;
}

BruteForceRmf brute_force_rmf(RationalMatrix const &n, RationalFiltration const &w)
{
	std::size_t const dim = w.dim();
	auto const &lat = lattice(dim);
	std::size_t const nc = lat.cands.size();

	std::vector<IVec> nm(dim, IVec(dim));
	for (std::size_t i = 0; i < dim; ++i)
		for (std::size_t j = 0; j < dim; ++j) {
			if (n[i][j].get_den() != 1 || !n[i][j].get_num().fits_slong_p())
				throw DomainError("brute-force search needs a small integer N");
			nm[i][j] = n[i][j].get_num().get_si();
		}
	auto power_rows = [&](std::vector<IVec> rows, int k) {
		for (int i = 0; i < k; ++i)
			for (auto &r : rows)
				r = int_apply(nm, r);
		return rows;
	};

	auto const weights = w.strict_jumps();
	std::size_t const nw = weights.size();
	std::vector<std::vector<IVec>> wstep(nw), wbelow(nw);
	for (std::size_t i = 0; i < nw; ++i) {
		wstep[i] = int_basis(w.at(weights[i]));
		wbelow[i] = int_basis(w.at(weights[i] - 1));
	}
	int const lo = w.lowest() - static_cast<int>(dim);
	int const hi = w.highest() + static_cast<int>(dim);

	// pre[c]: lines v with N v in c.  cap[c][i] - capb[c][i]: dimension of
	// the image of c in gr^W at weight index i.
	std::vector<Bits> pre(nc, 0);
	std::vector<std::vector<int>> cap(nc, std::vector<int>(nw)), capb(nc, std::vector<int>(nw));
	std::vector<IVec> nlines;
	for (auto const &l : lat.lines)
		nlines.push_back(int_apply(nm, l));
	for (std::size_t c = 0; c < nc; ++c) {
		auto const &rows = lat.cands[c].basis;
		int const d = static_cast<int>(rows.size());
		for (std::size_t l = 0; l < lat.lines.size(); ++l) {
			auto r = rows;
			r.push_back(nlines[l]);
			if (int_rank(r) == d)
				pre[c] |= Bits{1} << l;
		}
		for (std::size_t i = 0; i < nw; ++i) {
			cap[c][i] = d + static_cast<int>(wstep[i].size()) - int_rank(concat(rows, wstep[i]));
			capb[c][i] = d + static_cast<int>(wbelow[i].size()) - int_rank(concat(rows, wbelow[i]));
		}
	}

	// Necessary conditions on single steps, consequences of N^j being
	// bijective on graded pieces: on gr^W_l, M_{l-j} lies in im N^j and
	// ker N^j lies in M_{l+j-1}.
	std::map<int, std::vector<char>> allowed;
	for (int k = lo; k <= hi; ++k) {
		auto &ok = allowed[k];
		ok.assign(nc, 1);
		for (std::size_t i = 0; i < nw; ++i) {
			int const l = weights[i];
			if (k < l) {
				auto const x = concat(power_rows(wstep[i], l - k), wbelow[i]);
				int const dx = int_rank(x);
				for (std::size_t c = 0; c < nc; ++c) {
					if (!ok[c])
						continue;
					auto const &rows = lat.cands[c].basis;
					int const capx = static_cast<int>(rows.size()) + dx - int_rank(concat(rows, x));
					if (capx != cap[c][i])
						ok[c] = 0;
				}
			} else {
				int const j = k - l + 1;
				auto const kr = int_basis(intersect(w.at(l - 1).preimage(linalg::power(n, j)), w.at(l)));
				for (std::size_t c = 0; c < nc; ++c) {
					if (!ok[c])
						continue;
					auto const base = concat(lat.cands[c].basis, wbelow[i]);
					if (int_rank(concat(base, kr)) != int_rank(base))
						ok[c] = 0;
				}
			}
		}
	}

	BruteForceRmf result;
	std::vector<std::size_t> chain; // candidate index at k = lo + position
	auto at = [&](int k) -> std::size_t { return k < lo ? 0 : chain[static_cast<std::size_t>(k - lo)]; };
	auto gr = [&](int k, std::size_t i) {
		return (cap[at(k)][i] - capb[at(k)][i]) - (cap[at(k - 1)][i] - capb[at(k - 1)][i]);
	};
	std::function<void(int)> extend = [&](int k) {
		++result.nodes;
		if (k > hi) {
			std::map<int, Space> jumps;
			std::size_t prev = 0;
			for (int kk = lo; kk <= hi; ++kk) {
				auto const &cand = lat.cands[at(kk)];
				if (cand.basis.size() > prev)
					jumps.emplace(kk, rational_span(dim, cand.basis));
				prev = cand.basis.size();
			}
			RationalFiltration f(dim, std::move(jumps));
			if (rmf_conditions_hold(n, w, f))
				result.solutions.push_back(std::move(f));
			return;
		}
		Bits const prev = lat.cands[at(k - 1)].bits;
		std::size_t const prev_dim = lat.cands[at(k - 1)].basis.size();
		Bits const room = pre[at(k - 2)];
		auto const &ok = allowed[k];
		for (std::size_t c = 0; c < nc; ++c) {
			auto const &cand = lat.cands[c];
			if (!ok[c] || (cand.bits & prev) != prev || (cand.bits & ~room) != 0)
				continue;
			if (cand.basis.size() < prev_dim || (k == hi && cand.basis.size() != dim))
				continue;
			chain.push_back(c);
			bool good = true;
			for (std::size_t i = 0; i < nw && good; ++i) {
				int const j = k - weights[i];
				if (j >= 1 && gr(k, i) != gr(weights[i] - j, i))
					good = false;
			}
			if (good)
				extend(k + 1);
			chain.pop_back();
		}
	};
	extend(lo);
	return result;
}

bool within_candidate_lattice(RationalFiltration const &m)
{
	auto const &lat = lattice(m.dim());
	for (auto const &[k, s] : m.jumps()) {
		std::vector<IVec> inside;
		for (auto const &l : lat.lines)
			if (s.contains(to_rational(l)))
				inside.push_back(l);
		if (rational_span(m.dim(), inside).dim() != s.dim())
			return false;
	}
	return true;
}

RationalFiltration filtration_from_weights(std::vector<int> const &weights)
{
	std::size_t const dim = weights.size();
	if (dim == 0)
		throw DomainError("empty weight list");
	auto const e = linalg::identity<Rational>(dim);
	std::map<int, Space> jumps;
	for (int k : std::set<int>(weights.begin(), weights.end())) {
		Mat<Rational> span;
		for (std::size_t i = 0; i < dim; ++i)
			if (weights[i] <= k)
				span.push_back(e[i]);
		jumps.emplace(k, Space(dim, span));
	}
	return RationalFiltration(dim, std::move(jumps));
}

RmfInstance random_rmf_instance(std::mt19937_64 &rng, int dim)
{
	std::uniform_int_distribution<int> wt(-2, 2), entry(-1, 1);
	RmfInstance inst;
	inst.weights.resize(static_cast<std::size_t>(dim));
	for (auto &x : inst.weights)
		x = wt(rng);
	std::sort(inst.weights.begin(), inst.weights.end());
	inst.n.assign(static_cast<std::size_t>(dim), Vec<Rational>(static_cast<std::size_t>(dim), Rational(0)));
	for (int i = 0; i < dim; ++i)
		for (int j = i + 1; j < dim; ++j)
			inst.n[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = entry(rng);
	inst.w = filtration_from_weights(inst.weights);
	return inst;
}

Path random_path(std::mt19937_64 &rng, int waypoints, double clearance)
{
	std::uniform_real_distribution<double> re(-1.5, 2.5), im(-1.5, 1.5);
	for (;;) {
		std::vector<Complex> pts;
		while (static_cast<int>(pts.size()) < waypoints) {
			Complex const z{re(rng), im(rng)};
			if (std::abs(z) < clearance || std::abs(z - 1.0) < clearance)
				continue;
			if (!pts.empty()) {
				auto const seg = Segment::line(pts.back(), z);
				if (std::abs(z - pts.back()) < 0.05 || seg.distance_to(0.0) < clearance ||
				    seg.distance_to(1.0) < clearance)
					continue;
			}
			pts.push_back(z);
		}
		return Path::polyline(pts);
	}
}

GroupWord random_loop_word(std::mt19937_64 &rng, int max_len)
{
	std::uniform_int_distribution<int> len(1, max_len), gen(0, 1), sign(0, 1);
	for (;;) {
		std::vector<GroupLetter> letters;
		int const l = len(rng);
		for (int i = 0; i < l; ++i)
			letters.push_back({gen(rng), sign(rng) ? 1 : -1});
		GroupWord w(letters);
		if (!w.empty())
			return w;
	}
}

} // namespace alblab::oracle
