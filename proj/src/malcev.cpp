#include "alblab/malcev.hpp"

#include "alblab/bar_words.hpp"
#include "alblab/errors.hpp"
#include "alblab/linalg.hpp"

namespace alblab {

ExactSeries exp_trunc(ExactSeries const &h)
{
	if (!is_zero(h[0]))
		throw DomainError("exp_trunc: constant term must be 0");
	return exp_series(h);
}

ExactSeries log_trunc(ExactSeries const &g)
{
	if (g[0] != 1)
		throw DomainError("log_trunc: constant term must be 1");
	return log_series(g);
}

std::string_view to_string(CoproductClass c)
{
	switch (c) {
	case CoproductClass::primitive:
		return "primitive";
	case CoproductClass::grouplike:
		return "grouplike";
	case CoproductClass::neither:
		break;
	}
	return "neither";
}

namespace {

/// <u sh v, h>
Rational shuffle_pairing(Word const &u, Word const &v, ExactSeries const &h)
{
	Rational acc = 0;
	for (auto const &[w, c] : shuffle_product(u, v).terms())
		acc += c * h[w];
	return acc;
}

bool is_primitive(ExactSeries const &h)
{
	if (!is_zero(h[0]))
		return false;
	int const r = h.level();
	for (std::size_t iu = 1; iu < h.size(); ++iu) {
		Word const u = Word::from_index(iu);
		for (std::size_t iv = 1; iv < h.size(); ++iv) {
			Word const v = Word::from_index(iv);
			if (static_cast<int>(u.size() + v.size()) > r)
				break;
			if (!is_zero(shuffle_pairing(u, v, h)))
				return false;
		}
	}
	return true;
}

bool is_grouplike(ExactSeries const &h)
{
	if (h[0] != 1)
		return false;
	int const r = h.level();
	for (std::size_t iu = 1; iu < h.size(); ++iu) {
		Word const u = Word::from_index(iu);
		for (std::size_t iv = iu; iv < h.size(); ++iv) {
			Word const v = Word::from_index(iv);
			if (static_cast<int>(u.size() + v.size()) > r)
				break;
			if (shuffle_pairing(u, v, h) != h[u] * h[v])
				return false;
		}
	}
	return true;
}

void require_primitive(ExactSeries const &x, char const *what)
{
	if (!is_primitive(x))
		throw DomainError(std::string("bch: ") + what + " is not primitive");
}

} // namespace

CoproductClass classify_coproduct(ExactSeries const &h)
{
	if (is_primitive(h))
		return CoproductClass::primitive;
	if (is_grouplike(h))
		return CoproductClass::grouplike;
	return CoproductClass::neither;
}

ExactSeries bch(ExactSeries const &a, ExactSeries const &b)
{
	if (a.level() != b.level())
		throw DomainError("bch: operands have different levels");
	require_primitive(a, "first operand");
	require_primitive(b, "second operand");
	return log_trunc(exp_trunc(a) * exp_trunc(b));
}

ExactSeries bracket(ExactSeries const &a, ExactSeries const &b) { return a * b - b * a; }

std::vector<Word> lyndon_words(int r)
{
	// Duval's algorithm over the alphabet {0, 1}
	std::vector<Word> out;
	if (r < 1)
		return out;
	std::string w = "0";
	while (!w.empty()) {
		out.emplace_back(w);
		std::string next;
		for (std::size_t i = 0; static_cast<int>(next.size()) < r; ++i)
			next.push_back(w[i % w.size()]);
		while (!next.empty() && next.back() == '1')
			next.pop_back();
		if (!next.empty())
			next.back() = '1';
		w = next;
	}
	std::sort(out.begin(), out.end());
	return out;
}

namespace {

bool is_lyndon(std::string const &s)
{
	for (std::size_t k = 1; k < s.size(); ++k)
		if (!(s < s.substr(k) + s.substr(0, k)) || !(s < s.substr(k)))
			return false;
	return !s.empty();
}

/// Standard factorization: lyndon = u v with v the longest proper Lyndon suffix.
std::pair<std::string, std::string> standard_factorization(std::string const &s)
{
	for (std::size_t k = 1; k < s.size(); ++k)
		if (is_lyndon(s.substr(k)))
			return {s.substr(0, k), s.substr(k)};
	throw DomainError("not a Lyndon word of length >= 2: " + s);
}

} // namespace

ExactSeries lyndon_bracket(Word const &lyndon, int level)
{
	if (!is_lyndon(lyndon.str()))
		throw DomainError("not a Lyndon word: " + lyndon.str());
	if (lyndon.size() == 1)
		return ExactSeries::letter(level, lyndon[0]);
	auto const [u, v] = standard_factorization(lyndon.str());
	return bracket(lyndon_bracket(Word(u), level), lyndon_bracket(Word(v), level));
}

std::string lyndon_bracket_string(Word const &lyndon)
{
	if (lyndon.size() == 1)
		return lyndon.str();
	auto const [u, v] = standard_factorization(lyndon.str());
	return "[" + lyndon_bracket_string(Word(u)) + "," + lyndon_bracket_string(Word(v)) + "]";
}

int HallDimensions::total() const
{
	int t = 0;
	for (int d : per_degree)
		t += d;
	return t;
}

HallDimensions hall_dims(int r)
{
	if (r < 1)
		throw DomainError("hall_dims: r must be at least 1");
	HallDimensions out;
	out.per_degree.assign(r, 0);
	out.words.assign(r, {});
	for (auto const &w : lyndon_words(r)) {
		out.per_degree[w.size() - 1] += 1;
		out.words[w.size() - 1].push_back(w);
	}
	return out;
}

int primitive_dimension(int degree)
{
	if (degree < 1)
		return 0;
	std::size_t const n = std::size_t{1} << degree;
	std::size_t const offset = level_offset(degree);
	linalg::Mat<Rational> rows;
	for (int lu = 1; lu < degree; ++lu) {
		int const lv = degree - lu;
		for (std::size_t vu = 0; vu < (std::size_t{1} << lu); ++vu)
			for (std::size_t vv = 0; vv < (std::size_t{1} << lv); ++vv) {
				Word const u = Word::from_index(level_offset(lu) + vu);
				Word const v = Word::from_index(level_offset(lv) + vv);
				linalg::Vec<Rational> row(n, Rational(0));
				auto const sh = shuffle_product(u, v);
				for (auto const &[w, c] : sh.terms())
					row[w.index() - offset] += c;
				rows.push_back(std::move(row));
			}
	}
	return static_cast<int>(n - linalg::rank(rows));
}

LieCoordinates hall_coordinates(ExactSeries const &primitive)
{
	if (!is_primitive(primitive))
		throw DomainError("hall_coordinates: element is not primitive");
	int const r = primitive.level();
	auto const basis = lyndon_words(r);
	std::vector<ExactSeries> expansions;
	for (auto const &w : basis)
		expansions.push_back(lyndon_bracket(w, r));
	linalg::Mat<Rational> a(primitive.size(), linalg::Vec<Rational>(basis.size(), Rational(0)));
	linalg::Vec<Rational> rhs(primitive.size());
	for (std::size_t i = 0; i < primitive.size(); ++i) {
		for (std::size_t j = 0; j < basis.size(); ++j)
			a[i][j] = expansions[j][i];
		rhs[i] = primitive[i];
	}
	auto const x = linalg::solve(a, rhs, basis.size());
	if (!x)
		throw DomainError("hall_coordinates: element is outside the Lie span");
	LieCoordinates out{primitive, {}};
	for (std::size_t j = 0; j < basis.size(); ++j)
		if (!is_zero((*x)[j]))
			out.hall.emplace_back(basis[j], (*x)[j]);
	return out;
}

LieCoordinates malcev_coordinates(GroupWord const &w, int r)
{
	if (r < 1)
		throw DomainError("malcev_coordinates: r must be at least 1");
	auto g = ExactSeries::identity(r);
	for (auto const &l : w.letters())
		g = g * exp_trunc(ExactSeries::letter(r, l.generator, Rational(l.exponent)));
	return hall_coordinates(log_trunc(g));
}

} // namespace alblab
