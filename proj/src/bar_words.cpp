#include "alblab/bar_words.hpp"

#include "alblab/errors.hpp"

namespace alblab {

ShuffleElement::ShuffleElement(Word const &w, Rational c) { add(w, c); }

void ShuffleElement::add(Word const &w, Rational const &c)
{
	if (alblab::is_zero(c))
		return;
	auto [it, inserted] = terms_.try_emplace(w, c);
	if (!inserted) {
		it->second += c;
		if (alblab::is_zero(it->second))
			terms_.erase(it);
	}
}

Rational ShuffleElement::coefficient(Word const &w) const
{
	auto it = terms_.find(w);
	return it == terms_.end() ? Rational(0) : it->second;
}

int ShuffleElement::degree() const
{
	// shortlex: the last key is a longest word
	return terms_.empty() ? -1 : static_cast<int>(terms_.rbegin()->first.size());
}

ShuffleElement &ShuffleElement::operator+=(ShuffleElement const &o)
{
	for (auto const &[w, c] : o.terms_)
		add(w, c);
	return *this;
}

ShuffleElement &ShuffleElement::operator*=(Rational const &s)
{
	if (alblab::is_zero(s)) {
		terms_.clear();
		return *this;
	}
	for (auto &[w, c] : terms_)
		c *= s;
	return *this;
}

std::vector<Word> word_basis(int r)
{
	if (r < 0)
		throw DomainError("word_basis: r must be non-negative");
	std::vector<Word> out;
	out.reserve(series_size(r));
	for (std::size_t i = 0; i < series_size(r); ++i)
		out.push_back(Word::from_index(i));
	return out;
}

namespace {

void riffle(std::string const &u, std::size_t i, std::string const &v, std::size_t j, std::string &acc,
            ShuffleElement &out)
{
	if (i == u.size() && j == v.size()) {
		out.add(Word(acc), 1);
		return;
	}
	if (i < u.size()) {
		acc.push_back(u[i]);
		riffle(u, i + 1, v, j, acc, out);
		acc.pop_back();
	}
	if (j < v.size()) {
		acc.push_back(v[j]);
		riffle(u, i, v, j + 1, acc, out);
		acc.pop_back();
	}
}

} // namespace

ShuffleElement shuffle_product(Word const &u, Word const &v)
{
	ShuffleElement out;
	std::string acc;
	riffle(u.str(), 0, v.str(), 0, acc, out);
	return out;
}

ShuffleElement shuffle_product(ShuffleElement const &a, ShuffleElement const &b)
{
	ShuffleElement out;
	for (auto const &[u, cu] : a.terms())
		for (auto const &[v, cv] : b.terms()) {
			auto s = shuffle_product(u, v);
			s *= cu * cv;
			out += s;
		}
	return out;
}

std::vector<std::pair<Word, Word>> deconcat_coproduct(Word const &w)
{
	std::vector<std::pair<Word, Word>> out;
	out.reserve(w.size() + 1);
	for (std::size_t k = 0; k <= w.size(); ++k)
		out.emplace_back(w.prefix(k), w.suffix_from(k));
	return out;
}

// ---------------------------------------------------------------------------

SymbolicFormTable SymbolicFormTable::curve_default()
{
	SymbolicFormTable t;
	t.set_form("0", 1);
	t.set_form("1", 1);
	return t;
}

void SymbolicFormTable::set_form(Symbol const &name, int degree, std::map<Symbol, Rational> derivative)
{
	if (degree < 1)
		throw DomainError("forms in the bar construction have positive degree");
	std::erase_if(derivative, [](auto const &kv) { return alblab::is_zero(kv.second); });
	forms_[name] = Form{degree, std::move(derivative)};
}

void SymbolicFormTable::set_wedge(Symbol const &a, Symbol const &b, std::map<Symbol, Rational> value)
{
	if (!has(a) || !has(b))
		throw DomainError("wedge of unregistered forms " + a + ", " + b);
	std::erase_if(value, [](auto const &kv) { return alblab::is_zero(kv.second); });
	auto swapped = value;
	if ((degree(a) * degree(b)) % 2 == 1)
		for (auto &kv : swapped)
			kv.second = -kv.second;
	if (a == b && !value.empty() && swapped != value)
		throw DomainError("odd form wedged with itself must vanish");
	wedges_[{a, b}] = std::move(value);
	wedges_[{b, a}] = std::move(swapped);
}

int SymbolicFormTable::degree(Symbol const &name) const
{
	auto it = forms_.find(name);
	if (it == forms_.end())
		throw DomainError("form '" + name + "' missing from table");
	return it->second.degree;
}

std::map<Symbol, Rational> const &SymbolicFormTable::derivative(Symbol const &name) const
{
	auto it = forms_.find(name);
	if (it == forms_.end())
		throw DomainError("form '" + name + "' missing from table");
	return it->second.derivative;
}

std::map<Symbol, Rational> SymbolicFormTable::wedge(Symbol const &a, Symbol const &b) const
{
	auto it = wedges_.find({a, b});
	return it == wedges_.end() ? std::map<Symbol, Rational>{} : it->second;
}

SymbolicSum bar_differential(SymbolWord const &w, SymbolicFormTable const &table)
{
	std::size_t const r = w.size();
	// nu[j] = sum_{k<=j} (p_k - 1), nu[0] = 0, letters 1-based
	std::vector<int> nu(r + 1, 0);
	for (std::size_t j = 1; j <= r; ++j)
		nu[j] = nu[j - 1] + table.degree(w[j - 1]) - 1;

	SymbolicSum out;
	auto accumulate = [&out](SymbolWord word, Rational const &c) {
		auto &slot = out[std::move(word)];
		slot += c;
	};
	auto sign = [](int exponent) { return exponent % 2 == 0 ? Rational(1) : Rational(-1); };

	for (std::size_t j = 1; j <= r; ++j) {
		Rational const s = sign(nu[j - 1] + 1);
		for (auto const &[sym, c] : table.derivative(w[j - 1])) {
			SymbolWord word(w.begin(), w.begin() + (j - 1));
			word.push_back(sym);
			word.insert(word.end(), w.begin() + j, w.end());
			accumulate(std::move(word), s * c);
		}
	}
	for (std::size_t j = 1; j + 1 <= r; ++j) {
		Rational const s = sign(nu[j] + 1);
		for (auto const &[sym, c] : table.wedge(w[j - 1], w[j])) {
			SymbolWord word(w.begin(), w.begin() + (j - 1));
			word.push_back(sym);
			word.insert(word.end(), w.begin() + (j + 1), w.end());
			accumulate(std::move(word), s * c);
		}
	}
	std::erase_if(out, [](auto const &kv) { return alblab::is_zero(kv.second); });
	return out;
}

SymbolWord to_symbols(Word const &w)
{
	SymbolWord out;
	for (char c : w.str())
		out.emplace_back(1, c);
	return out;
}

SymbolicSum bar_differential(Word const &w, SymbolicFormTable const &table)
{
	return bar_differential(to_symbols(w), table);
}

} // namespace alblab
