#pragma once

#include "alblab/rational.hpp"
#include "alblab/word.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace alblab {

/// Finitely supported rational combination of words; the degree-0 bar
/// complex of the thrice-punctured line.  Zero coefficients are never stored.
class ShuffleElement {
public:
	ShuffleElement() = default;
	explicit ShuffleElement(Word const &w, Rational c = 1);

	void add(Word const &w, Rational const &c);
	Rational coefficient(Word const &w) const;
	std::map<Word, Rational> const &terms() const & { return terms_; }
	std::map<Word, Rational> terms() && { return std::move(terms_); }
	bool is_zero() const { return terms_.empty(); }
	/// Maximum word length in the support; -1 for the zero element.
	int degree() const;

	ShuffleElement &operator+=(ShuffleElement const &o);
	ShuffleElement &operator*=(Rational const &s);
	friend ShuffleElement operator+(ShuffleElement a, ShuffleElement const &b) { return a += b; }
	friend bool operator==(ShuffleElement const &, ShuffleElement const &) = default;

private:
	std::map<Word, Rational> terms_;
};

/// All words of length <= r in shortlex order (2^(r+1) - 1 of them).
std::vector<Word> word_basis(int r);

ShuffleElement shuffle_product(Word const &u, Word const &v);
ShuffleElement shuffle_product(ShuffleElement const &a, ShuffleElement const &b);

/// All (prefix, suffix) splittings of w, prefix length increasing.
std::vector<std::pair<Word, Word>> deconcat_coproduct(Word const &w);

// ---------------------------------------------------------------------------
// Bar differential on symbolic forms

using Symbol = std::string;
using SymbolWord = std::vector<Symbol>;
/// Rational combination of words over an arbitrary symbol alphabet.
using SymbolicSum = std::map<SymbolWord, Rational>;

/// Symbolic exterior derivative and wedge products for a set of forms.
class SymbolicFormTable {
public:
	/// The default table for P^1 minus {0,1,oo}: letters "0" and "1" of
	/// degree 1, closed, with vanishing wedges.
	static SymbolicFormTable curve_default();

	/// Registers a form of the given degree with d(form) = derivative.
	void set_form(Symbol const &name, int degree, std::map<Symbol, Rational> derivative = {});
	/// Sets a ^ b = value and b ^ a = (-1)^(deg a deg b) value.
	void set_wedge(Symbol const &a, Symbol const &b, std::map<Symbol, Rational> value);

	bool has(Symbol const &name) const { return forms_.contains(name); }
	int degree(Symbol const &name) const;
	std::map<Symbol, Rational> const &derivative(Symbol const &name) const;
	/// Zero when the pair was never set.
	std::map<Symbol, Rational> wedge(Symbol const &a, Symbol const &b) const;

private:
	struct Form {
		int degree = 1;
		std::map<Symbol, Rational> derivative;
	};
	std::map<Symbol, Form> forms_;
	std::map<std::pair<Symbol, Symbol>, std::map<Symbol, Rational>> wedges_;
};

/// d of the iterated integral over w, as a combination of symbolic words:
///   sum_j (-1)^(nu_{j-1}+1) [.. d w_j ..] + sum_j (-1)^(nu_j+1) [.. (w_j ^ w_{j+1}) ..]
/// with nu_j = sum_{k<=j} (deg w_k - 1).
SymbolicSum bar_differential(SymbolWord const &w, SymbolicFormTable const &table);
SymbolicSum bar_differential(Word const &w, SymbolicFormTable const &table);

SymbolWord to_symbols(Word const &w);

} // namespace alblab
