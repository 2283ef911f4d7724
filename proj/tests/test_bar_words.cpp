#include "alblab/bar_words.hpp"
#include "alblab/json_io.hpp"
#include "gtest/gtest.h"

#include <nlohmann/json.hpp>
#include <random>

using namespace alblab;

TEST(WordBasis, Counts)
{
	EXPECT_EQ(word_basis(0).size(), 1u);
	EXPECT_TRUE(word_basis(0)[0].empty());
	auto const b2 = word_basis(2);
	std::vector<std::string> names;
	for (auto const &w : b2)
		names.push_back(w.str());
	EXPECT_EQ(names, (std::vector<std::string>{"", "0", "1", "00", "01", "10", "11"}));
	EXPECT_EQ(word_basis(4).size(), 31u);
	for (int r = 0; r <= 6; ++r)
		EXPECT_EQ(word_basis(r).size(), (std::size_t{2} << r) - 1);
}

TEST(WordBasis, IndexRoundTrip)
{
	for (auto const &w : word_basis(5))
		EXPECT_EQ(Word::from_index(w.index()), w);
}

TEST(Shuffle, Examples)
{
	auto const s = shuffle_product(Word("0"), Word("1"));
	EXPECT_EQ(s.coefficient(Word("01")), 1);
	EXPECT_EQ(s.coefficient(Word("10")), 1);
	EXPECT_EQ(s.terms().size(), 2u);

	EXPECT_EQ(shuffle_product(Word(""), Word("0110")), ShuffleElement(Word("0110")));

	auto const t = shuffle_product(Word("01"), Word("0"));
	EXPECT_EQ(t.coefficient(Word("001")), 2);
	EXPECT_EQ(t.coefficient(Word("010")), 1);
	EXPECT_EQ(t.terms().size(), 2u);
}

namespace {

// interleavings by brute force over position subsets
ShuffleElement naive_shuffle(std::string const &u, std::string const &v)
{
	ShuffleElement out;
	std::size_t const n = u.size() + v.size();
	for (unsigned mask = 0; mask < (1u << n); ++mask) {
		if (static_cast<std::size_t>(__builtin_popcount(mask)) != u.size())
			continue;
		std::string w;
		std::size_t i = 0, j = 0;
		for (std::size_t k = 0; k < n; ++k)
			w.push_back(mask >> k & 1 ? u[i++] : v[j++]);
		out.add(Word(w), 1);
	}
	return out;
}

} // namespace

TEST(Shuffle, MatchesInterleavingCount)
{
	for (auto const &u : word_basis(3))
		for (auto const &v : word_basis(3))
			EXPECT_EQ(shuffle_product(u, v), naive_shuffle(u.str(), v.str())) << u.str() << " " << v.str();
}

TEST(Shuffle, CommutativeAssociative)
{
	auto const words = word_basis(2);
	for (auto const &a : words)
		for (auto const &b : words) {
			EXPECT_EQ(shuffle_product(a, b), shuffle_product(b, a));
			for (auto const &c : words)
				EXPECT_EQ(shuffle_product(shuffle_product(ShuffleElement(a), ShuffleElement(b)), ShuffleElement(c)),
				          shuffle_product(ShuffleElement(a), shuffle_product(ShuffleElement(b), ShuffleElement(c))));
		}
}

TEST(Deconcat, Examples)
{
	using P = std::vector<std::pair<Word, Word>>;
	EXPECT_EQ(deconcat_coproduct(Word("")), (P{{Word(""), Word("")}}));
	EXPECT_EQ(deconcat_coproduct(Word("0")), (P{{Word(""), Word("0")}, {Word("0"), Word("")}}));
	EXPECT_EQ(deconcat_coproduct(Word("10")),
	          (P{{Word(""), Word("10")}, {Word("1"), Word("0")}, {Word("10"), Word("")}}));
}

TEST(BarDifferential, CurveDefaultVanishes)
{
	auto const table = SymbolicFormTable::curve_default();
	EXPECT_TRUE(bar_differential(Word("0"), table).empty());
	EXPECT_TRUE(bar_differential(Word("01"), table).empty());
}

TEST(BarDifferential, SymbolicTable)
{
	SymbolicFormTable t;
	t.set_form("eta", 2);
	t.set_form("theta", 2);
	t.set_form("a", 1, {{"eta", 1}});
	t.set_form("b", 1);
	t.set_wedge("a", "b", {{"theta", 1}});
	auto const d = bar_differential(SymbolWord{"a", "b"}, t);
	EXPECT_EQ(d, (SymbolicSum{{{"eta", "b"}, -1}, {{"theta"}, -1}}));
}

TEST(ShuffleJson, RoundTrip)
{
	auto const s = shuffle_product(Word("01"), Word("10"));
	auto const j = to_json(s);
	EXPECT_EQ(j["0110"], "2/1");
	EXPECT_EQ(shuffle_element_from_json(j), s);
}
