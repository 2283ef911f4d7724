#include "alblab/errors.hpp"
#include "alblab/malcev.hpp"
#include "gtest/gtest.h"

using namespace alblab;

namespace {

ExactSeries e(int letter, int r) { return ExactSeries::letter(r, letter); }

} // namespace

TEST(ExpLog, Examples)
{
	EXPECT_EQ(exp_trunc(ExactSeries(3)), ExactSeries::identity(3));
	auto expected = ExactSeries::identity(2) + e(0, 2);
	expected[Word("00")] = Rational(1, 2);
	EXPECT_EQ(exp_trunc(e(0, 2)), expected);
	EXPECT_THROW(exp_trunc(ExactSeries::identity(2)), DomainError);
	EXPECT_THROW(log_trunc(e(0, 2)), DomainError);
}

TEST(ExpLog, RoundTrip)
{
	auto h = e(0, 4) * Rational(3, 2) - e(1, 4) + bracket(e(0, 4), e(1, 4)) * Rational(1, 5);
	EXPECT_EQ(log_trunc(exp_trunc(h)), h);
	auto g = exp_trunc(e(0, 4)) * exp_trunc(e(1, 4) * Rational(-2));
	EXPECT_EQ(exp_trunc(log_trunc(g)), g);
}

TEST(Classify, Examples)
{
	EXPECT_EQ(classify_coproduct(e(0, 3)), CoproductClass::primitive);
	EXPECT_EQ(classify_coproduct(exp_trunc(e(0, 3) + e(1, 3))), CoproductClass::grouplike);
	auto g = ExactSeries::identity(2);
	g[Word("01")] = 1;
	EXPECT_EQ(classify_coproduct(g), CoproductClass::neither);
	EXPECT_EQ(classify_coproduct(bracket(e(0, 3), e(1, 3))), CoproductClass::primitive);
	EXPECT_EQ(classify_coproduct(e(0, 3) * e(1, 3)), CoproductClass::neither);
}

TEST(Bch, LevelTwo)
{
	auto const z = bch(e(0, 2), e(1, 2));
	EXPECT_EQ(z, e(0, 2) + e(1, 2) + bracket(e(0, 2), e(1, 2)) * Rational(1, 2));
	EXPECT_THROW(bch(e(0, 2) * e(1, 2), e(1, 2)), DomainError);
}

TEST(Bch, ExactAndPrimitive)
{
	for (int r = 1; r <= 5; ++r) {
		auto const a = e(0, r) * Rational(2, 3), b = e(1, r) - e(0, r) * Rational(1, 4);
		auto const z = bch(a, b);
		EXPECT_EQ(exp_trunc(z), exp_trunc(a) * exp_trunc(b));
		EXPECT_EQ(classify_coproduct(z), CoproductClass::primitive);
	}
}

TEST(Hall, Dimensions)
{
	EXPECT_EQ(hall_dims(1).per_degree, (std::vector<int>{2}));
	EXPECT_EQ(hall_dims(2).per_degree, (std::vector<int>{2, 1}));
	EXPECT_EQ(hall_dims(2).total(), 3);
	EXPECT_EQ(hall_dims(4).per_degree, (std::vector<int>{2, 1, 2, 3}));
	// necklace counts agree with exact primitive dimensions
	auto const h = hall_dims(6);
	for (int k = 1; k <= 6; ++k)
		EXPECT_EQ(h.per_degree[k - 1], primitive_dimension(k)) << k;
	EXPECT_THROW(hall_dims(0), DomainError);
}

TEST(Hall, BracketStrings)
{
	EXPECT_EQ(lyndon_bracket_string(Word("01")), "[0,1]");
	EXPECT_EQ(lyndon_bracket_string(Word("001")), "[0,[0,1]]");
	EXPECT_EQ(lyndon_bracket(Word("01"), 2), bracket(e(0, 2), e(1, 2)));
	EXPECT_THROW(lyndon_bracket(Word("10"), 2), DomainError);
}

TEST(Malcev, Coordinates)
{
	auto const g0 = malcev_coordinates(GroupWord::generator(0), 2);
	ASSERT_EQ(g0.hall.size(), 1u);
	EXPECT_EQ(g0.hall[0], std::make_pair(Word("0"), Rational(1)));

	auto const comm = malcev_coordinates(GroupWord::parse("0 1 0^-1 1^-1"), 2);
	ASSERT_EQ(comm.hall.size(), 1u);
	EXPECT_EQ(comm.hall[0], std::make_pair(Word("01"), Rational(1)));

	auto const prod = malcev_coordinates(GroupWord::parse("0 1"), 2);
	EXPECT_EQ(prod.element, bch(e(0, 2), e(1, 2)));
	using C = std::vector<std::pair<Word, Rational>>;
	EXPECT_EQ(prod.hall, (C{{Word("0"), 1}, {Word("1"), 1}, {Word("01"), Rational(1, 2)}}));
}

TEST(Malcev, TripleCommutatorsVanishAtLevelTwo)
{
	auto const c = GroupWord::commutator(GroupWord::generator(0), GroupWord::generator(1));
	for (int g = 0; g < 2; ++g)
		EXPECT_TRUE(malcev_coordinates(GroupWord::commutator(GroupWord::generator(g), c), 2).hall.empty());
	EXPECT_FALSE(malcev_coordinates(GroupWord::commutator(GroupWord::generator(0), c), 3).hall.empty());
}

TEST(Malcev, Homomorphism)
{
	auto const a = GroupWord::parse("0 1^2 0^-1"), b = GroupWord::parse("1^-1 0^3");
	for (int r = 1; r <= 4; ++r)
		EXPECT_EQ(malcev_coordinates(a * b, r).element,
		          bch(malcev_coordinates(a, r).element, malcev_coordinates(b, r).element));
}
