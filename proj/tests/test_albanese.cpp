#include "alblab/albanese.hpp"
#include "alblab/errors.hpp"
#include "alblab/oracles.hpp"
#include "gtest/gtest.h"

#include <nlohmann/json.hpp>
#include <fstream>
#include <numbers>
#include <random>

using namespace alblab;
using std::numbers::pi;

namespace {

Complex const two_pi_i{0.0, 2.0 * pi};

Heisenberg<Complex> closed_form(Complex x)
{
	return {std::log(x) / two_pi_i, -std::log(1.0 - x) / two_pi_i, oracle::dilog_series(x) / (two_pi_i * two_pi_i)};
}

} // namespace

TEST(AlbanesePoint, OneHalf)
{
	auto const p = albanese_point(0.5);
	EXPECT_LT(std::abs(p.raw.a - closed_form(0.5).a), 1e-8);
	EXPECT_LT(std::abs(p.raw.b - closed_form(0.5).b), 1e-8);
	EXPECT_LT(std::abs(p.raw.c - closed_form(0.5).c), 1e-8);
	EXPECT_TRUE(oracle::same_class(p.reduced.point, closed_form(0.5), 1e-8));
}

TEST(AlbanesePoint, IndependentOfHomotopyClass)
{
	Complex const x{0.2, -0.3};
	auto const base = albanese_point(x).reduced.point;
	for (auto const *w : {"0", "1", "0 1 0^-1 1^-1", "1^-2 0"}) {
		auto const other = albanese_point(x, GroupWord::parse(w)).reduced.point;
		EXPECT_LT(std::abs(other.a - base.a) + std::abs(other.b - base.b) + std::abs(other.c - base.c), 1e-8) << w;
	}
}

TEST(AlbanesePoint, SmallX)
{
	for (double x : {1e-2, 1e-4}) {
		auto const p = albanese_point(x);
		EXPECT_NEAR(p.raw.a.imag(), -std::log(x) / (2 * pi), 1e-9);
		EXPECT_LT(std::abs(p.raw.b), 2 * x);
		EXPECT_LT(std::abs(p.raw.c), 2 * x);
	}
}

TEST(AlbanesePoint, AltCoordinates)
{
	auto const p = albanese_point(0.5), q = albanese_point_alt(0.5);
	// inverse of [[1,-alpha,lambda],[0,1,-beta],[0,0,1]]
	auto const m = Heisenberg<Complex>{-p.raw.b, -p.raw.a, p.raw.c}.inverse();
	EXPECT_LT(std::abs(q.raw.a - m.a) + std::abs(q.raw.b - m.b) + std::abs(q.raw.c - m.c), 1e-12);
	auto const t = to_alt_coordinates(p.raw);
	EXPECT_LT(std::abs(q.raw.a - t.a) + std::abs(q.raw.b - t.b) + std::abs(q.raw.c - t.c), 1e-12);
}

TEST(AlbanesePoint, AltTransformIntertwinesLeftMultiplication)
{
	std::mt19937_64 rng(2);
	std::uniform_int_distribution<int> k(-3, 3);
	Heisenberg<Rational> const p{Rational(1, 3), Rational(-2, 7), Rational(5, 2)};
	for (int i = 0; i < 20; ++i) {
		Heisenberg<Rational> const g{k(rng), k(rng), k(rng)};
		EXPECT_EQ(to_alt_coordinates(g * p), to_alt_coordinates(g) * to_alt_coordinates(p));
	}
}

TEST(Extended, ZeroAndSeries)
{
	auto const z = extended_albanese(0.0);
	EXPECT_EQ(z.q, Complex(0.0));
	EXPECT_EQ(z.beta, Complex(0.0));
	EXPECT_EQ(z.lambda, Complex(0.0));

	auto const y = extended_albanese(0.1);
	EXPECT_LT(std::abs(y.q - 0.1), 1e-15);
	EXPECT_LT(std::abs(y.beta - oracle::log1m_series(0.1) / two_pi_i), 1e-8);
	EXPECT_LT(std::abs(y.lambda - oracle::dilog_series(0.1) / (two_pi_i * two_pi_i)), 1e-8);
	EXPECT_THROW(extended_albanese(0.6), DomainError);
}

TEST(Extended, ContinuousAtZero)
{
	double c = 0.0;
	for (int d = 0; d < 10; ++d) {
		Complex const dir = std::polar(1.0, 2 * pi * d / 10.0);
		for (double r : {1e-1, 1e-2, 1e-3}) {
			auto const y = extended_albanese(r * dir);
			c = std::max({c, std::abs(y.beta) / r, std::abs(y.lambda) / r});
		}
	}
	EXPECT_LT(c, 0.2);
	RecordProperty("C", std::to_string(c));
}

TEST(Extended, MatchesInteriorClass)
{
	Complex const x{0.1, 0.2};
	auto const y = extended_albanese(x);
	auto const cls = std::get<InteriorClass>(boundary_chart_point(y)).reduced.point;
	EXPECT_TRUE(oracle::same_class(cls, albanese_point(x).reduced.point, 1e-8));
}

TEST(MonodromyAction, Generators)
{
	EXPECT_EQ(monodromy_action(GroupWord{}).matrix, IntHeisenberg::identity());
	EXPECT_EQ(monodromy_action(GroupWord::generator(0)).matrix, (IntHeisenberg{1, 0, 0}));
	EXPECT_EQ(monodromy_action(GroupWord::generator(1)).matrix, (IntHeisenberg{0, -1, 0}));
	auto const c = monodromy_action(GroupWord::parse("0 1 0^-1 1^-1"));
	EXPECT_EQ(c.matrix, (IntHeisenberg{0, 0, 1}));
	EXPECT_LT(c.max_deviation, 1e-8);
}

TEST(MonodromyAction, Homomorphism)
{
	std::mt19937_64 rng(17);
	for (int i = 0; i < 4; ++i) {
		auto const a = oracle::random_loop_word(rng, 3), b = oracle::random_loop_word(rng, 3);
		EXPECT_EQ(monodromy_action(a * b).matrix, monodromy_action(a).matrix * monodromy_action(b).matrix)
		    << a.str() << " | " << b.str();
	}
}

TEST(MhsMorphism, Tables)
{
	EXPECT_TRUE(lie_action_is_mhs_morphism(LieActionTable::e23()).passed());
	EXPECT_TRUE(lie_action_is_mhs_morphism(LieActionTable::e24()).passed());
	auto const bad = lie_action_is_mhs_morphism(LieActionTable::perturbed());
	EXPECT_TRUE(bad.weight_ok);
	EXPECT_FALSE(bad.hodge_ok);
	EXPECT_FALSE(bad.failures.empty());
}

TEST(Differential, LambdaFollowsBetaDAlpha)
{
	for (Complex x : {Complex(0.3, 0.1), Complex(-0.4, 0.6), Complex(1.7, -0.5)}) {
		auto const r = differential_residual(x, Complex(0.6, 0.8));
		EXPECT_LT(r.max(), 1e-6);
		EXPECT_GT(r.d_lambda_swapped, 1e-3);
	}
}

TEST(Regression, FrozenConstants)
{
	std::ifstream in(ALBLAB_DATA_DIR "/regression_constants.json");
	ASSERT_TRUE(in.good());
	auto const j = nlohmann::json::parse(in);
	for (auto const &entry : j.at("monodromy")) {
		auto const m = monodromy_action(GroupWord::parse(entry.at("word").get<std::string>())).matrix;
		EXPECT_EQ(m, (IntHeisenberg{entry["a"], entry["b"], entry["c"]})) << entry["word"];
	}
	auto const &alt = j.at("alt_transform");
	Heisenberg<Rational> const p{2, 3, 5};
	auto const t = to_alt_coordinates(p);
	EXPECT_EQ(t, (Heisenberg<Rational>{alt["b"].get<int>(), alt["a"].get<int>(), alt["ab_minus_c"].get<int>()}));
	EXPECT_NEAR(j.at("li2_half").get<double>(), oracle::dilog_series(0.5).real(), 1e-15);
}
