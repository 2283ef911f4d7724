#include "alblab/errors.hpp"
#include "alblab/malcev.hpp"
#include "alblab/oracles.hpp"
#include "alblab/path_integrals.hpp"
#include "gtest/gtest.h"

#include <nlohmann/json.hpp>
#include <numbers>
#include <random>

using namespace alblab;
using std::numbers::pi;

namespace {

Complex const two_pi_i{0.0, 2.0 * pi};
double const li2_half = pi * pi / 12.0 - std::log(2.0) * std::log(2.0) / 2.0;
QuadratureConfig const cfg;

double max_diff(TruncatedSeries const &a, TruncatedSeries const &b)
{
	double m = 0.0;
	for (std::size_t i = 0; i < a.size(); ++i)
		m = std::max(m, std::abs(a[i] - b[i]));
	return m;
}

TruncatedSeries to_complex(ExactSeries const &s)
{
	TruncatedSeries out(s.level());
	for (std::size_t i = 0; i < s.size(); ++i)
		out[i] = s[i].get_d();
	return out;
}

} // namespace

TEST(MakePath, Loops)
{
	auto const g0 = make_path(nlohmann::json{{"loop", "gamma0"}, {"turns", 1}});
	EXPECT_TRUE(g0.start_anchor().has_value());
	EXPECT_EQ(g0.start_anchor(), g0.end_anchor());
	auto const seg = make_path(nlohmann::json{{"waypoints", {0.25, 0.5}}});
	EXPECT_EQ(seg.segments().size(), 1u);
	EXPECT_THROW(make_path(nlohmann::json{{"waypoints", {0.5, 1.0}}}), DomainError);
}

TEST(IteratedIntegral, Basics)
{
	auto const circle = Path({Segment::arc(0.0, 0.5, 0.0, 2.0 * pi)});
	EXPECT_EQ(iterated_integral(Word(""), circle, cfg).value, Complex(1.0));
	EXPECT_LT(std::abs(iterated_integral(Word("0"), circle, cfg).value - two_pi_i), cfg.abs_tol);
	// winds zero times around 1
	EXPECT_LT(std::abs(iterated_integral(Word("1"), circle, cfg).value), cfg.abs_tol);

	auto const seg = Path::polyline({0.25, 0.5});
	EXPECT_LT(std::abs(iterated_integral(Word("0"), seg, cfg).value - std::log(2.0)), cfg.abs_tol);
}

TEST(IteratedIntegral, DilogFromTangentialBase)
{
	auto const p = Path({Segment::line(0.0, 0.5)}, TangentialAnchor{0, 1.0});
	auto const r = iterated_integral(Word("10"), p, cfg);
	EXPECT_LT(std::abs(r.value - li2_half), 10 * cfg.abs_tol);
	EXPECT_LT(std::abs(r.value - oracle::dilog_series(0.5)), 10 * cfg.abs_tol);
}

TEST(IteratedIntegral, RegularizedAtLoopBase)
{
	auto const g0 = Path::gamma0();
	EXPECT_LT(std::abs(iterated_integral(Word("0"), g0, cfg).value - two_pi_i), 1e-9);
}

TEST(IteratedIntegral, AgreesWithSignatureOnRandomPaths)
{
	std::mt19937_64 rng(7);
	for (int trial = 0; trial < 5; ++trial) {
		auto const p = oracle::random_path(rng, 4);
		auto const s = signature(p, 3, cfg);
		for (auto const &w : word_basis(3))
			EXPECT_LT(std::abs(iterated_integral(w, p, cfg).value - s[w]), 1e-8) << w.str();
	}
}

TEST(Signature, ConstantAndAntipode)
{
	auto const id = TruncatedSeries::identity(3);
	EXPECT_EQ(signature(Path::constant_tangential({0, 1.0}), 3, cfg), id);

	std::mt19937_64 rng(11);
	auto const p = oracle::random_path(rng, 5);
	EXPECT_LT(max_diff(signature(p.then(p.reversed()), 3, cfg), id), 1e-9);
}

TEST(Signature, Gamma0IsExponential)
{
	auto const s = signature(Path::gamma0(), 2, cfg);
	auto const expected = exp_series(TruncatedSeries::letter(2, 0, two_pi_i));
	EXPECT_LT(max_diff(s, expected), 1e-9);
	EXPECT_LT(std::abs(s[Word("00")] - two_pi_i * two_pi_i / 2.0), 1e-9);
}

TEST(Compose, Exponentials)
{
	auto const r = 4;
	auto const id = TruncatedSeries::identity(r);
	std::mt19937_64 rng(3);
	auto const b = signature(oracle::random_path(rng, 3), r, cfg);
	EXPECT_EQ(compose_signatures(id, b), b);

	Complex const s{0.3, -1.2}, t{-0.7, 0.4};
	auto const es = exp_series(TruncatedSeries::letter(r, 0, s));
	auto const et = exp_series(TruncatedSeries::letter(r, 0, t));
	EXPECT_LT(max_diff(compose_signatures(es, et), exp_series(TruncatedSeries::letter(r, 0, s + t))), 1e-14);
	EXPECT_THROW(compose_signatures(es, TruncatedSeries::identity(2)), DomainError);
}

TEST(Compose, SplitPath)
{
	std::mt19937_64 rng(5);
	for (int trial = 0; trial < 5; ++trial) {
		auto const a = oracle::random_path(rng, 3);
		auto const b = Path::polyline({a.end_point(), a.end_point() + Complex(0.1, 0.2)});
		EXPECT_LT(max_diff(signature(a.then(b), 4, cfg), compose_signatures(signature(a, 4, cfg), signature(b, 4, cfg))),
		          10 * cfg.abs_tol);
	}
}

TEST(Shuffle, CharacterOnSignatures)
{
	// <u sh v, S> = <u, S><v, S> for a signature S
	std::mt19937_64 rng(13);
	auto const s = signature(oracle::random_path(rng, 4), 4, cfg);
	for (auto const &u : word_basis(2))
		for (auto const &v : word_basis(2)) {
			Complex lhs = 0.0;
			for (auto const &[w, c] : shuffle_product(u, v).terms())
				lhs += c.get_d() * s[w];
			EXPECT_LT(std::abs(lhs - s[u] * s[v]), 1e-9);
		}
}

TEST(Regularized, AtOneHalf)
{
	auto const s = regularized_signature(0.5, 2, cfg).series;
	EXPECT_LT(std::abs(s[Word("0")] - std::log(0.5)), 10 * cfg.abs_tol);
	EXPECT_LT(std::abs(s[Word("1")] - std::log(2.0)), 10 * cfg.abs_tol);
	EXPECT_LT(std::abs(s[Word("10")] - li2_half), 10 * cfg.abs_tol);
}

TEST(Regularized, SmallRealX)
{
	// coefficients of words involving e1 vanish as x -> 0+, like x log^k x
	double prev = 1.0;
	for (double t : {1e-1, 1e-2, 1e-3}) {
		auto const s = regularized_signature(t, 3, cfg).series;
		double m = 0.0;
		for (auto const &w : word_basis(3))
			if (w.str().find('1') != std::string::npos)
				m = std::max(m, std::abs(s[w]));
		EXPECT_LT(m, 2 * t * std::pow(1.0 - std::log(t), 2));
		EXPECT_LT(m, prev);
		prev = m;
	}
}

TEST(Regularized, LoopPrefixShiftsLog)
{
	Complex const x{0.3, 0.4};
	auto const s = regularized_signature(x, 2, cfg).series;
	auto const t = regularized_signature(x, 2, cfg, GroupWord::generator(0)).series;
	EXPECT_LT(std::abs(t[Word("0")] - s[Word("0")] - two_pi_i), 1e-9);
	EXPECT_LT(std::abs(t[Word("1")] - s[Word("1")]), 1e-9);
}

TEST(Monodromy, Generators)
{
	auto const base = regularized_signature(0.5, 2, cfg).series;
	EXPECT_EQ(monodromy_matrix(Path::constant_tangential({0, 1.0}), base, cfg), IntHeisenberg::identity());
	EXPECT_EQ(monodromy_matrix(Path::gamma0(), base, cfg), (IntHeisenberg{1, 0, 0}));
	EXPECT_EQ(monodromy_matrix(Path::gamma1(), base, cfg), (IntHeisenberg{0, -1, 0}));
}

TEST(ChenPairing, VanishesBeyondLength)
{
	// sum over S of (-1)^(3-|S|) <w, sig(gamma_S)> = 0 for |w| <= 2
	for (int mask = 0; mask < 8; ++mask) {
		std::array<int, 3> const g{mask & 1, mask >> 1 & 1, mask >> 2 & 1};
		TruncatedSeries total(2);
		for (int sub = 0; sub < 8; ++sub) {
			GroupWord w;
			for (int k = 0; k < 3; ++k)
				if (sub >> k & 1)
					w = w * GroupWord::generator(g[k]);
			double const sign = (3 - __builtin_popcount(sub)) % 2 ? -1.0 : 1.0;
			total += signature(Path::loop_word(w), 2, cfg) * Complex(sign);
		}
		for (auto const &w : word_basis(2))
			EXPECT_LT(std::abs(total[w]), 1e-8) << mask << " " << w.str();
	}
}

TEST(Config, Validation)
{
	QuadratureConfig bad;
	bad.abs_tol = -1;
	EXPECT_THROW(bad.validate(), DomainError);
	bad = {};
	bad.regularization_epsilons = {};
	EXPECT_THROW(bad.validate(), DomainError);
}
