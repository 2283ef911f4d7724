#include "cli.hpp"
#include "gtest/gtest.h"

#include <set>

using namespace alblab::cli;
using nlohmann::json;

namespace {

Outcome run_ok(std::vector<std::string> const &args)
{
	auto out = run(args, std::string());
	EXPECT_EQ(out.exit_code, exit_ok) << out.output.dump();
	return out;
}

} // namespace

TEST(Cli, IiEvalGamma0)
{
	auto const out = run_ok({"ii", "eval", "--word", "0", "--path", R"({"loop":"gamma0","turns":1})"});
	EXPECT_NEAR(out.output["value"][0].get<double>(), 0.0, 1e-9);
	EXPECT_NEAR(out.output["value"][1].get<double>(), 6.283185307179586, 1e-9);
}

TEST(Cli, HodgeOrbit)
{
	auto const out = run_ok({"hodge", "orbit", "--N", "1,1,0", "--F", "0,0,0"});
	EXPECT_TRUE(out.output["generates"].get<bool>());
	auto const no = run_ok({"hodge", "orbit", "--N", "1,0,0", "--F", "0,1/2,0"});
	EXPECT_FALSE(no.output["generates"].get<bool>());
	auto const cx = run_ok({"hodge", "orbit", "--N", "1,0,0", "--F", "0.5+2i,0,1i"});
	EXPECT_TRUE(cx.output["generates"].get<bool>());
}

TEST(Cli, AlbExtendAtZero)
{
	auto const out = run_ok({"alb", "extend", "--x", "0"});
	for (auto const *k : {"q", "beta", "lambda"})
		EXPECT_EQ(out.output[k], json::array({0.0, 0.0})) << k;
}

TEST(Cli, AlbMapFields)
{
	auto const out = run_ok({"alb", "map", "--x", "0.5", "--loop-prefix", "0 1"});
	for (auto const *k : {"alpha", "beta", "lambda", "reduction_matrix"})
		EXPECT_TRUE(out.output.contains(k)) << k;
}

TEST(Cli, AlbMonodromy)
{
	auto const out = run_ok({"alb", "monodromy", "--word", "0 1 0^-1 1^-1"});
	EXPECT_EQ(out.output["a"], 0);
	EXPECT_EQ(out.output["b"], 0);
	EXPECT_EQ(out.output["c"], 1);
	EXPECT_EQ(out.output["matrix"], json::parse("[[1,0,1],[0,1,0],[0,0,1]]"));
}

TEST(Cli, ExactCommands)
{
	EXPECT_EQ(run_ok({"bar", "basis", "--level", "4"}).output["count"], 31);
	EXPECT_EQ(run_ok({"bar", "shuffle", "--a", "01", "--b", "0"}).output, json::parse(R"({"001":"2/1","010":"1/1"})"));
	auto const bch = run_ok({"malcev", "bch", "--level", "2", "--a", R"({"0":"1"})", "--b", R"({"1":"1"})"});
	EXPECT_EQ(bch.output["element"], json::parse(R"({"0":"1/1","1":"1/1","01":"1/2","10":"-1/2"})"));
	auto const coords = run_ok({"malcev", "coords", "--word", "0 1 0^-1 1^-1", "--level", "2"});
	EXPECT_EQ(coords.output["hall"].size(), 1u);
	EXPECT_EQ(coords.output["hall"][0]["bracket"], "[0,1]");
	EXPECT_EQ(run_ok({"malcev", "hall", "--level", "4"}).output["per_degree"], json::parse("[2,1,2,3]"));
	EXPECT_EQ(run_ok({"malcev", "classify", "--series", R"({"":"1","01":"1"})"}).output["class"], "neither");
}

TEST(Cli, Rmf)
{
	auto const out = run_ok({"hodge", "rmf", "--matrix", "[[0,1],[0,0]]", "--weights", "[0,0]"});
	EXPECT_TRUE(out.output["exists"].get<bool>());
	EXPECT_EQ(out.output["filtration"].size(), 2u);
	EXPECT_TRUE(out.output["filtration"].contains("-1"));
	auto const none = run_ok({"hodge", "rmf", "--matrix", "[[0,1],[0,0]]", "--weights", "[0,1]"});
	EXPECT_FALSE(none.output["exists"].get<bool>());
}

TEST(Cli, ExitCodes)
{
	EXPECT_EQ(run({"frobnicate"}, std::string()).exit_code, exit_usage);
	EXPECT_EQ(run({"bar", "basis"}, std::string()).exit_code, exit_usage);
	EXPECT_EQ(run({"ii", "eval", "--word", "0", "--path", "{oops"}, std::string()).exit_code, exit_bad_json);
	EXPECT_EQ(run({"alb", "extend", "--x", "0.7"}, std::string()).exit_code, exit_domain);
	EXPECT_EQ(run({"hodge", "chart", "--q", "0", "--beta", "1", "--lambda", "0"}, std::string()).exit_code, exit_domain);
	auto const err = run({"alb", "map", "--x", "1"}, std::string());
	EXPECT_EQ(err.exit_code, exit_domain);
	EXPECT_TRUE(err.output.contains("error"));
}

TEST(Cli, TolerancePrecedence)
{
	// the environment value applies unless a flag overrides it
	EXPECT_EQ(run({"alb", "map", "--x", "0.5"}, std::string("-1")).exit_code, exit_domain);
	EXPECT_EQ(run({"--abs-tol", "1e-9", "alb", "map", "--x", "0.5"}, std::string("-1")).exit_code, exit_ok);
	EXPECT_EQ(run({"alb", "map", "--x", "0.5"}, std::string("junk")).exit_code, exit_domain);
}

TEST(Cli, CorruptedToleranceSelftestReportsFailures)
{
	auto const out = run({"--abs-tol", "1", "selftest", "quick", "--only", "2,3"}, std::string());
	EXPECT_EQ(out.exit_code, exit_ok);
	EXPECT_FALSE(out.output["passed"].get<bool>());
	EXPECT_EQ(out.output["failed_criteria"], 2);
	EXPECT_GT(out.output["failed_checks"].get<long>(), 0);
	for (auto const &c : out.output["criteria"])
		EXPECT_GT(c["worst"].get<double>(), 1e-9);
}

TEST(Cli, Batch)
{
	auto const out = run_batch(R"([{"command":"bar basis","args":{"level":1}},
	                               {"command":"alb extend","args":{"x":"0.7"}},
	                               {"command":"malcev hall","args":{"level":2}}])",
	                           std::string(), 3);
	ASSERT_EQ(out.output.size(), 3u);
	EXPECT_EQ(out.output[0]["result"]["count"], 3);
	EXPECT_EQ(out.output[1]["exit_code"], exit_domain);
	EXPECT_EQ(out.output[2]["result"]["total"], 3);
	EXPECT_EQ(out.exit_code, exit_domain);
	EXPECT_EQ(run_batch("[{", std::string(), 1).exit_code, exit_bad_json);
	auto const single = run_batch(R"({"command":"bar coproduct","args":{"word":"10"}})", std::string(), 1);
	EXPECT_EQ(single.output["splittings"].size(), 3u);
}

TEST(Cli, CommandTableIsRoutable)
{
	std::set<std::string> ops;
	for (auto const &c : command_table()) {
		std::vector<std::string> args;
		std::istringstream in(c.command);
		for (std::string w; in >> w;)
			args.push_back(w);
		args.push_back("--help");
		auto const out = run(args, std::string());
		EXPECT_FALSE(out.help.empty()) << c.command;
		ops.insert(c.operation);
	}
	EXPECT_EQ(ops.size(), command_table().size());
}
