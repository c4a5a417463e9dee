#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "gjq/io.hpp"
#include "gjq_cli.hpp"

using namespace gjq;
using gjq::cli::CliConfig;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome run(const CliConfig& c) {
  std::ostringstream out, err;
  const int code = cli::run(c, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream is(s);
  for (std::string l; std::getline(is, l);) v.push_back(l);
  return v;
}

}  // namespace

TEST(Format, RoundTripsEveryDouble) {
  for (double v : {0.0, -0.0, 1.0 / 3, -0.74155477232224776, 5e-324, 1.7976931348623157e308, 2.0}) {
    EXPECT_EQ(parse_real(format_real(v)), v);
  }
  EXPECT_EQ(format_real(2.0), "2");
  EXPECT_EQ(format_real(1.0 / 3, 5), "0.33333");
  EXPECT_THROW(format_real(1.0, 18), gjq::domain_error);
  EXPECT_THROW(parse_real("1.5x"), gjq::domain_error);
  EXPECT_EQ(parse_real(" +2.5\r"), 2.5);
}

TEST(RuleCsv, RoundTripIsBitExact) {
  const auto rule = gauss_jacobi_rule(100, 50, 41);
  std::stringstream ss;
  write_rule_csv(ss, rule);
  const auto t = read_rule_csv(ss);
  ASSERT_EQ(t.nodes.size(), rule.size());
  EXPECT_EQ(t.nodes, rule.nodes);
  EXPECT_EQ(t.weights, rule.weights);
  EXPECT_EQ(t.weights_scaled, rule.weights_scaled);
  for (std::size_t i = 0; i < t.ell.size(); ++i) EXPECT_EQ(t.ell[i], static_cast<int>(i) + 1);
}

TEST(RuleCsv, RejectsMalformedInput) {
  std::istringstream bad_header("ell,x,w\n1,0,2\n");
  EXPECT_THROW(read_rule_csv(bad_header), gjq::domain_error);
  std::istringstream short_row("ell,node,weight,weight_scaled\n1,0,2\n");
  EXPECT_THROW(read_rule_csv(short_row), gjq::domain_error);
  std::istringstream empty("");
  EXPECT_THROW(read_rule_csv(empty), gjq::domain_error);
}

TEST(RuleJson, FixedKeys) {
  const auto j = rule_to_json(gauss_jacobi_rule(30, 2, 3));
  for (const char* k : {"n", "alpha", "beta", "order", "J", "nodes", "weights", "weights_scaled", "flags"})
    EXPECT_TRUE(j.contains(k)) << k;
  EXPECT_EQ(j["nodes"].size(), 30u);
  EXPECT_EQ(j["flags"][0].size(), 4u);
}

TEST(Cli, NodesFirstRowOfExampleOne) {
  const auto r = run({.command = "nodes", .n = 25, .alpha = 50, .beta = 41, .order = 0});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto l = lines(r.out);
  ASSERT_EQ(l.size(), 26u);
  EXPECT_EQ(l[0], "ell,node,regime");
  EXPECT_NEAR(parse_real(l[1].substr(2, l[1].find(',', 2) - 2)), -0.7415548, 5e-8) << l[1];
  const auto seven = run({.command = "nodes", .n = 25, .alpha = 50, .beta = 41, .order = 0, .digits = 7});
  EXPECT_EQ(lines(seven.out)[1], "1,-0.7415548,bulk");
}

TEST(Cli, OnePointRuleAsJson) {
  const auto r = run({.command = "rule", .n = 1, .format = "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["nodes"], nlohmann::json::array({0.0}));
  EXPECT_EQ(j["weights"], nlohmann::json::array({2.0}));
}

TEST(Cli, WeightsCommandOmitsNodes) {
  const auto r = run({.command = "weights", .n = 30, .alpha = 1, .beta = 2, .format = "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_FALSE(j.contains("nodes"));
  EXPECT_EQ(j["weights"].size(), 30u);
  const auto csv = run({.command = "weights", .n = 30, .alpha = 1, .beta = 2});
  EXPECT_EQ(lines(csv.out)[0], "ell,weight,weight_scaled");
}

TEST(Cli, CheckReproducesBulkAccuracy) {
  const auto r = run({.command = "check", .n = 100, .alpha = 50, .beta = 41, .order = 2});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto l = lines(r.out);
  ASSERT_EQ(l.size(), 101u);
  EXPECT_EQ(l[0], "ell,node_err_abs,node_err_rel,w_err_rel,omega_err_rel");
  for (int ell = 10; ell <= 90; ++ell) {
    std::istringstream row(l[ell]);
    std::string idx, err;
    std::getline(row, idx, ',');
    std::getline(row, err, ',');
    EXPECT_EQ(std::stoi(idx), ell);
    EXPECT_LT(parse_real(err), 1e-8) << ell;
  }
}

TEST(Cli, OracleOutputAllowsThirtyTwoDigits) {
  const auto r = run({.command = "nodes", .n = 5, .alpha = 1, .beta = 1, .oracle = true, .digits = 32});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto l = lines(r.out);
  EXPECT_EQ(l[0], "ell,node");
  // The middle zero of a symmetric degree-5 polynomial is 0.
  EXPECT_EQ(l[3].substr(0, 2), "3,");
  const auto rule = run({.command = "rule", .n = 5, .alpha = 1, .beta = 1, .oracle = true, .digits = 32});
  ASSERT_EQ(rule.code, 0) << rule.err;
  const auto row = lines(rule.out)[1];
  EXPECT_GT(row.size(), 60u) << row;
}

TEST(Cli, EvalAndBench) {
  const auto e = run({.command = "eval", .n = 125, .alpha = 90, .beta = 75, .x = {0.0, 0.3}});
  ASSERT_EQ(e.code, 0) << e.err;
  EXPECT_EQ(lines(e.out).size(), 3u);
  const auto o = run({.command = "eval", .n = 125, .alpha = 90, .beta = 75, .oracle = true, .x = {0.0}});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_EQ(lines(o.out)[0], "x,value,derivative");
  const auto b = run({.command = "bench", .n = 200, .alpha = 3, .beta = 4, .format = "json"});
  ASSERT_EQ(b.code, 0) << b.err;
  const auto j = nlohmann::json::parse(b.out);
  for (const char* k : {"params", "nodes", "weights"}) EXPECT_TRUE(j["phases"].contains(k));
}

TEST(Cli, WritesToAFile) {
  const auto path = std::filesystem::temp_directory_path() / "gjq_cli_test_rule.csv";
  const auto r = run({.command = "rule", .n = 40, .alpha = 2, .beta = 2, .output = path.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream f(path);
  const auto t = read_rule_csv(f);
  EXPECT_EQ(t.nodes.size(), 40u);
  std::filesystem::remove(path);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({.command = "nodes", .n = 10, .alpha = -2}).code, 2);
  EXPECT_EQ(run({.command = "nodes", .n = 0}).code, 2);
  EXPECT_EQ(run({.command = "nodes", .n = 10, .digits = 18}).code, 2);
  EXPECT_EQ(run({.command = "nodes", .n = 10, .oracle = true, .digits = 33}).code, 2);
  EXPECT_EQ(run({.command = "nodes", .n = 10, .format = "xml"}).code, 2);
  EXPECT_EQ(run({.command = "nodes", .n = 10, .order = 3}).code, 2);
  EXPECT_EQ(run({.command = "plot", .n = 10}).code, 2);
  EXPECT_EQ(run({.command = "eval", .n = 10, .alpha = 1, .beta = 1, .x = {0.999}}).code, 2);
  EXPECT_EQ(run({.command = "rule", .n = 10, .output = "/nonexistent/dir/x.csv"}).code, 2);
  const auto big = run({.command = "check", .n = 6000, .alpha = 1, .beta = 1});
  EXPECT_EQ(big.code, 3);
  EXPECT_EQ(std::count(big.err.begin(), big.err.end(), '\n'), 1);
  EXPECT_EQ(big.err.rfind("gjq: ", 0), 0u);
}
