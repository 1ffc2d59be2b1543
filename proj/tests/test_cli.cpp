#include <gtest/gtest.h>

#include <sstream>

#include "cli.hpp"
#include "mwb/io.hpp"

using mwb::cli::run;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(MWB_DATA_DIR) + "/" + name; }

bool has(const std::string& text, const std::string& needle) { return text.find(needle) != std::string::npos; }

}  // namespace

TEST(Cli, LoperadHomologyArityFour) {
  const auto r = call({"loperad", "homology", "--arity", "4"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(has(r.out, "nonzero degrees: 0\n"));
  EXPECT_TRUE(has(r.out, "total dimension: 6\n"));
}

TEST(Cli, LoperadBuildVerifiesSquareZero) {
  const auto r = call({"loperad", "build", "--arity", "5", "--shift", "2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(has(r.out, "d^2 = 0: yes"));
  EXPECT_TRUE(has(r.out, "degree shift: 8"));
}

TEST(Cli, WeylVerifyCircle) {
  const auto r = call({"weyl", "verify", "--n", "1", "--v", data("v2.json"), "--manifold", data("s1.json")});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(has(r.out, "total dimension: 1\n"));
  EXPECT_TRUE(has(r.out, "degree location: -2 (homological 2)"));
  EXPECT_TRUE(has(r.out, "status: exact"));
}

TEST(Cli, WeylVerifyThreeSphere) {
  const auto r = call({"weyl", "verify", "--n", "3", "--v", data("v3.json"), "--manifold", data("s3.json")});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(has(r.out, "total dimension: 1\n"));
}

TEST(Cli, WeylRejectsOneDimensionalOddV) {
  const auto r = call({"weyl", "verify", "--n", "1", "--v", data("v1.json"), "--manifold", data("s1.json")});
  EXPECT_EQ(r.code, 2);
  EXPECT_TRUE(has(r.err, "graded symmetry fails on (v1, v1)"));
  EXPECT_TRUE(r.out.empty());
}

TEST(Cli, WeylRejectsDimensionMismatch) {
  const auto r = call({"weyl", "verify", "--n", "3", "--v", data("v2.json"), "--manifold", data("s1.json")});
  EXPECT_EQ(r.code, 2);
  EXPECT_TRUE(has(r.err, "disagrees with the manifold file"));
}

TEST(Cli, TraceCertifyStandardFailsWithWitness) {
  const auto r = call({"trace", "certify", "--algebra", data("m2.json"), "--max-degree", "3", "--variant", "standard"});
  EXPECT_EQ(r.code, 3);
  EXPECT_TRUE(has(r.out, "status: failure"));
  EXPECT_TRUE(has(r.out, "k=3 witness"));
  EXPECT_TRUE(has(r.out, "  2 proportional 2\n"));
}

TEST(Cli, TraceCertifyCyclicSucceeds) {
  const auto r = call({"trace", "certify", "--algebra", data("m2.json"), "--variant", "cyclic-quotient"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(has(r.out, "  3 proportional 3/2\n"));
  EXPECT_TRUE(has(r.out, "normalization: c_1 = 1, c_2 = 1/2, c_3 = 1/3"));
}

TEST(Cli, TraceInducedRefusesFailedCertificate) {
  const auto r = call({"trace", "induced", "--algebra", data("m2.json"), "--variant", "standard"});
  EXPECT_EQ(r.code, 3);
  EXPECT_TRUE(has(r.out, "induced map refused: the certificate fails at k = 3"));
  const auto ok = call({"trace", "induced", "--algebra", data("dual_numbers.json")});
  EXPECT_EQ(ok.code, 0);
  EXPECT_TRUE(has(ok.out, "table induced maps:"));
}

TEST(Cli, CeHomology) {
  const auto sl2 = call({"ce", "homology", "--lie", data("sl2.json")});
  EXPECT_EQ(sl2.code, 0);
  EXPECT_TRUE(has(sl2.out, "nonzero degrees: -3, 0"));
  const auto bad = call({"ce", "homology", "--lie", data("sl2_perturbed.json")});
  EXPECT_EQ(bad.code, 3);
  EXPECT_TRUE(has(bad.out, "d_tot^2 = 0: no"));
  const auto m2 = call({"ce", "homology", "--algebra", data("m2.json"), "--cutoff", "2"});
  EXPECT_EQ(m2.code, 0);
}

TEST(Cli, HochschildHomology) {
  const auto r = call({"hochschild", "homology", "--algebra", data("dual_numbers.json"), "--max-degree", "4"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(has(r.out, "dims for m = 0..3: 2, 1, 1, 1"));
}

TEST(Cli, TreesAndStrata) {
  const auto e = call({"trees", "enumerate", "--arity", "4", "--edges", "2"});
  EXPECT_EQ(e.code, 0);
  EXPECT_TRUE(has(e.out, "trees with 2 internal edges: 15"));
  const auto c = call({"trees", "compose", "--upper", "(a b)", "--at", "b", "--lower", "(c d)"});
  EXPECT_TRUE(has(c.out, "composite: (a (c d))"));
  const auto s = call({"fm", "strata", "--arity", "3", "--dimension", "2"});
  EXPECT_TRUE(has(s.out, "strata: 4"));
  const auto i = call({"fm", "incidence", "--tree", "(1 2 3)", "--other", "((1 2) 3)"});
  EXPECT_TRUE(has(i.out, "incident: yes"));
}

TEST(Cli, OutputIsDeterministic) {
  const std::vector<std::string> args{"trace", "certify", "--algebra", data("m2.json"), "--variant", "cyclic"};
  EXPECT_EQ(call(args).out, call(args).out);
  auto json_args = args;
  json_args.push_back("--json");
  const auto a = call(json_args), b = call(json_args);
  EXPECT_EQ(a.out, b.out);
  const auto j = mwb::Json::parse(a.out);
  EXPECT_EQ(j["results"]["certified"], "yes");
  EXPECT_EQ(j["inputs"][0]["sha256"].get<std::string>().size(), 64u);
}

TEST(Cli, TimingOnlyWhenAsked) {
  const auto r = call({"loperad", "homology", "--arity", "3", "--timing"});
  EXPECT_TRUE(has(r.out, "wall time: "));
  EXPECT_FALSE(has(call({"loperad", "homology", "--arity", "3"}).out, "wall time"));
}

TEST(Cli, ValidationErrorsExitTwo) {
  EXPECT_EQ(call({"loperad", "homology", "--arity", "4", "--bogus"}).code, 2);
  EXPECT_EQ(call({"nonsense"}).code, 2);
  EXPECT_EQ(call({}).code, 2);
  const auto guard = call({"loperad", "homology", "--arity", "9"});
  EXPECT_EQ(guard.code, 2);
  EXPECT_TRUE(has(guard.err, "raise --max-arity"));
  EXPECT_EQ(call({"hochschild", "homology", "--algebra", "/nonexistent.json"}).code, 2);
  EXPECT_EQ(call({"trees", "compose", "--upper", "(a b", "--at", "b", "--lower", "(c d)"}).code, 2);
  EXPECT_EQ(call({"trace", "certify", "--algebra", data("m2.json"), "--variant", "other"}).code, 2);
  EXPECT_EQ(call({"trace", "certify", "--algebra", data("m2.json"), "--max-chain-dim", "10"}).code, 2);
}

TEST(Cli, HelpExitsZero) {
  const auto r = call({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(has(r.out, "weyl"));
}
