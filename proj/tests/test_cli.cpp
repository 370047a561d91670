#include "huffhyp/cli.hpp"

#include <gtest/gtest.h>

#include <json.hpp>

#include <sstream>

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args)
{
    std::ostringstream out;
    std::ostringstream err;
    const int code = huffhyp::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, EvalTwoF1)
{
    const Result r = run({"eval2f1", "--p", "5", "--lambda", "-1"});
    EXPECT_EQ(r.code, 0);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["q"], 5);
    EXPECT_EQ(j["lambda"], 4);
    EXPECT_EQ(j["value"], "2/5");
    EXPECT_DOUBLE_EQ(j["decimal"].get<double>(), 0.4);
}

TEST(Cli, EvalOverExtensionField)
{
    const Result r = run({"eval2f1", "--p", "3", "--r", "2", "--lambda", "1,2"});
    EXPECT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["q"], 9);
    EXPECT_EQ(j["lambda"], "1,2");
}

TEST(Cli, Count)
{
    const Result r = run({"count", "--model", "ghuff", "--p", "5", "--a", "1", "--b", "4"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "{\"affine\":5,\"at_infinity\":3,\"total\":8}\n");
    const Result e = run({"count", "--model", "edwards", "--p", "5", "--d2", "4"});
    EXPECT_EQ(e.out, "{\"affine\":4,\"at_infinity\":0,\"total\":4}\n");
    EXPECT_EQ(run({"count", "--model", "huff", "--p", "5", "--a", "1", "--b", "4"}).code, 1);
    EXPECT_EQ(run({"count", "--model", "cubic", "--p", "5", "--a", "1", "--b", "4"}).code, 1);
    EXPECT_EQ(run({"count", "--model", "weier", "--p", "5"}).code, 1);
}

TEST(Cli, Special)
{
    const Result r = run({"special", "--p", "13"});
    EXPECT_EQ(r.code, 0);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["x"], 3);
    EXPECT_EQ(j["y"], 2);
    EXPECT_EQ(j["two_f_one_minus1"], "-6/13");
    EXPECT_EQ(j["engine"], "-6/13");
    const auto k = nlohmann::json::parse(run({"special", "--p", "7"}).out);
    EXPECT_TRUE(k["x"].is_null());
    EXPECT_EQ(k["two_f_one_minus1"], "0/1");
    EXPECT_EQ(run({"special", "--p", "9"}).code, 1);
}

TEST(Cli, FieldAndCharsum)
{
    const auto f = nlohmann::json::parse(run({"field", "--p", "3", "--r", "2"}).out);
    EXPECT_EQ(f["q"], 9);
    EXPECT_EQ(f["modulus"], nlohmann::json::parse("[1,0]"));
    EXPECT_EQ(f["generator"], "1,1");
    const auto c = nlohmann::json::parse(run({"charsum", "--p", "5", "--a", "1", "--b", "1"}).out);
    EXPECT_EQ(c["jacobi"]["canonical"], "-1/1 + -2/1*z");
    EXPECT_NEAR(c["jacobi"]["im"].get<double>(), -2.0, 1e-12);
    EXPECT_EQ(run({"field", "--p", "4"}).code, 1);
}

TEST(Cli, EvalGeneralSeries)
{
    const Result r = run({"evalnfn", "--p", "5", "--top", "2,2", "--bottom", "0", "--x", "4"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(nlohmann::json::parse(r.out)["value"], "2/5");
    EXPECT_EQ(run({"evalnfn", "--p", "5", "--top", "2,2", "--x", "4"}).code, 1);
}

TEST(Cli, AuditExitCodes)
{
    const Result fail = run({"audit", "--identity", "T4.1", "--qmax", "5"});
    EXPECT_EQ(fail.code, 3);
    EXPECT_TRUE(nlohmann::json::parse(fail.out).is_array());
    const Result pass = run({"audit", "--identity", "C1", "--qmax", "13", "--format", "csv", "--jobs", "2"});
    EXPECT_EQ(pass.code, 0);
    EXPECT_EQ(pass.out.rfind("identity,q,a,b,lambda,lhs,rhs,residual,pass\r\n", 0), 0u);
    EXPECT_EQ(run({"audit", "--all", "--provenance", "greene", "--qmax", "13"}).code, 0);
    EXPECT_EQ(run({"audit", "--identity", "X", "--qmax", "5"}).code, 1);
    EXPECT_EQ(run({"audit", "--qmax", "5"}).code, 1);
    EXPECT_EQ(run({"audit", "--all", "--qmax", "5", "--format", "xml"}).code, 1);
    EXPECT_EQ(run({"audit", "--all", "--qmax", "5", "--provenance", "folk"}).code, 1);
}

TEST(Cli, AuditIsDeterministic)
{
    const auto a = run({"audit", "--all", "--qmax", "11", "--jobs", "1"});
    const auto b = run({"audit", "--all", "--qmax", "11", "--jobs", "3"});
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.code, 3);
}

TEST(Cli, UsageErrors)
{
    EXPECT_EQ(run({}).code, 1);
    EXPECT_EQ(run({"frobnicate"}).code, 1);
    EXPECT_EQ(run({"eval2f1", "--p", "5"}).code, 1);
    EXPECT_EQ(run({"eval2f1", "--p", "5", "--lambda", "x"}).code, 1);
    EXPECT_EQ(run({"eval2f1", "--p", "5", "--lambda", "1", "--bogus"}).code, 1);
    const Result help = run({"--help"});
    EXPECT_EQ(help.code, 0);
    EXPECT_NE(help.out.find("audit"), std::string::npos);
}

TEST(Cli, FieldCapOverride)
{
    EXPECT_EQ(run({"--qcap", "10", "eval2f1", "--p", "11", "--lambda", "2"}).code, 1);
    ::unsetenv(huffhyp::kFieldCapEnv);
    EXPECT_EQ(run({"eval2f1", "--p", "11", "--lambda", "2"}).code, 0);
}

TEST(Cli, Lemmas)
{
    const Result r = run({"lemmas", "--q", "5,9", "--seed", "3"});
    EXPECT_EQ(r.code, 0);
    const auto j = nlohmann::json::parse(r.out);
    ASSERT_TRUE(j.is_array());
    for (const auto& row : j) {
        EXPECT_TRUE(row["pass"].get<bool>()) << row.dump();
    }
}
