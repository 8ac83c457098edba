#include "comet/cli.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace comet;

namespace {

const std::string corpus = COMET_CORPUS;

struct Outcome {
    int code;
    std::string out, err;
};

Outcome run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string temp_program(const std::string& name, const std::string& text) {
    auto path = std::filesystem::temp_directory_path() / ("comet_test_" + name + ".comet");
    std::ofstream(path) << text;
    return path.string();
}

}  // namespace

TEST(Cli, CheckAcceptsTheCorpus) {
    EXPECT_EQ(run({"check", corpus + "/disease.comet"}).code, 0);
    EXPECT_EQ(run({"check", corpus + "/burglary.comet"}).code, 0);
}

TEST(Cli, CheckOfAnEmptyFileIsSilent) {
    Outcome r = run({"check", temp_program("empty", "")});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "");
    EXPECT_EQ(r.err, "");
}

TEST(Cli, CheckReportsTheFailedRule) {
    Outcome r = run({"check", temp_program("bad", "def bad(x : 2) : 2 (x) 2 = let z = x in z (x) z")});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("LinearityViolation"), std::string::npos) << r.err;
    EXPECT_NE(r.err.find("Tpair"), std::string::npos) << r.err;
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run({"check", temp_program("parse", "def s : 2 = (")}).code, 1);
    EXPECT_EQ(run({"check", "/nonexistent/file.comet"}).code, 1);
    EXPECT_EQ(run({"frobnicate"}).code, 1);
    EXPECT_EQ(run({}).code, 1);
    std::string p = temp_program("codes", "def s : 2 = 1/2\ndef f(x : 2) : 2 = x\ndef z(x : 2) : 2 = 0");
    EXPECT_EQ(run({"eval", p, "--def", "f"}).code, 3);
    EXPECT_EQ(run({"infer", p, "--state", "s", "--pred", "z"}).code, 4);
    EXPECT_EQ(run({"infer", p, "--state", "s", "--pred", "f", "--marginal", "3"}).code, 1);
    EXPECT_EQ(run({"eval", p, "--def", "missing"}).code, 2);
}

TEST(Cli, EvalPrintsExactAndDecimal) {
    Outcome r = run({"eval", corpus + "/disease.comet", "--def", "subject"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("inl * : 1/100 (0.01)"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("inr * : 99/100 (0.99)"), std::string::npos) << r.out;
}

TEST(Cli, EvalOfAHalf) {
    Outcome r = run({"eval", temp_program("half", "def u : 2 = 1/2"), "--def", "u"});
    EXPECT_NE(r.out.find("inl * : 1/2 (0.5)"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("inr * : 1/2 (0.5)"), std::string::npos) << r.out;
}

TEST(Cli, InferDisease) {
    Outcome r = run({"infer", corpus + "/disease.comet", "--state", "subject", "--pred", "positive_result"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("inl * : 25/322 (0.07763975155)"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("witness : n = 10"), std::string::npos) << r.out;
}

TEST(Cli, InferOnTopLeavesTheStateAlone) {
    std::string p = temp_program("top", "def s : 2 = 2/7\ndef t(x : 2) : 2 = top");
    Outcome r = run({"infer", p, "--state", "s", "--pred", "t"});
    EXPECT_NE(r.out.find("posterior:\n    inl * : 2/7"), std::string::npos) << r.out;
}

TEST(Cli, FileQueriesRunInOrder) {
    Outcome r = run({"eval", corpus + "/disease.comet"});
    EXPECT_EQ(r.code, 0);
    auto v = r.out.find("validity subject given");
    auto i = r.out.find("infer subject given");
    ASSERT_NE(v, std::string::npos);
    ASSERT_NE(i, std::string::npos);
    EXPECT_LT(v, i);
}

TEST(Cli, StructuredBurglary) {
    Outcome r = run({"--format", "structured", "infer", corpus + "/burglary.comet", "--state", "prior", "--pred",
                 "alarm_call", "--marginal", "1"});
    ASSERT_EQ(r.code, 0);
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["program"], "burglary.comet");
    const auto& q = j["results"][0];
    EXPECT_EQ(q["validity"]["num"], 521389757);
    EXPECT_EQ(q["validity"]["den"], 10000000000LL);
    EXPECT_EQ(q["witness"], 20);
    EXPECT_EQ(q["marginal"][0]["num"], 8490170);
    EXPECT_EQ(q["marginal"][0]["den"], 521389757);
}

TEST(Cli, StructuredErrors) {
    Outcome r = run({"check", temp_program("serr", "def bad : 2 = 3/4 (+) 1/2"), "--format", "structured"});
    EXPECT_EQ(r.code, 2);
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["error"]["kind"], "TypeError");
    EXPECT_EQ(j["error"]["rule"], "Tovee");
}

TEST(Cli, StructuredOutputIsStable) {
    std::vector<std::string> args{"--format", "structured", "eval", corpus + "/burglary.comet"};
    EXPECT_EQ(run(args).out, run(args).out);
}

TEST(Cli, LawSmokeRun) {
    Outcome r = run({"laws", "--instances", "1", "--seed", "3"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("0 failures, seed 3"), std::string::npos) << r.out;
    EXPECT_EQ(run({"laws", "--instances", "1", "--seed", "3"}).out, r.out);
}
