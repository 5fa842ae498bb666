#include "oracles.hpp"

#include <qflag/cli.hpp>
#include <qflag/parse.hpp>

#include <gtest/gtest.h>

#include <random>
#include <sstream>

using namespace qflag;
using qflag::cli::json;

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "qflag");
    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

UPlusExpr random_expression(std::mt19937& rng, int rank) {
    std::uniform_int_distribution<int> letter(1, rank), len(0, 3), terms(1, 3), dp(1, 3);
    UPlusExpr x;
    for (int t = terms(rng); t > 0; --t) {
        UPlusExpr m = UPlusExpr::one();
        for (int l = len(rng); l > 0; --l)
            m = m * UPlusExpr::generator(letter(rng), dp(rng));
        x += oracle::random_scalar(rng) * m;
    }
    return x;
}

} // namespace

TEST(Parser, Examples) {
    const QuantumAlgebra alg(CartanDatum::from_label("A2"));
    const UPlusExpr e1 = UPlusExpr::generator(1), e2 = UPlusExpr::generator(2);
    EXPECT_EQ(parse_expr("E1*E2 - q^-1*E2*E1", 2), e1 * e2 - RatScalar::q_pow(-1) * (e2 * e1));
    EXPECT_EQ(parse_expr("E1^(2)*E2", 2), UPlusExpr::generator(1, 2) * e2);
    EXPECT_TRUE(alg.equals(parse_expr("E1^2", 2), (RatScalar::q_pow(1) + RatScalar::q_pow(-1)) * UPlusExpr::generator(1, 2)));
    EXPECT_EQ(parse_expr("(1 - q^2) * E1 / (1 + q)", 2), (RatScalar(1) - RatScalar::q_pow(1)) * e1);
    EXPECT_EQ(parse_expr("-E2", 2), RatScalar(-1) * e2);
    EXPECT_EQ(parse_expr("3", 2), UPlusExpr::scalar(RatScalar(3)));
}

TEST(Parser, ErrorsCarryOffsets) {
    auto offset_of = [](const std::string& text) -> long {
        try {
            parse_expr(text, 2);
        } catch (const ParseError& e) {
            return static_cast<long>(e.offset());
        }
        return -1;
    };
    EXPECT_EQ(offset_of("E1 + + E2"), 5);
    EXPECT_EQ(offset_of("E1 * E3"), 5);
    EXPECT_EQ(offset_of("E1 / E2"), 3);
    EXPECT_EQ(offset_of("E1^-1"), 0);
    EXPECT_EQ(offset_of("(E1"), 3);
    EXPECT_EQ(offset_of("F1"), 0);
    EXPECT_EQ(offset_of(""), 0);
    EXPECT_EQ(offset_of("E1 E2"), 3);
    EXPECT_EQ(offset_of("1/0"), 1);
}

TEST(Parser, RoundTripsRenderedExpressions) {
    std::mt19937 rng(41);
    for (int trial = 0; trial < 500; ++trial) {
        const int rank = 2 + trial % 3;
        const UPlusExpr x = random_expression(rng, rank);
        const std::string text = x.str();
        UPlusExpr y;
        ASSERT_NO_THROW(y = parse_expr(text, rank)) << text;
        ASSERT_EQ(y, x) << text;
    }
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run_cli({"check", "prop41", "--type", "A2", "--orientation", "2>1"}).code, 0);
    EXPECT_EQ(run_cli({}).code, 2);
    EXPECT_EQ(run_cli({"bogus"}).code, 2);
    EXPECT_EQ(run_cli({"check", "nosuchsuite", "--type", "A2"}).code, 2);
    EXPECT_EQ(run_cli({"rootdata", "--type", "G2"}).code, 2);
    EXPECT_EQ(run_cli({"rootdata", "--type", "A2", "--word", "1,1,2"}).code, 2);
    EXPECT_EQ(run_cli({"check", "prop41", "--type", "B2"}).code, 2);
    EXPECT_EQ(run_cli({"quiver", "--type", "A2", "--word", "1,2,1", "--orientation", "2>1"}).code, 2);
    const auto r = run_cli({"pbw", "coords", "--type", "A2", "--word", "1,2,1", "--expr", "E1 + + E2"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("offset 5"), std::string::npos) << r.err;
}

TEST(Cli, BasisOfWeightAlpha1PlusAlpha2) {
    const auto r = run_cli({"basis", "--type", "A2", "--word", "1,2,1", "--weight", "1,1"});
    ASSERT_EQ(r.code, 0) << r.err;
    const json j = json::parse(r.out);
    EXPECT_EQ(j.begin().key(), "schema");
    EXPECT_EQ(j["schema"], 1);
    ASSERT_EQ(j["elements"].size(), 2u);
    const json& top = j["elements"][1];
    EXPECT_EQ(top["datum"], json::parse("[1,0,1]"));
    EXPECT_EQ(top["dual_pbw"]["[1,0,1]"], "1");
    EXPECT_EQ(top["dual_pbw"]["[0,1,0]"], "-q");
}

TEST(Cli, PbwCoordinatesOfRootVector) {
    const auto r = run_cli({"pbw", "coords", "--type", "A2", "--word", "1,2,1", "--expr", "E1*E2 - q^-1*E2*E1"});
    ASSERT_EQ(r.code, 0) << r.err;
    const json j = json::parse(r.out);
    EXPECT_EQ(j["command"], "pbw coords");
    EXPECT_NE(r.out.find("-q^-1"), std::string::npos) << r.out;
}

TEST(Cli, QuiverTable) {
    const auto r = run_cli({"quiver", "--type", "A3", "--orientation", "2>1,3>2"});
    ASSERT_EQ(r.code, 0) << r.err;
    const json j = json::parse(r.out);
    EXPECT_EQ(j["adapted_word"], json::parse("[1,2,1,3,2,1]"));
    EXPECT_EQ(j["ar_table"].size(), 6u);
}

TEST(Cli, SuitesPass) {
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"check", "serre", "--type", "B2"},
             {"check", "pairing", "--type", "A3"},
             {"check", "prop21", "--type", "B2", "--word", "2,1,2,1"},
             {"check", "cor22", "--type", "A2", "--orientation", "1>2"},
             {"check", "prop31", "--type", "A2", "--word", "1,2,1"},
             {"check", "prop32", "--type", "A2", "--word", "2,1,2", "--height", "3"},
             {"check", "prop42", "--type", "A2"},
             {"check", "thm51", "--type", "A2", "--height", "3"},
             {"check", "remark43", "--type", "A2"},
         }) {
        const auto r = run_cli(args);
        EXPECT_EQ(r.code, 0) << args[1] << ": " << r.err << r.out.substr(0, 400);
    }
}

TEST(Cli, CsvOutput) {
    const auto r = run_cli({"check", "serre", "--type", "A2", "--format", "csv"});
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(r.out.substr(0, r.out.find('\n')).find("suite"), 0u) << r.out;
}

TEST(Cli, MultScanOnNonAdaptedWordReportsObservations) {
    const auto r = run_cli({"mult-scan", "--type", "A3", "--word", "2,1,2,3,2,1", "--height", "2"});
    EXPECT_EQ(r.code, 0) << r.err;
    const json j = json::parse(r.out);
    EXPECT_EQ(j["adapted"], false);
}

TEST(Cli, FlagMinorRows) {
    const auto r = run_cli({"flag-minors", "--type", "A3", "--rows", "2,3"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("\"prefix\""), std::string::npos);
}
