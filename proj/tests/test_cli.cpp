#include "cli.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "mfspec");
    std::ostringstream out;
    std::ostringstream err;
    const int code = mfspec::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("mfspec_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
        unsetenv("MIDAS_SPECD_SEED");
    }
    void TearDown() override {
        fs::remove_all(dir_);
        unsetenv("MIDAS_SPECD_SEED");
    }
    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    fs::path dir_;
};

}  // namespace

TEST_F(CliTest, NoArgumentsIsUsageError) {
    EXPECT_EQ(run({}).code, 2);
}

TEST_F(CliTest, HelpExitsZero) {
    const Result r = run({"--help"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("oracle"), std::string::npos);
}

TEST_F(CliTest, UnknownFlagIsUsageError) {
    EXPECT_EQ(run({"mc", "--bogus"}).code, 2);
    EXPECT_EQ(run({"mc", "--T", "50"}).code, 2);
    EXPECT_EQ(run({"mc", "--T", "50", "--m", "4", "--methods", "wald"}).code, 2);
    EXPECT_EQ(run({"test", "--low", "x.csv"}).code, 2);
}

TEST_F(CliTest, SimulateThenTestReportsAllMethods) {
    ASSERT_EQ(run({"simulate", "--T", "120", "--m", "6", "--theta", "0", "--seed", "4", "--low",
                   path("low.csv"), "--high", path("high.csv")})
                  .code,
              0);
    const Result r = run({"test", "--low", path("low.csv"), "--high", path("high.csv"), "--out",
                          path("out.csv")});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("T=120 m=6"), std::string::npos);
    const auto rows = lines(slurp(path("out.csv")));
    ASSERT_EQ(rows.size(), 5u);
    EXPECT_EQ(rows[0], "method,statistic,df,p_value,reject,diagnostics");
    for (const char* name : {"Miller", "AGK", "New", "LambdaT"}) {
        bool found = false;
        for (const auto& row : rows) found = found || row.rfind(std::string(name) + ",", 0) == 0;
        EXPECT_TRUE(found) << name;
    }
    for (std::size_t i = 1; i < rows.size(); ++i) {
        std::istringstream fields(rows[i]);
        std::string method, stat, df, p;
        std::getline(fields, method, ',');
        std::getline(fields, stat, ',');
        std::getline(fields, df, ',');
        std::getline(fields, p, ',');
        if (p != "nan") {
            const double pv = std::stod(p);
            EXPECT_GE(pv, 0.0);
            EXPECT_LE(pv, 1.0);
        }
    }
}

TEST_F(CliTest, TestWithEndOfPeriodNullAndSubsetOfMethods) {
    ASSERT_EQ(run({"simulate", "--T", "80", "--m", "5", "--low", path("low.csv"), "--high", path("high.csv")})
                  .code,
              0);
    const Result r = run({"test", "--low", path("low.csv"), "--high", path("high.csv"), "--m", "5",
                          "--null", "eop:0.6,0.4", "--method", "new,miller", "--out", path("out.csv")});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(lines(slurp(path("out.csv"))).size(), 3u);
}

TEST_F(CliTest, FailingMethodIsReportedAndExitsOne) {
    ASSERT_EQ(run({"simulate", "--T", "80", "--m", "5", "--low", path("low.csv"), "--high", path("high.csv")})
                  .code,
              0);
    // The two most recent lags span x^A when the null puts all weight on them.
    const Result r = run({"test", "--low", path("low.csv"), "--high", path("high.csv"), "--null",
                          "eop:0.6,0.4", "--method", "agk,new", "--out", path("out.csv")});
    EXPECT_EQ(r.code, 1);
    const auto rows = lines(slurp(path("out.csv")));
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_EQ(rows[1].rfind("AGK,nan,", 0), 0u);
    EXPECT_NE(rows[1].find("error: "), std::string::npos);
    EXPECT_EQ(rows[2].find("error"), std::string::npos);
}

TEST_F(CliTest, BadNullIsUsageError) {
    ASSERT_EQ(run({"simulate", "--T", "30", "--m", "3", "--low", path("low.csv"), "--high", path("high.csv")})
                  .code,
              0);
    EXPECT_EQ(run({"test", "--low", path("low.csv"), "--high", path("high.csv"), "--null", "steep"}).code, 2);
    EXPECT_EQ(run({"test", "--low", path("low.csv"), "--high", path("high.csv"), "--null", "eop:0.5,0.2"}).code,
              2);
}

TEST_F(CliTest, DataErrorsExitOne) {
    {
        std::ofstream(path("low.csv")) << "period_id,y\n1,0.5\n2,1.5\n";
        std::ofstream(path("high.csv")) << "period_id,lag_index,x\n1,0,1\n1,1,2\n2,0,3\n";
    }
    const Result r = run({"test", "--low", path("low.csv"), "--high", path("high.csv"), "--m", "2"});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("period '2'"), std::string::npos);
    EXPECT_EQ(run({"test", "--low", path("missing.csv"), "--high", path("high.csv")}).code, 1);
}

TEST_F(CliTest, RejectionIsNotAnErrorExit) {
    ASSERT_EQ(run({"simulate", "--T", "125", "--m", "150", "--theta", "1.0", "--seed", "3", "--low",
                   path("low.csv"), "--high", path("high.csv")})
                  .code,
              0);
    const Result r = run({"test", "--low", path("low.csv"), "--high", path("high.csv"), "--method",
                          "miller", "--out", path("out.csv")});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(slurp(path("out.csv")).find("Miller"), std::string::npos);
}

TEST_F(CliTest, DeskPresetIsReproducible) {
    const std::vector<std::string> args{"mc", "--preset", "desk", "--seed", "42", "--reps", "2"};
    auto first = args;
    first.insert(first.end(), {"--out", path("a.csv")});
    auto second = args;
    second.insert(second.end(), {"--out", path("b.csv"), "--workers", "3"});
    ASSERT_EQ(run(first).code, 0);
    ASSERT_EQ(run(second).code, 0);
    const std::string a = slurp(path("a.csv"));
    EXPECT_FALSE(a.empty());
    EXPECT_EQ(a, slurp(path("b.csv")));
    EXPECT_EQ(lines(a).size(), 1u + 2u * 3u * 2u * 3u);
}

TEST_F(CliTest, SeedFromEnvironmentAndOverride) {
    const std::vector<std::string> grid{"mc", "--T", "40", "--m", "4", "--k", "0,0.5", "--reps", "40"};
    auto with_seed = [&](const std::string& seed) {
        auto a = grid;
        a.insert(a.end(), {"--seed", seed});
        return run(a);
    };
    const Result seed7 = with_seed("7");
    const Result seed8 = with_seed("8");
    ASSERT_EQ(seed7.code, 0);
    ASSERT_NE(seed7.out, seed8.out);

    setenv("MIDAS_SPECD_SEED", "7", 1);
    EXPECT_EQ(run(grid).out, seed7.out);
    EXPECT_EQ(with_seed("8").out, seed8.out);

    setenv("MIDAS_SPECD_SEED", "seven", 1);
    EXPECT_EQ(run(grid).code, 2);
}

TEST_F(CliTest, MarkdownFormat) {
    const Result r = run({"mc", "--T", "40", "--m", "4", "--k", "0", "--reps", "10", "--format", "md"});
    ASSERT_EQ(r.code, 0);
    const auto rows = lines(r.out);
    ASSERT_GE(rows.size(), 3u);
    EXPECT_EQ(rows[0].front(), '|');
    EXPECT_EQ(rows[1].rfind("|---|", 0), 0u);
}

TEST_F(CliTest, OracleNullColumnIsZero) {
    const Result r = run({"oracle", "--theta", "0", "--d", "0.5", "--m-list", "8,32"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = lines(r.out);
    ASSERT_EQ(rows.size(), 5u);
    EXPECT_EQ(rows[0], "m,r,analytic,mc_mean,mc_se,analytic_times_m");
    for (std::size_t i = 1; i < rows.size(); ++i) {
        std::istringstream fields(rows[i]);
        std::string m, rr, analytic;
        std::getline(fields, m, ',');
        std::getline(fields, rr, ',');
        std::getline(fields, analytic, ',');
        EXPECT_EQ(analytic, "0") << rows[i];
    }
}

TEST_F(CliTest, OracleWithMonteCarloColumns) {
    const Result r = run({"oracle", "--theta", "1", "--m-list", "8", "--mc-reps", "50", "--T", "50"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = lines(r.out);
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_EQ(rows[1].find(",,"), std::string::npos);
    EXPECT_EQ(run({"oracle", "--mc-reps", "1"}).code, 2);
    EXPECT_EQ(run({"oracle", "--m-list", "1"}).code, 2);
}

TEST_F(CliTest, InvalidSimulationParameterIsUsageError) {
    EXPECT_EQ(run({"simulate", "--c", "1.2", "--low", path("l.csv"), "--high", path("h.csv")}).code, 2);
}
