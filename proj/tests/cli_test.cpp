// Copyright 2026 The qshell Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <cctype>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "json.hpp"
#include "qshell/cli.hpp"

namespace qshell::cli {
namespace {

const std::filesystem::path kGolden = QSHELL_GOLDEN_DIR;

struct Result {
    int status;
    std::string out;
    std::string err;
};

Result run_cli(std::vector<std::string> args) {
    std::vector<const char *> argv = {"qshell"};
    for (const auto &a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out;
    std::ostringstream err;
    int status = run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {status, out.str(), err.str()};
}

std::string read_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::string scenario(const char *name) {
    return (kGolden / name).string();
}

std::filesystem::path scratch_dir(const std::string &name) {
    auto dir = std::filesystem::temp_directory_path() / ("qshell_cli_test_" + name);
    std::filesystem::remove_all(dir);
    return dir;
}

TEST(Command, NamesRoundTrip) {
    for (const char *name : {"spectrum", "probs", "mean", "evolve", "sample", "verify"}) {
        auto c = parse_command(name);
        ASSERT_TRUE(c.has_value()) << name;
        EXPECT_EQ(command_name(*c), name);
    }
    EXPECT_FALSE(parse_command("plot").has_value());
    EXPECT_EQ(default_format(Command::Verify), Format::Structured);
    EXPECT_EQ(default_format(Command::Probs), Format::Csv);
}

struct GoldenCase {
    std::vector<std::string> args;
    const char *golden;
};

void PrintTo(const GoldenCase &c, std::ostream *os) {
    *os << c.golden;
}

class Golden : public ::testing::TestWithParam<GoldenCase> {};

TEST_P(Golden, MatchesRecordedOutput) {
    const GoldenCase &c = GetParam();
    std::vector<std::string> args = c.args;
    for (auto &a : args) {
        if (a.ends_with(".json") && a.find('/') == std::string::npos) {
            a = scenario(a.c_str());
        }
    }
    Result r = run_cli(args);
    EXPECT_EQ(r.status, kExitOk) << r.err;
    EXPECT_EQ(r.out, read_file(kGolden / c.golden));
}

INSTANTIATE_TEST_SUITE_P(
    Subcommands, Golden,
    ::testing::Values(GoldenCase{{"spectrum", "--scenario", "degenerate.json"}, "degenerate-spectrum.csv"},
                      GoldenCase{{"spectrum", "--scenario", "identity3.json"}, "identity3-spectrum.csv"},
                      GoldenCase{{"probs", "--scenario", "config2.json"}, "config2-probs.csv"},
                      GoldenCase{{"probs", "--scenario", "config2.json", "--format", "structured"},
                                 "config2-probs.json"},
                      GoldenCase{{"mean", "--scenario", "degenerate.json"}, "degenerate-mean.csv"},
                      GoldenCase{{"evolve", "--scenario", "qubit.json"}, "qubit-evolve.csv"},
                      GoldenCase{{"sample", "--scenario", "config2.json"}, "config2-sample.csv"},
                      GoldenCase{{"verify", "--scenario", "config2.json"}, "config2-verify.json"}),
    [](const ::testing::TestParamInfo<GoldenCase> &info) {
        std::string name = info.param.golden;
        for (char &ch : name) {
            if (!std::isalnum(static_cast<unsigned char>(ch))) {
                ch = '_';
            }
        }
        return name;
    });

TEST(Probs, EqualWeightConfiguration) {
    Result r = run_cli({"probs", "--scenario", scenario("config2.json"), "--format", "structured"});
    ASSERT_EQ(r.status, kExitOk) << r.err;
    auto doc = nlohmann::json::parse(r.out);
    ASSERT_EQ(doc["rows"].size(), 2u);
    EXPECT_NEAR(doc["rows"][0]["probability"].get<double>(), 0.5, 1e-15);
    EXPECT_NEAR(doc["rows"][1]["probability"].get<double>(), 0.5, 1e-15);
}

TEST(Spectrum, IdentityIsOneCluster) {
    Result r = run_cli({"spectrum", "--scenario", scenario("identity3.json"), "--format", "structured"});
    ASSERT_EQ(r.status, kExitOk) << r.err;
    auto rows = nlohmann::json::parse(r.out)["rows"];
    ASSERT_EQ(rows.size(), 3u);
    for (const auto &row : rows) {
        EXPECT_EQ(row["eigenvalue"].get<double>(), 1.0);
        EXPECT_EQ(row["cluster"].get<int>(), 1);
        EXPECT_EQ(row["multiplicity"].get<int>(), 3);
    }
}

TEST(Mean, DifferenceIsRounding) {
    Result r = run_cli({"mean", "--scenario", scenario("degenerate.json"), "--format", "structured"});
    ASSERT_EQ(r.status, kExitOk) << r.err;
    auto row = nlohmann::json::parse(r.out)["rows"][0];
    EXPECT_NEAR(row["born_mean"].get<double>(), 4.0 / 3.0, 1e-14);
    EXPECT_LE(std::abs(row["difference"].get<double>()), 1e-12);
}

TEST(Verify, PassesAtRecordedSeed) {
    Result r = run_cli({"verify", "--scenario", scenario("config2.json")});
    EXPECT_EQ(r.status, kExitOk) << r.out;
    auto doc = nlohmann::json::parse(r.out);
    EXPECT_TRUE(doc["pass"].get<bool>());
    EXPECT_EQ(doc["reports"].size(), 4u);
}

TEST(Verify, ChanceRejectionExitsWithOne) {
    // At this seed the fair 200-trial sample lands beyond the 99.9% chi-square
    // quantile (statistic 11.52): the expected one-in-a-thousand false alarm.
    Result r = run_cli({"verify", "--scenario", scenario("config2.json"), "--trials", "200", "--seed", "1591"});
    EXPECT_EQ(r.status, kExitVerificationFailed);
    auto doc = nlohmann::json::parse(r.out);
    EXPECT_FALSE(doc["pass"].get<bool>());
    EXPECT_FALSE(doc["reports"][1]["pass"].get<bool>());
    EXPECT_EQ(doc["reports"][1]["name"], "chi_square");
}

TEST(Verify, SingleOutcomeSkipsChiSquare) {
    Result r = run_cli({"verify", "--scenario", scenario("identity3.json")});
    EXPECT_EQ(r.status, kExitOk) << r.out << r.err;
    auto doc = nlohmann::json::parse(r.out);
    EXPECT_EQ(doc["reports"][1]["name"], "chi_square_single_category");
}

TEST(Output, MetaHeaderIsComplete) {
    for (const char *cmd : {"spectrum", "probs", "mean", "evolve", "sample"}) {
        Result r = run_cli({cmd, "--scenario", scenario("degenerate.json")});
        ASSERT_EQ(r.status, kExitOk) << r.err;
        const std::string first = r.out.substr(0, r.out.find('\n'));
        EXPECT_EQ(first.rfind("# tool=qshell", 0), 0u) << first;
        const std::vector<std::string> keys = {"version=" QSHELL_VERSION, "seed=7", "rng=philox4x32-10", "hbar=0.5",
                                               std::string("command=") + cmd};
        for (const std::string &key : keys) {
            EXPECT_NE(first.find(key), std::string::npos) << cmd << ": " << key;
        }
        EXPECT_EQ(r.out.find('\r'), std::string::npos);
    }
}

TEST(Output, SeventeenDigitsRoundTrip) {
    Result r = run_cli({"evolve", "--scenario", scenario("qubit.json"), "--format", "structured"});
    ASSERT_EQ(r.status, kExitOk);
    Result c = run_cli({"evolve", "--scenario", scenario("qubit.json")});
    // Every CSV cell parses back to the same double as the structured value.
    auto rows = nlohmann::ordered_json::parse(r.out)["rows"];
    std::istringstream lines(c.out);
    std::string line;
    std::getline(lines, line);
    std::getline(lines, line);
    for (const auto &row : rows) {
        std::getline(lines, line);
        std::istringstream cells(line);
        std::string cell;
        for (const auto &item : row.items()) {
            std::getline(cells, cell, ',');
            EXPECT_EQ(std::stod(cell), item.value().get<double>()) << item.key();
        }
    }
}

TEST(Output, OutDirWritesNamedFile) {
    auto dir = scratch_dir("out");
    Result r = run_cli({"sample", "--scenario", scenario("config2.json"), "--out", dir.string()});
    ASSERT_EQ(r.status, kExitOk) << r.err;
    EXPECT_TRUE(r.out.empty());
    EXPECT_EQ(read_file(dir / "sample.csv"), read_file(kGolden / "config2-sample.csv"));

    Result v = run_cli({"verify", "--scenario", scenario("config2.json"), "--out", dir.string()});
    ASSERT_EQ(v.status, kExitOk);
    EXPECT_EQ(read_file(dir / "verify.json"), read_file(kGolden / "config2-verify.json"));
    std::filesystem::remove_all(dir);
}

TEST(Output, VerifyIsByteIdenticalAcrossRunsAndThreads) {
    auto a = scratch_dir("repro_a");
    auto b = scratch_dir("repro_b");
    ASSERT_EQ(run_cli({"verify", "--scenario", scenario("degenerate.json"), "--out", a.string()}).status, kExitOk);
    ASSERT_EQ(run_cli({"verify", "--scenario", scenario("degenerate.json"), "--out", b.string(), "--threads", "3"})
                  .status,
              kExitOk);
    EXPECT_EQ(read_file(a / "verify.json"), read_file(b / "verify.json"));
    std::filesystem::remove_all(a);
    std::filesystem::remove_all(b);
}

TEST(Overrides, SeedAndTrials) {
    Result r = run_cli({"sample", "--scenario", scenario("config2.json"), "--seed", "5", "--trials", "1000"});
    ASSERT_EQ(r.status, kExitOk);
    EXPECT_NE(r.out.find("seed=5 "), std::string::npos);
    EXPECT_NE(r.out.find("trials=1000"), std::string::npos);
    Result again = run_cli({"sample", "--scenario", scenario("config2.json"), "--seed", "5", "--trials", "1000"});
    EXPECT_EQ(r.out, again.out);
}

TEST(Overrides, ClusterTolerance) {
    // Eigenvalues 0, 2, 2 merge into one outcome once the cluster tolerance
    // exceeds the relative gap.
    Result r = run_cli({"probs", "--scenario", scenario("degenerate.json"), "--tol", "cluster=2", "--tol",
                        "tol_herm=1e-10"});
    ASSERT_EQ(r.status, kExitOk) << r.err;
    EXPECT_NE(r.out.find("\n1,1.3333333333333333,3,1\n"), std::string::npos) << r.out;
}

TEST(Errors, InputErrorsExitWithTwo) {
    const std::vector<std::vector<std::string>> cases = {
        {"probs"},
        {"plot", "--scenario", scenario("config2.json")},
        {"probs", "--scenario", "/nonexistent/scenario.json"},
        {"probs", "--scenario", scenario("config2.json"), "--format", "xml"},
        {"probs", "--scenario", scenario("config2.json"), "--tol", "bogus=1"},
        {"probs", "--scenario", scenario("config2.json"), "--trials", "0"},
        {"probs", "--scenario", scenario("config2.json"), "--seed", "-3"},
        {},
    };
    for (const auto &args : cases) {
        Result r = run_cli(args);
        EXPECT_EQ(r.status, kExitInputError) << (args.empty() ? "" : args[0]);
        ASSERT_FALSE(r.err.empty());
        auto diag = nlohmann::json::parse(r.err);
        EXPECT_TRUE(diag.contains("error"));
        EXPECT_TRUE(diag.contains("message"));
    }
}

TEST(Errors, MalformedScenario) {
    auto dir = scratch_dir("bad");
    std::filesystem::create_directories(dir);
    std::ofstream(dir / "bad.json") << "{\n  \"dimension\": 2,\n  oops\n}\n";
    Result r = run_cli({"probs", "--scenario", (dir / "bad.json").string()});
    EXPECT_EQ(r.status, kExitInputError);
    auto diag = nlohmann::json::parse(r.err);
    EXPECT_EQ(diag["error"], "ParseError");
    EXPECT_NE(diag["message"].get<std::string>().find("line 3"), std::string::npos);
    std::filesystem::remove_all(dir);
}

TEST(Help, ExitsZero) {
    Result r = run_cli({"--help"});
    EXPECT_EQ(r.status, kExitOk);
    EXPECT_NE(r.out.find("verify"), std::string::npos);
}

}  // namespace
}  // namespace qshell::cli
