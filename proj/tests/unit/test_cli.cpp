#include "cli.hpp"

#include "lhchi/algebra.hpp"
#include "lhchi/coloring.hpp"

#include "reference_data.hpp"

#include <json.hpp>

#include <gtest/gtest.h>

#include <algorithm>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace lhchi;
using nlohmann::json;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<int> flat(const json& rows) {
    std::vector<int> v;
    for (const auto& r : rows)
        for (const auto& x : r) v.push_back(x.get<int>());
    return v;
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("lhchi_cli_" + name);
}

} // namespace

TEST(Cli, ConstructJsonAndGuard) {
    const auto r = run({"construct", "--w", "4"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = json::parse(r.out);
    EXPECT_EQ(j["w"], 4);
    EXPECT_EQ(flat(j["entries"]), testdata::latin16);

    const auto guard = run({"construct", "--w", "9"});
    EXPECT_EQ(guard.code, 1);
    EXPECT_NE(guard.err.find("size guard"), std::string::npos);
    EXPECT_TRUE(guard.out.empty());
}

TEST(Cli, ConstructCsvAndPretty) {
    const auto csv = run({"construct", "--w", "1", "--format", "csv"});
    EXPECT_EQ(csv.out, "c1,c2\n1,2\n2,1\n");
    const auto pretty = run({"construct", "--w", "1", "--format", "pretty"});
    EXPECT_EQ(pretty.out, "1 2\n2 1\n");
}

TEST(Cli, EnumerateValidOnlyRoundTrips) {
    const auto r = run({"enumerate", "--w", "3", "--valid-only"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = json::parse(r.out);
    ASSERT_EQ(j.size(), 16u);
    for (const auto& m : j) {
        EXPECT_EQ(m["w"], 3);
        EXPECT_TRUE(m["latin_hadamard"].get<bool>());
        const auto h = SignedLatinSquare::from_entries(flat(m["H"]));
        EXPECT_EQ(h, color(LatinSquare(3), parse_bitstring(m["choices"].get<std::string>())));
    }
}

TEST(Cli, EnumerateOrderSixteen) {
    const auto all = run({"--threads", "2", "enumerate", "--w", "4", "--format", "csv"});
    ASSERT_EQ(all.code, 0);
    EXPECT_EQ(std::count(all.out.begin(), all.out.end(), '\n'), 2049);
    EXPECT_EQ(all.out.find(",true,"), std::string::npos);
    EXPECT_EQ(run({"enumerate", "--w", "4", "--valid-only"}).out, "[]\n");
    EXPECT_EQ(run({"enumerate", "--w", "5"}).code, 1);
}

TEST(Cli, AlgebraReports) {
    const auto q = run({"algebra", "--dim", "4", "--format", "json"});
    ASSERT_EQ(q.code, 0) << q.err;
    EXPECT_EQ(flat(json::parse(q.out)["table"]), testdata::quaternion);

    const auto sed = run({"algebra", "--dim", "16", "--report", "zero-divisors"});
    ASSERT_EQ(sed.code, 0);
    ASSERT_FALSE(sed.out.empty());
    EXPECT_EQ(sed.out.rfind("(e_", 0), 0u);
    EXPECT_NE(sed.out.find(") = 0\n"), std::string::npos);

    EXPECT_TRUE(run({"algebra", "--dim", "8", "--report", "zero-divisors"}).out.empty());
    EXPECT_EQ(run({"algebra", "--dim", "6"}).code, 1);
    EXPECT_EQ(run({"algebra", "--dim", "64"}).code, 1);
    EXPECT_EQ(run({"algebra"}).code, 1);
}

TEST(Cli, AlgebraFromColoringFile) {
    const auto path = temp_file("fig2.json");
    {
        std::ofstream f(path);
        std::vector<std::vector<int>> rows;
        for (std::size_t i = 0; i < 8; ++i)
            rows.emplace_back(testdata::signed8.begin() + static_cast<std::ptrdiff_t>(8 * i),
                              testdata::signed8.begin() + static_cast<std::ptrdiff_t>(8 * i + 8));
        f << json{{"H", rows}}.dump();
    }
    const auto r = run({"algebra", "--from-coloring", path.string(), "--report", "zero-divisors",
                        "--format", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(json::parse(r.out)["count"], 0);

    const auto sixteen = temp_file("h16.json");
    {
        std::ofstream f(sixteen);
        const auto h = color(LatinSquare(4), ChoiceVector(11, false)).entries();
        json rows = json::array();
        for (std::size_t i = 0; i < 16; ++i)
            rows.push_back(std::vector<int>(h.begin() + static_cast<std::ptrdiff_t>(16 * i),
                                            h.begin() + static_cast<std::ptrdiff_t>(16 * i + 16)));
        f << json{{"H", rows}}.dump();
    }
    const auto z = run({"algebra", "--from-coloring", sixteen.string(), "--report", "zero-divisors"});
    EXPECT_EQ(z.code, 0);
    EXPECT_FALSE(z.out.empty());
    EXPECT_EQ(run({"algebra", "--from-coloring", "/nonexistent/file.json"}).code, 1);
    std::filesystem::remove(path);
    std::filesystem::remove(sixteen);
}

TEST(Cli, Design) {
    const auto show = run({"design", "--show", "--format", "pretty"});
    ASSERT_EQ(show.code, 0);
    EXPECT_EQ(show.out.substr(0, show.out.find('\n')),
              "+x1 +x2 +x3 +x4 +x5 +x6 +x7 +x8 +x9 +x2 +x3 +x4 +x5 +x6 +x7 +x8");

    const auto verify = run({"design", "--verify"});
    ASSERT_EQ(verify.code, 0);
    const auto j = json::parse(verify.out);
    EXPECT_TRUE(j["valid"].get<bool>());
    EXPECT_EQ(j["num_vars"], 9);
    EXPECT_EQ(j["radon"], 9);

    const auto eig = run({"design", "--eigenbasis", "--pvars",
                          "0.0625,0.0625,0.0625,0.0625,0.0625,0.0625,0.0625,0.0625,0.0625"});
    ASSERT_EQ(eig.code, 0) << eig.err;
    EXPECT_DOUBLE_EQ(json::parse(eig.out)["O"][3][0].get<double>(), 0.25);

    EXPECT_EQ(run({"design", "--show", "--verify"}).code, 1);
    EXPECT_EQ(run({"design", "--eigenbasis", "--pvars", "0.1,0.1"}).code, 1);
}

TEST(Cli, Decompose) {
    const auto r = run({"decompose", "--p", "a", "--counts", "30,20,25,25,25,25,25,25"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = json::parse(r.out);
    EXPECT_NEAR(j["X2"].get<double>(), 2.0, 1e-12);
    EXPECT_NEAR(j["sum_check"].get<double>(), 2.0, 1e-12);
    EXPECT_EQ(j["components"].size(), 7u);
    EXPECT_NEAR(j["components"][0].get<double>(), std::sqrt(0.5), 1e-12);

    const auto s = run({"decompose", "--p", "0.25,0.25,0.25,0.25", "--counts", "1,2,3,4", "--matrix", "sylvester"});
    EXPECT_EQ(s.code, 0) << s.err;
    const auto d = run({"decompose", "--matrix", "design", "--pvars",
                        "0.0625,0.0625,0.0625,0.0625,0.0625,0.0625,0.0625,0.0625,0.0625", "--counts",
                        "1,2,3,4,5,6,7,8,9,10,11,12,13,14,15,16"});
    ASSERT_EQ(d.code, 0) << d.err;
    const auto jd = json::parse(d.out);
    EXPECT_NEAR(jd["X2"].get<double>(), jd["sum_check"].get<double>(), 1e-9);

    EXPECT_EQ(run({"decompose", "--p", "0.5,0.6", "--counts", "1,2"}).code, 1);
    EXPECT_EQ(run({"decompose", "--p", "a", "--counts", "1,2"}).code, 1);
    EXPECT_EQ(run({"decompose", "--p", "b", "--counts", "1,2,3,4,5,6,7,8", "--matrix", "sylvester"}).code, 1);
    EXPECT_EQ(run({"decompose", "--p", "a", "--counts", "1,2,3,4,5,6,7,8", "--matrix", "builtin:0"}).code, 1);
}

TEST(Cli, PowerCsvDeterministicAcrossThreads) {
    const std::vector<std::string> base{"power", "--alt", "normal:0,1.3", "--preset", "a", "--reps", "500",
                                        "--format", "csv", "--seed", "5"};
    auto one = base;
    one.insert(one.begin(), {"--threads", "1"});
    auto three = base;
    three.insert(three.begin(), {"--threads", "3"});
    const auto a = run(one);
    const auto b = run(three);
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.out.rfind("statistic,rate,se\nX2,", 0), 0u);
    EXPECT_EQ(std::count(a.out.begin(), a.out.end(), '\n'), 9);
}

TEST(Cli, PowerSeedEnvironmentOverride) {
    const std::vector<std::string> args{"power", "--alt", "t:2", "--preset", "b", "--reps", "300",
                                        "--format", "json", "--seed", "5"};
    const auto plain = run(args);
    ::setenv("LH_SEED", "77", 1);
    const auto env = run(args);
    ::unsetenv("LH_SEED");
    ASSERT_EQ(env.code, 0) << env.err;
    EXPECT_EQ(json::parse(env.out)["config"]["seed"], 77);
    EXPECT_EQ(json::parse(plain.out)["config"]["seed"], 5);

    auto with_77 = args;
    with_77.back() = "77";
    EXPECT_EQ(run(with_77).out, env.out);

    ::setenv("LH_SEED", "nope", 1);
    EXPECT_EQ(run(args).code, 1);
    ::unsetenv("LH_SEED");
}

TEST(Cli, PowerMatchedNull) {
    const auto r = run({"power", "--alt", "gamma:5,0.2", "--null", "matched", "--preset", "b", "--reps",
                        "200", "--format", "json", "--matrix", "builtin:4"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = json::parse(r.out);
    EXPECT_EQ(j["config"]["matrix"], "builtin:4");
    EXPECT_EQ(j["config"]["null"].get<std::string>().rfind("normal:1,", 0), 0u);
}

TEST(Cli, OutFileAndErrors) {
    const auto path = temp_file("out.json");
    const auto r = run({"--out", path.string(), "construct", "--w", "2"});
    ASSERT_EQ(r.code, 0);
    EXPECT_TRUE(r.out.empty());
    std::ifstream in(path);
    EXPECT_EQ(json::parse(in)["w"], 2);
    std::filesystem::remove(path);

    EXPECT_EQ(run({"construct", "--w", "2", "--bogus"}).code, 1);
    EXPECT_EQ(run({}).code, 1);
    EXPECT_EQ(run({"power", "--alt", "weird:1"}).code, 1);
    EXPECT_EQ(run({"power", "--alt", "normal:0,1", "--preset", "a", "--p", "0.5,0.5"}).code, 1);
    EXPECT_EQ(run({"--help"}).code, 0);
}
