#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "support/oracles.hpp"
#include "tileasm/cli.hpp"
#include "tileasm/io.hpp"

using namespace tileasm;

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

std::string data(const std::string& name) { return oracle::data_path(name); }

std::filesystem::path scratch(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / "tileasm_cli_test";
    std::filesystem::create_directories(dir);
    return dir / name;
}

TEST(Cli, HelpAndUsageErrors) {
    EXPECT_EQ(run({"--help"}).code, 0);
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
    EXPECT_EQ(run({"stable", "--system", data("row.tiles")}).code, 2);  // missing --assembly
    EXPECT_EQ(run({"enumerate", "--system", data("row.tiles"), "--max-size", "0"}).code, 2);
}

TEST(Cli, MissingFileNamesThePath) {
    const Result r = run({"repetitions", "--assembly", "/nonexistent/a.asm"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("/nonexistent/a.asm"), std::string::npos);
}

TEST(Cli, ParseErrorsReportFileAndLine) {
    const auto bad = scratch("bad.tiles");
    io::write_file(bad.string(), "temperature 1\ntile t Q=a\n");
    const Result r = run({"enumerate", "--system", bad.string(), "--max-size", "2"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("bad.tiles"), std::string::npos);
    EXPECT_NE(r.err.find("line 2"), std::string::npos);
}

TEST(Cli, Enumerate) {
    const Result r = run({"enumerate", "--system", data("row.tiles"), "--max-size", "3"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("count 3\n"), std::string::npos);
    EXPECT_NE(r.out.find("# assembly 3 size 3\nplace 0 0 t\nplace 1 0 t\nplace 2 0 t\n"), std::string::npos);

    const auto dir = scratch("enum");
    std::filesystem::remove_all(dir);
    EXPECT_EQ(run({"enumerate", "--system", data("coop.tiles"), "--max-size", "4", "--out", dir.string()}).code, 0);
    std::size_t files = 0;
    for (const auto& e : std::filesystem::directory_iterator(dir)) {
        ++files;
        EXPECT_NO_THROW(io::parse_assembly(io::read_file(e.path().string())));
    }
    EXPECT_EQ(files, enumerate_producible(io::parse_tile_system(io::read_file(data("coop.tiles"))), 4).size());
}

TEST(Cli, Stable) {
    Result r = run({"stable", "--system", data("hook.tiles"), "--assembly", data("hook.asm")});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "stable: min cut 2 >= τ=2\n");
    r = run({"stable", "--system", data("weak.tiles"), "--assembly", data("weak2.asm")});
    EXPECT_EQ(r.code, 1);
    EXPECT_EQ(r.out, "unstable: min cut 1 < τ=2\n");
    r = run({"stable", "--system", data("row.tiles"), "--assembly", data("hook.asm")});
    EXPECT_EQ(r.code, 2);  // tiles unknown to the system
}

TEST(Cli, Repetitions) {
    Result r = run({"repetitions", "--assembly", data("hook.asm")});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "v=(1,-1) overlap 1\n");
    const auto single = scratch("single.asm");
    io::write_file(single.string(), "place 0 0 t\n");
    r = run({"repetitions", "--assembly", single.string()});
    EXPECT_EQ(r.code, 1);
    EXPECT_EQ(r.out, "no repetitions\n");
}

TEST(Cli, PumpWithCertification) {
    const auto dir = scratch("pump");
    std::filesystem::remove_all(dir);
    const Result r = run({"pump", "--system", data("hook.tiles"), "--assembly", data("hook.asm"), "--vec", "1,-1",
                          "--iters", "3", "--certify-bound", "11", "--out", dir.string()});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("start: size 5, v=(1,-1)\n"), std::string::npos);
    EXPECT_NE(r.out.find("iteration 1: size 8, v=(1,-1), |C1|=3, stable, repetitious, producible (enumerated to size 11)"),
              std::string::npos);
    EXPECT_NE(r.out.find("iteration 3: size 14, v=(1,-1), |C1|=3, stable, repetitious, producible by staged union"),
              std::string::npos);
    EXPECT_TRUE(std::filesystem::exists(dir / "iterate_003.txt"));
    EXPECT_EQ(io::parse_assembly(io::read_file((dir / "iterate_001.txt").string())).size(), 8u);
}

TEST(Cli, PumpRejectsANonRepetition) {
    const Result r = run({"pump", "--system", data("hook.tiles"), "--assembly", data("hook.asm"), "--vec", "1,0",
                          "--iters", "1"});
    EXPECT_EQ(r.code, 2);
    EXPECT_EQ(run({"pump", "--system", data("hook.tiles"), "--assembly", data("hook.asm"), "--vec", "1;0",
                   "--iters", "1"})
                  .code,
              2);
}

TEST(Cli, ShapeCommands) {
    Result r = run({"shape-component", "--shape", data("hook.shape"), "--vec", "1,-1"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out.rfind("component size ", 0), 0u);
    r = run({"shape-walk", "--shape", data("hook.shape"), "--vec", "1,-1"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("final component size "), std::string::npos);
    EXPECT_EQ(run({"shape-walk", "--shape", data("hook.shape"), "--vec", "0,0"}).code, 2);
}

TEST(Cli, CurvesCheck) {
    Result r = run({"curves", "check", "--file", data("modulo.curves")});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("condition 1 (endpoints): holds"), std::string::npos);
    EXPECT_NE(r.out.find("condition 2 (disjoint from own translate): holds"), std::string::npos);
    EXPECT_NE(r.out.find("condition 3 (pairwise disjoint): holds"), std::string::npos);
    r = run({"curves", "check", "--file", data("three.curves")});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.out.find("condition 2 (disjoint from own translate): fails"), std::string::npos);
    EXPECT_EQ(run({"curves", "check", "--file", data("three.curves"), "--system", "4"}).code, 2);
}

TEST(Curves, ViolateBothModes) {
    for (const char* mode : {"direct", "reduce"}) {
        const Result r = run({"curves", "violate", "--file", data("three.curves"), "--mode", mode});
        EXPECT_EQ(r.code, 0) << mode << r.err;
        EXPECT_EQ(r.out.rfind("witness ", 0), 0u);
        EXPECT_NE(r.out.find("verified exactly\n"), std::string::npos);
    }
    EXPECT_EQ(run({"curves", "violate", "--file", data("three.curves"), "--mode", "sideways"}).code, 2);
    EXPECT_EQ(run({"curves", "violate", "--file", data("modulo.curves")}).code, 2);  // non-integer multiplier
}

TEST(Curves, ExampleMatchesTheFixture) {
    const Result r = run({"curves", "example", "--x", "18/5", "--eps", "1/10"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, io::serialize(io::parse_curve_file(io::read_file(data("noninteger.curves")))));
    EXPECT_EQ(run({"curves", "example", "--x", "3", "--eps", "1/10"}).code, 2);
    const Result neg = run({"curves", "example", "--x", "-5/2", "--eps", "1/10"});
    EXPECT_EQ(neg.code, 0);
    EXPECT_NE(neg.out.find("vec -1 0\n"), std::string::npos);
}

TEST(Cli, RenderIsDeterministic) {
    const auto a = scratch("a.svg"), b = scratch("b.svg");
    EXPECT_EQ(run({"render", "--in", data("hook.asm"), "--svg", a.string(), "--system", data("hook.tiles")}).code, 0);
    EXPECT_EQ(run({"render", "--in", data("hook.asm"), "--svg", b.string(), "--system", data("hook.tiles")}).code, 0);
    EXPECT_EQ(io::read_file(a.string()), io::read_file(b.string()));
    const auto junk = scratch("junk.txt");
    io::write_file(junk.string(), "nonsense\n");
    EXPECT_EQ(run({"render", "--in", junk.string(), "--svg", a.string()}).code, 2);
}

}  // namespace
