#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sys/wait.h>

#include "polyspan/cli.hpp"
#include "polyspan/io.hpp"

namespace polyspan {
namespace {

const std::string kData = POLYSPAN_DATA_DIR;

Command make(std::string verb) {
    Command c;
    c.verb = std::move(verb);
    return c;
}

std::filesystem::path scratch(const std::string& name, const std::string& text) {
    const auto p = std::filesystem::temp_directory_path() / ("polyspan_cli_test_" + name);
    std::ofstream(p) << text;
    return p;
}

TEST(RunCommand, BellmanFordWorkedExample) {
    Command c = make("bellman-ford");
    c.graph = kData + "/g1.graph";
    c.source = 0;
    const auto r = run_command(c);
    EXPECT_EQ(r.exit_code, kExitOk);
    EXPECT_EQ(r.out, "0 0\n1 2\n2 5\n");
    EXPECT_TRUE(r.err.empty());
}

TEST(RunCommand, BellmanFordPrintsInf) {
    Command c = make("bellman-ford");
    c.graph = kData + "/g1.graph";
    c.source = 2;
    EXPECT_EQ(run_command(c).out, "0 inf\n1 inf\n2 0\n");
    c.semiring = "bool";
    c.source = 1;
    EXPECT_EQ(run_command(c).out, "0 0\n1 1\n2 1\n");
}

TEST(RunCommand, FloydWarshallRows) {
    Command c = make("floyd-warshall");
    c.graph = kData + "/g1.graph";
    const auto r = run_command(c);
    EXPECT_EQ(r.exit_code, kExitOk);
    EXPECT_EQ(r.out, "0 2 5\ninf 0 3\ninf inf 0\n");
}

TEST(RunCommand, RunSpanOneStep) {
    Command c = make("run-span");
    c.graph = kData + "/g1.graph";
    c.span = kData + "/bellman_ford.span";
    c.input = scratch("bf.rows", "0\ninf\ninf\n0\n0\n0\n2\n7\n3\n").string();
    const auto r = run_command(c);
    EXPECT_EQ(r.exit_code, kExitOk) << r.err;
    EXPECT_EQ(r.out, "(0:0) 0\n(0:1) 2\n(0:2) 7\n");
}

TEST(RunCommand, RunSpanWrongRowCount) {
    Command c = make("run-span");
    c.graph = kData + "/g1.graph";
    c.span = kData + "/bellman_ford.span";
    c.input = scratch("short.rows", "0\n1\n").string();
    EXPECT_EQ(run_command(c).exit_code, kExitInput);
}

TEST(RunCommand, CheckLawsReport) {
    Command c = make("check-laws");
    c.semiring = "min-plus";
    const auto r = run_command(c);
    EXPECT_EQ(r.exit_code, kExitOk);
    EXPECT_NE(r.out.find("PASS plus-associative (1000 samples)"), std::string::npos);
    EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}

TEST(RunCommand, GnnDemoIsSeedDetermined) {
    Command c = make("gnn-demo");
    c.graph = kData + "/full4.graph";
    c.seed = 4;
    const auto a = run_command(c);
    EXPECT_EQ(a.exit_code, kExitOk) << a.err;
    EXPECT_EQ(a.out, run_command(c).out);
    EXPECT_NE(a.out.find("v3\n"), std::string::npos);
    c.seed = 5;
    EXPECT_NE(a.out, run_command(c).out);
}

TEST(RunCommand, VerifyPasses) {
    Command c = make("verify");
    c.graph = kData + "/sample6.graph";
    const auto r = run_command(c);
    EXPECT_EQ(r.exit_code, kExitOk) << r.err;
    EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}

TEST(RunCommand, UsageErrors) {
    EXPECT_EQ(run_command(make("frobnicate")).exit_code, kExitUsage);
    const auto r = run_command(make("bellman-ford"));
    EXPECT_EQ(r.exit_code, kExitUsage);
    EXPECT_TRUE(r.out.empty());
    EXPECT_FALSE(r.err.empty());
    Command c = make("run-span");
    c.graph = kData + "/g1.graph";
    EXPECT_EQ(run_command(c).exit_code, kExitUsage);
}

TEST(RunCommand, InputErrors) {
    Command c = make("bellman-ford");
    c.graph = scratch("neg.graph", "2 1 directed\n0 1 -5\n").string();
    c.source = 0;
    auto r = run_command(c);
    EXPECT_EQ(r.exit_code, kExitInput);
    EXPECT_NE(r.err.find("line 2"), std::string::npos);
    EXPECT_TRUE(r.out.empty());
    c.graph = kData + "/g1.graph";
    c.source = 9;
    EXPECT_EQ(run_command(c).exit_code, kExitInput);
    c.source = 0;
    c.semiring = "real";
    EXPECT_EQ(run_command(c).exit_code, kExitInput);
    Command l = make("check-laws");
    l.semiring = "nope";
    EXPECT_EQ(run_command(l).exit_code, kExitInput);
}

TEST(RunCommand, WritesToOutFile) {
    Command c = make("floyd-warshall");
    c.graph = kData + "/g1.graph";
    const auto path = std::filesystem::temp_directory_path() / "polyspan_cli_test_fw.out";
    c.out = path.string();
    const auto r = run_command(c);
    EXPECT_EQ(r.exit_code, kExitOk);
    EXPECT_TRUE(r.out.empty());
    EXPECT_EQ(read_file(path.string()), "0 2 5\ninf 0 3\ninf inf 0\n");
}

struct Run {
    int status;
    std::string out;
};

Run shell(const std::string& args) {
    const std::string cmd = std::string(POLYSPAN_CLI) + " " + args + " 2>/dev/null";
    std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), pclose);
    std::string out;
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = std::fread(buf.data(), 1, buf.size(), pipe.get())) > 0) out.append(buf.data(), n);
    const int raw = pclose(pipe.release());
    return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

TEST(Executable, ExitCodes) {
    EXPECT_EQ(shell("bellman-ford --graph " + kData + "/g1.graph --source 0").out, "0 0\n1 2\n2 5\n");
    EXPECT_EQ(shell("bellman-ford --graph " + kData + "/g1.graph --source 0 --bogus 1").status, kExitUsage);
    EXPECT_EQ(shell("").status, kExitUsage);
    EXPECT_EQ(shell("floyd-warshall").status, kExitUsage);
    EXPECT_EQ(shell("floyd-warshall --graph /nonexistent").status, kExitInput);
    EXPECT_EQ(shell("--help").status, 0);
}

}  // namespace
}  // namespace polyspan
