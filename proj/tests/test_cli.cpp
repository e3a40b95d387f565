#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#ifndef KEMPE_CLI
#error "KEMPE_CLI must name the command-line binary"
#endif

namespace fs = std::filesystem;

namespace
{

struct Outcome
{
    int code;
    std::string out;
};

class Cli : public ::testing::Test
{
protected:
    fs::path dir;

    void SetUp() override
    {
        dir = fs::temp_directory_path()
            / ("kempe-cli-" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir);
        fs::create_directories(dir);
    }

    void TearDown() override { fs::remove_all(dir); }

    std::string file(const std::string& name, const std::string& text)
    {
        fs::path p = dir / name;
        std::ofstream(p) << text;
        return p.string();
    }

    std::string read(const std::string& name)
    {
        std::ifstream in(dir / name);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    std::string path(const std::string& name) { return (dir / name).string(); }

    static Outcome run(const std::string& args)
    {
        std::string cmd = std::string(KEMPE_CLI) + " " + args + " 2>/dev/null";
        FILE* pipe = popen(cmd.c_str(), "r");
        Outcome r{-1, {}};
        if (!pipe)
            return r;
        char buf[4096];
        std::size_t n;
        while ((n = fread(buf, 1, sizeof buf, pipe)) > 0)
            r.out.append(buf, n);
        int status = pclose(pipe);
        r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
        return r;
    }
};

const char* k4_graph = "0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n";
// v=0, a=1, b=2, c=3: va=1, vb=2, vc=3, ab=3, ac=4, bc=1.
const char* k4_coloring = "0 1 1\n0 2 2\n0 3 3\n1 2 3\n1 3 4\n2 3 1\n";

}

TEST_F(Cli, ChromaticIndexOfFiveCycle)
{
    auto g = file("c5.txt", "0 1\n1 2\n2 3\n3 4\n4 0\n");
    Outcome r = run("chromatic-index --graph " + g);
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "3\n");
}

TEST_F(Cli, UsageAndParseErrors)
{
    EXPECT_EQ(run("").code, 1);
    EXPECT_EQ(run("frobnicate").code, 1);
    EXPECT_EQ(run("chromatic-index").code, 1);
    EXPECT_EQ(run("chromatic-index --graph " + path("missing.txt")).code, 1);
    auto bad = file("bad.txt", "0 1\n0 1\n");
    EXPECT_EQ(run("chromatic-index --graph " + bad).code, 1);
}

TEST_F(Cli, FanGolden)
{
    auto g = file("k4.txt", k4_graph);
    auto c = file("beta.txt", k4_coloring);
    Outcome r = run("fan --graph " + g + " --coloring " + c + " --vertex 0 --edge 0 1");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out,
        "center 0 missing 4\n"
        "1 0 1 color 1 vertex 1 missing 2\n"
        "2 0 2 color 2 vertex 2 missing 4\n"
        "shape path\n");
    Outcome by_color = run("fan --graph " + g + " --coloring " + c + " --vertex 0 --color 1");
    EXPECT_EQ(by_color.out, r.out);
}

TEST_F(Cli, TransformThenVerify)
{
    auto g = file("k4.txt", k4_graph);
    auto from = file("from.txt", k4_coloring);
    auto target = file("target.txt", "0 1 1\n2 3 1\n0 2 2\n1 3 2\n0 3 3\n1 2 3\n");
    auto trace = path("t.jsonl");
    Outcome t = run("transform --graph " + g + " --from " + from + " --target " + target + " --out " + trace);
    ASSERT_EQ(t.code, 0);
    std::string first = read("t.jsonl");
    EXPECT_FALSE(first.empty());

    Outcome again = run("transform --graph " + g + " --from " + from + " --target " + target + " --out " + trace);
    EXPECT_EQ(again.code, 0);
    EXPECT_EQ(read("t.jsonl"), first);

    Outcome v = run("verify-trace --graph " + g + " --from " + from + " --trace " + trace + " --expect " + target);
    EXPECT_EQ(v.code, 0);
    Outcome wrong = run("verify-trace --graph " + g + " --from " + from + " --trace " + trace + " --expect " + from);
    EXPECT_EQ(wrong.code, 3);
}

TEST_F(Cli, VerifyEmptyTrace)
{
    auto g = file("k4.txt", k4_graph);
    auto c = file("c.txt", k4_coloring);
    auto other = file("o.txt", "0 1 2\n0 2 1\n0 3 3\n1 2 3\n1 3 4\n2 3 4\n");
    auto empty = file("e.jsonl", "");
    EXPECT_EQ(run("verify-trace --graph " + g + " --from " + c + " --trace " + empty + " --expect " + c).code, 0);
    EXPECT_EQ(run("verify-trace --graph " + g + " --from " + c + " --trace " + empty + " --expect " + other).code, 3);
    auto stale = file("s.jsonl", "{\"a\":1,\"b\":2,\"anchor\":{\"edge\":[0,3]}}\n");
    EXPECT_EQ(run("verify-trace --graph " + g + " --from " + c + " --trace " + stale + " --expect " + c).code, 3);
}

TEST_F(Cli, ZeroBudgetIsBudgetFailure)
{
    auto g = file("k4.txt", k4_graph);
    auto from = file("from.txt", k4_coloring);
    auto target = file("target.txt", "0 1 1\n2 3 1\n0 2 2\n1 3 2\n0 3 3\n1 2 3\n");
    Outcome r = run("transform --graph " + g + " --from " + from + " --target " + target + " --max-states 0");
    EXPECT_EQ(r.code, 2);
}

TEST_F(Cli, Explore)
{
    auto g = file("k3.txt", "0 1\n1 2\n0 2\n");
    Outcome r = run("explore --graph " + g + " -k 4");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "colorings 24\nclasses 1\nsizes 24\ndiameter " + r.out.substr(r.out.rfind(' ') + 1));
    Outcome csv = run("explore --graph " + g + " -k 3 --csv");
    EXPECT_EQ(csv.out.substr(0, csv.out.find('\n')), "k,colorings,classes,diameter,sizes");
    EXPECT_EQ(csv.out.substr(csv.out.find('\n') + 1, 7), "3,6,1,2");
}

TEST_F(Cli, RegularizeWritesGraphAndEmbedding)
{
    auto g = file("p3.txt", "0 1\n1 2\n");
    Outcome r = run("regularize --graph " + g + " --out " + path("c6.txt") + " --embedding " + path("emb.json"));
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(read("c6.txt"), "0 1\n0 3\n1 2\n2 5\n3 4\n4 5\n");
    EXPECT_NE(read("emb.json").find("\"matched\""), std::string::npos);
}

TEST_F(Cli, ColorIsDeterministic)
{
    auto g = file("k4.txt", k4_graph);
    Outcome a = run("color --graph " + g + " -k 4 --random --seed 3");
    Outcome b = run("color --graph " + g + " -k 4 --random --seed 3");
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    Outcome first = run("color --graph " + g);
    EXPECT_EQ(first.out, "0 1 1\n0 2 2\n0 3 3\n1 2 3\n1 3 2\n2 3 1\n");
    EXPECT_EQ(run("color --graph " + g + " -k 2").code, 1);
}
