#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#ifndef TRIFLOW_CLI
#error "TRIFLOW_CLI must point at the triflow executable"
#endif

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string & args)
{
    std::string cmd = std::string("\"") + TRIFLOW_CLI + "\" " + args + " 2>/dev/null";
    Run r;
    FILE * p = popen(cmd.c_str(), "r");
    REQUIRE(p);
    std::array<char, 4096> buf{};
    while (auto n = std::fread(buf.data(), 1, buf.size(), p))
        r.out.append(buf.data(), n);
    int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

struct TempDir {
    std::filesystem::path path;
    TempDir()
    {
        path = std::filesystem::temp_directory_path() / ("triflow_cli_" + std::to_string(::getpid()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::string write(const std::string & name, const std::string & text) const
    {
        auto p = path / name;
        std::ofstream(p) << text;
        return p.string();
    }
};

}  // namespace

TEST_CASE("gen")
{
    auto r = run("gen --family w5star");
    CHECK(r.code == 0);
    CHECK(r.out.find("v 6") != std::string::npos);
    auto g = run("gen --family g2t:4");
    CHECK(g.code == 0);
    CHECK(g.out.find("x_i -> i-1") != std::string::npos);
    CHECK(run("--json gen --family wheel:4").out.find('{') != std::string::npos);
    CHECK(run("gen --family nothing").code == 3);
}

TEST_CASE("check")
{
    TempDir d;
    auto w5 = d.write("w5.graph", run("gen --family w5star").out);
    auto a = run("check " + w5 + " --checks admissible");
    CHECK(a.code == 0);
    CHECK(a.out == "admissible: true\n");

    auto k3 = d.write("k3.graph", "v 3\ne 0 1 +\ne 1 2 +\ne 2 0 -\n");
    auto b = run("check " + k3 + " --checks admissible");
    CHECK(b.code == 0);
    CHECK(b.out.rfind("admissible: false (equivalent to one negative edge", 0) == 0);

    auto bad = d.write("bad.graph", "v 3\ne 0 1 +\ne 1 9 +\n");
    CHECK(run("check " + bad).code == 3);

    auto all = run("check " + w5);
    CHECK(all.out.find("triangularly-connected: true") != std::string::npos);
    CHECK(all.out.find("balanced: false") != std::string::npos);
    CHECK(run("check " + w5 + " --checks nonsense").code == 3);
}

TEST_CASE("solve")
{
    TempDir d;
    auto w5 = d.write("w5.graph", run("gen --family w5star").out);
    auto g8 = d.write("g8.graph", run("gen --family g2t:4").out);
    CHECK(run("solve " + w5 + " -k 4").code == 1);
    CHECK(run("solve " + w5 + " -k 5").code == 0);
    auto f = run("solve " + g8 + " -k 4 --mode int");
    CHECK(f.code == 0);
    CHECK(f.out.rfind("flow 4 int", 0) == 0);
    CHECK(run("solve " + g8 + " -k 3").code == 1);
    CHECK(run("--budget 3 solve " + g8 + " -k 4").code == 2);
    CHECK(run("solve " + d.path.string() + "/missing.graph -k 4").code == 3);
    CHECK(run("solve " + g8).code == 3);
    CHECK(run("solve " + g8 + " -k 3 --mode mod").code <= 1);
}

TEST_CASE("verify")
{
    TempDir d;
    auto g8 = d.write("g8.graph", run("gen --family g2t:4").out);
    auto cert = run("solve " + g8 + " -k 4").out;
    auto good = d.write("good.flow", cert);
    auto v = run("verify " + g8 + " " + good);
    CHECK(v.code == 0);

    // taus for the zero flow come from the certificate
    std::string zero_text = "flow 4 int\n";
    std::istringstream in(cert);
    std::string line;
    std::getline(in, line);
    std::string bumped = "flow 4 int\n";
    bool first = true;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string f;
        int e, a, b, val;
        ls >> f >> e >> a >> b >> val;
        zero_text += "f " + std::to_string(e) + " " + std::to_string(a) + " " + std::to_string(b) + " 0\n";
        int nv = val;
        if (first) {
            nv = val == 1 ? 2 : 1;
            first = false;
        }
        bumped += "f " + std::to_string(e) + " " + std::to_string(a) + " " + std::to_string(b) + " " + std::to_string(nv) + "\n";
    }
    CHECK(run("verify " + g8 + " " + d.write("zero.flow", zero_text)).code == 1);
    auto bad = run("verify " + g8 + " " + d.write("bumped.flow", bumped));
    CHECK(bad.code == 2);
    CHECK(bad.out.find("conservation fails at vertex") != std::string::npos);
    CHECK(run("verify " + g8 + " " + d.write("junk.flow", "flow four int\n")).code == 3);
}

TEST_CASE("construct")
{
    TempDir d;
    auto g8 = d.write("g8.graph", run("gen --family g2t:4").out);
    auto c = run("construct " + g8);
    CHECK(c.code == 0);
    auto cert = d.write("c.flow", c.out);
    CHECK(run("verify " + g8 + " " + cert).code == 0);
    auto w5 = d.write("w5.graph", run("gen --family w5star").out);
    CHECK(run("construct " + w5).code == 1);
}

TEST_CASE("sweep")
{
    TempDir d;
    auto out = d.path.string() + "/sweep.tsv";
    auto r = run("sweep --n-max 4 --out " + out);
    CHECK(r.code == 0);
    std::ifstream in(out);
    std::string header;
    std::getline(in, header);
    CHECK(header.rfind("n\tm\tcode", 0) == 0);
    int rows = 0;
    std::string line;
    while (std::getline(in, line))
        ++rows;
    CHECK(rows > 0);
    CHECK(run("sweep --n-max 8").code == 2);
}

TEST_CASE("match")
{
    TempDir d;
    auto w5 = d.write("w5.graph", run("gen --family w5star").out);
    auto m = run("match " + w5 + " --pattern W5star");
    CHECK(m.code == 0);
    CHECK(m.out.rfind("W5star: 10 embeddings", 0) == 0);
    auto pat = d.write("tri.pattern", "v 3\ne 0 1 +\ne 1 2 +\ne 2 0 -\n");
    auto t = run("match " + w5 + " --pattern " + pat);
    CHECK(t.code == 0);
    CHECK(t.out.find("30 embeddings") != std::string::npos);
    CHECK(run("match " + w5 + " --pattern NoSuch").code == 3);
}
