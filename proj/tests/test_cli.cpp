#include "support.hpp"
#include "fgq/io.hpp"

#include <catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <sys/wait.h>

using namespace fgq;

namespace {

struct Run {
    int status = -1;
    std::string out;
};

Run run(const std::string& args)
{
    const std::string cmd = std::string(FGQ_CLI_PATH) + " " + args + " 2>/dev/null";
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p);
    std::array<char, 4096> buf{};
    while (std::size_t k = fread(buf.data(), 1, buf.size(), p))
        r.out.append(buf.data(), k);
    const int st = pclose(p);
    r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

} // namespace

TEST_CASE("check subcommand", "[cli]")
{
    const auto r = run("check --n 3 --which left,right");
    REQUIRE(r.status == 0);
    const auto j = json::parse(r.out);
    CHECK(j["schema"] == "fgq/1");
    CHECK(j["passed"].get<bool>());
    CHECK(j["results"].contains("left"));
    CHECK(j["results"].contains("right"));

    const auto t = run("check --n 2 --which right --emit-failures text");
    CHECK(t.status == 0);
    CHECK(t.out.find("right: pass") != std::string::npos);
}

TEST_CASE("usage errors exit with 2", "[cli]")
{
    CHECK(run("check --n 1 --which left").status == 2);
    CHECK(run("check --which left").status == 2);
    CHECK(run("check --n 3 --which up").status == 2);
    CHECK(run("build --n 3 --matrix middle").status == 2);
    CHECK(run("classical verify --n 3 --prop nothing").status == 2);
    CHECK(run("classical verify --n 3 --trials 0").status == 2);
    CHECK(run("frobnicate").status == 2);
    CHECK(run("").status == 2);
}

TEST_CASE("build subcommand", "[cli]")
{
    const auto tex = run("build --n 4 --matrix left --quantum --format latex");
    REQUIRE(tex.status == 0);
    CHECK(tex.out.find("L^{\\omega} = \\left[") != std::string::npos);
    CHECK(tex.out.find("% S^left_2(X1)") != std::string::npos);
    CHECK(tex.out.find("\\end{pmatrix}") != std::string::npos);

    // JSON entries parse back into the quantum matrix
    for (const char* side : {"left", "right"}) {
        const auto r = run(std::string("build --n 3 --quantum --matrix ") + side);
        REQUIRE(r.status == 0);
        const auto j = json::parse(r.out);
        CHECK(j["schema"] == "fgq/1");
        const auto s = fg_poisson(3);
        const auto M = quantum_fg_matrix(s, std::string(side) == "left" ? Side::left : Side::right);
        for (std::size_t a = 0; a < 3; ++a)
            for (std::size_t b = 0; b < 3; ++b)
                CHECK(element_from_json(j["entries"][a][b], s.torus) == M(a, b));
    }

    const auto edge = run("build --n 3 --matrix edge --edge \"Z''\" --format text");
    CHECK(edge.status == 0);
    CHECK(edge.out.find("Z''1") != std::string::npos);
}

TEST_CASE("quiver subcommand", "[cli]")
{
    const auto r = run("quiver --n 4 --format json");
    REQUIRE(r.status == 0);
    const auto j = json::parse(r.out);
    CHECK(j["aliases"]["X2"] == "2,1,1");
    CHECK(j["poisson"]["1,1,2"]["1,2,1"] == 2);
    CHECK(j["poisson_by_alias"]["X3"]["Z''2"] == 2);
    CHECK(j["vertices"].size() == 12);
}

TEST_CASE("factorize subcommand", "[cli]")
{
    const auto r = run("factorize --n 4 --side left --emit json");
    REQUIRE(r.status == 0);
    const auto j = json::parse(r.out);
    CHECK(j["passed"].get<bool>());
    CHECK(j["embedding"]["X2"]["image"] == "1 (x) z'2 (x) z2 x2 z'2 (x) z2 z'2 (x) z2 (x) 1");
    CHECK(j["snake_move_tori"].size() == 3);
    CHECK(j["lhs"] == j["rhs"]);
}

TEST_CASE("classical subcommands", "[cli]")
{
    const auto a = run("classical invariants --n 3 --seed 7 --trials 3 --format json");
    const auto b = run("classical invariants --n 3 --seed 7 --trials 3 --format json");
    REQUIRE(a.status == 0);
    CHECK(a.out == b.out);
    const auto j = json::parse(a.out);
    CHECK(j["results"].size() == 3);
    CHECK(j["results"][0]["tau"].contains("1,1,1"));

    for (const char* p : {"diamond", "tail", "right", "edge", "uturn", "shears"}) {
        const auto v = run(std::string("classical verify --n 3 --trials 5 --seed 2 --prop ") + p);
        INFO(p);
        CHECK(v.status == 0);
        CHECK(json::parse(v.out)["passed"].get<bool>());
    }
}
