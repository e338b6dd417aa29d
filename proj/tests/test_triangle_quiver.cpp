#include "support.hpp"

#include <catch_amalgamated.hpp>

using namespace fgq;

namespace {

bool adjacent(const ThetaVertex& u, const ThetaVertex& v)
{
    const int d[3] = {u.a - v.a, u.b - v.b, u.c - v.c};
    int plus = 0, minus = 0, zero = 0;
    for (int x : d) {
        plus += x == 1;
        minus += x == -1;
        zero += x == 0;
    }
    return plus == 1 && minus == 1 && zero == 1;
}

bool on_common_side(const ThetaVertex& u, const ThetaVertex& v)
{
    return (u.a == 0 && v.a == 0) || (u.b == 0 && v.b == 0) || (u.c == 0 && v.c == 0);
}

} // namespace

TEST_CASE("theta vertices", "[quiver]")
{
    const auto all = theta_vertices(4, 4);
    CHECK(all.size() == 15);
    CHECK(std::is_sorted(all.begin(), all.end()));
    const auto in = theta_interior(4);
    REQUIRE(in.size() == 3);
    CHECK(in[0] == ThetaVertex{1, 1, 2});
    CHECK(in[1] == ThetaVertex{1, 2, 1});
    CHECK(in[2] == ThetaVertex{2, 1, 1});
    CHECK(theta_interior(2).empty());
    CHECK(theta_vertices(4, 3).size() == 10);
    CHECK(ThetaVertex{4, 0, 0}.is_corner());
    CHECK_FALSE(ThetaVertex{3, 1, 0}.is_corner());
    CHECK_THROWS(theta_vertices(1, 1));

    const auto num = interior_numbering(4);
    REQUIRE(num.size() == 3);
    CHECK(num[0] == ThetaVertex{1, 1, 2});
    CHECK(num[1] == ThetaVertex{2, 1, 1});
    CHECK(num[2] == ThetaVertex{1, 2, 1});
}

TEST_CASE("FG quiver: size, aliases and antisymmetry", "[quiver]")
{
    for (int n = 2; n <= 8; ++n) {
        const auto s = fg_poisson(n);
        const std::size_t N = 3 * (n - 1) + (n - 1) * (n - 2) / 2;
        REQUIRE(s.vertices.size() == N);
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = 0; j < N; ++j) {
                REQUIRE(s.poisson[i][j] == -s.poisson[j][i]);
                REQUIRE(std::abs(s.poisson[i][j]) <= 2);
            }
        for (int j = 1; j < n; ++j) {
            CHECK(s.Z(j) == ThetaVertex{j, 0, n - j});
            CHECK(s.Zp(j) == ThetaVertex{j, n - j, 0});
            CHECK(s.Zpp(j) == ThetaVertex{0, j, n - j});
            CHECK(s.name(s.Z(j)) == "Z" + std::to_string(j));
            CHECK(s.name(s.Zp(j)) == "Z'" + std::to_string(j));
            CHECK(s.name(s.Zpp(j)) == "Z''" + std::to_string(j));
        }
    }
    const auto s4 = fg_poisson(4);
    CHECK(s4.lookup("X1") == ThetaVertex{1, 1, 2});
    CHECK(s4.lookup("X2") == ThetaVertex{2, 1, 1});
    CHECK(s4.lookup("X3") == ThetaVertex{1, 2, 1});
    CHECK(s4.lookup("2,1,1") == ThetaVertex{2, 1, 1});
    CHECK_THROWS(s4.lookup("Q7"));
}

TEST_CASE("FG quiver: lattice edge weights", "[quiver][property]")
{
    for (int n = 2; n <= 8; ++n) {
        const auto s = fg_poisson(n);
        for (const auto& u : s.vertices)
            for (const auto& v : s.vertices) {
                const long p = std::abs(s.P(u, v));
                if (!adjacent(u, v))
                    REQUIRE(p == 0);
                else if (on_common_side(u, v))
                    REQUIRE(p == 1);
                else
                    REQUIRE(p == 2);
            }
    }
}

TEST_CASE("FG quiver: n = 4 sample relations", "[quiver]")
{
    const auto s = fg_poisson(4);
    auto P = [&](const char* a, const char* b) { return s.P(s.lookup(a), s.lookup(b)); };
    CHECK(P("Z3", "Z2") == 1);
    CHECK(P("X1", "X3") == 2);
    CHECK(P("Z3", "Z'3") == 2);
    CHECK(P("X3", "Z''2") == 2);

    const auto& t = s.torus;
    const long q = 2 * 16;
    auto g = [&](const char* x) { return TorusElement::generator(t, x); };
    CHECK(g("X3") * g("X1") == (g("X1") * g("X3")).shifted(-2 * q));
    CHECK(g("Z3") * g("Z2") == (g("Z2") * g("Z3")).shifted(q));
    CHECK(g("Z3") * g("Z'3") == (g("Z'3") * g("Z3")).shifted(2 * q));
    CHECK(g("X3") * g("Z''2") == (g("Z''2") * g("X3")).shifted(2 * q));
}

TEST_CASE("FG quiver: n = 2", "[quiver]")
{
    const auto s = fg_poisson(2);
    REQUIRE(s.vertices.size() == 3);
    CHECK(s.P(s.lookup("Z1"), s.lookup("Z'1")) == 2);
}

TEST_CASE("subalgebra generators", "[quiver]")
{
    const auto s = fg_poisson(4);
    const auto L = subalgebra_generators(s, Side::left);
    const auto R = subalgebra_generators(s, Side::right);
    CHECK(L.size() == 9);
    CHECK(R.size() == 9);
    for (const auto& g : L)
        CHECK(g.rfind("Z''", 0) != 0);
    for (const auto& g : R)
        CHECK((g.rfind("Z'", 0) != 0 || g.rfind("Z''", 0) == 0));
    CHECK(std::count(R.begin(), R.end(), "Z''2") == 1);
    const auto L2 = subalgebra_generators(fg_poisson(2), Side::left);
    CHECK(L2 == std::vector<std::string>{"Z1", "Z'1"});
}
