#include "support.hpp"

#include <catch_amalgamated.hpp>

using namespace fgq;

namespace {

using Exps = std::vector<std::pair<std::string, long>>;

// hand-built monomials in the FG torus variables, numerators over n
CommutativePoly mono(const FGQuiverSpec& s, const Exps& xs)
{
    ExponentVector e(s.vertices.size(), 0);
    for (const auto& [name, num] : xs)
        e[s.index(s.lookup(name))] += num;
    return CommutativePoly::monomial(e);
}

// scalar-monomial times (diagonal + one off-diagonal 1)
CommutativeMatrix shaped(const FGQuiverSpec& s, const Exps& scalar, const std::vector<Exps>& diag, int r, int c)
{
    const std::size_t n = diag.size();
    CommutativeMatrix M(n, n, CommutativePoly(s.vertices.size()));
    for (std::size_t i = 0; i < n; ++i) {
        Exps d = diag[i];
        d.insert(d.end(), scalar.begin(), scalar.end());
        M(i, i) = mono(s, d);
    }
    if (r >= 0)
        M(r, c) = mono(s, scalar);
    return M;
}

TorusElement weyl_sum(const FGQuiverSpec& s, const std::vector<Exps>& terms)
{
    TorusElement u(s.torus);
    for (const auto& t : terms)
        u += weyl_order(mono(s, t), s.torus);
    return u;
}

Exps cat(Exps a, const Exps& b)
{
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

} // namespace

TEST_CASE("matrix products keep factor order", "[ncmatrix]")
{
    const auto t = make_torus(2, {"a", "b"}, {{0, 1}, {-1, 0}});
    const auto a = TorusElement::generator(t, "a"), b = TorusElement::generator(t, "b");
    QuantumMatrix A(1, 1, a), B(1, 1, b);
    CHECK((A * B)(0, 0) == a * b);
    CHECK_FALSE((A * B)(0, 0) == (B * A)(0, 0));
    QuantumMatrix M(2, 2, TorusElement::zero(t));
    M(0, 0) = a;
    M(0, 1) = b;
    M(1, 1) = a * b;
    CHECK(M * quantum_identity(2, t) == M);
    CHECK(quantum_identity(2, t) * M == M);
    CHECK_THROWS_AS(M * QuantumMatrix(3, 3, a), DimensionError);

    const auto S = shear_left(2, 1, std::nullopt, 0);
    const auto S2 = S * S;
    CHECK(S2(0, 1) == CommutativePoly::constant(0, 2));
    CHECK(S2(0, 0) == CommutativePoly::constant(0, 1));
    CHECK(S2(1, 0).is_zero());
}

TEST_CASE("shearing matrices", "[ncmatrix]")
{
    for (int n = 2; n <= 6; ++n) {
        const auto one = CommutativePoly::constant(1, 1);
        for (int k = 1; k < n; ++k) {
            CHECK(commutative_determinant(shear_left(n, k, 0, 1), CommutativePoly(1), one) == one);
            CHECK(commutative_determinant(shear_right(n, k, 0, 1), CommutativePoly(1), one) == one);
            CHECK(commutative_determinant(shear_edge(n, k, 0, 1), CommutativePoly(1), one) == one);
        }
        const auto U = uturn(n);
        CHECK(determinant(U) == 1);
        // U^2 = (-1)^{n-1} I
        RationalMatrix sq = rational_identity(n);
        for (int i = 0; i < n; ++i)
            sq(i, i) = (n % 2) ? 1 : -1;
        CHECK(U * U == sq);
    }
    const auto S1 = shear_left(4, 1, std::nullopt, 0);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            CHECK(S1(i, j) == CommutativePoly::constant(0, (i == j || (i == 0 && j == 1)) ? 1 : 0));
    CHECK(shear_left(4, 1, 0, 1) == shear_left(4, 1, std::nullopt, 1));
    CHECK(shear_right(4, 1, 0, 1) == shear_right(4, 1, std::nullopt, 1));
    RationalMatrix U2(2, 2, Rational(0));
    U2(0, 1) = -1;
    U2(1, 0) = 1;
    CHECK(uturn(2) == U2);

    // S^edge_j(Z) = Z^{-j/n} diag(Z (j times), 1, ...)
    const auto E = shear_edge(4, 2, 0, 1);
    CHECK(E(0, 0) == CommutativePoly::monomial({2}));
    CHECK(E(1, 1) == CommutativePoly::monomial({2}));
    CHECK(E(2, 2) == CommutativePoly::monomial({-2}));
    CHECK(E(3, 3) == CommutativePoly::monomial({-2}));
    CHECK_THROWS_AS(shear_left(4, 4, 0, 1), std::out_of_range);
    CHECK_THROWS_AS(shear_edge(4, 0, 0, 1), std::out_of_range);
}

TEST_CASE("left and right sweep products", "[ncmatrix]")
{
    const auto s2 = fg_poisson(2);
    CHECK(m_left(2, {}, 0) == shear_left(2, 1, std::nullopt, 0));

    const auto s3 = fg_poisson(3);
    const auto x = interior_assignment(s3);
    const auto N = s3.vertices.size();
    const auto v111 = x.at({1, 1, 1});
    const auto S1 = shear_left(3, 1, std::nullopt, N);
    CHECK(m_left(3, x, N) == S1 * shear_left(3, 2, v111, N) * S1);
    CHECK(m_right(3, x, N) == shear_right(3, 1, std::nullopt, N) * shear_right(3, 2, v111, N) * shear_right(3, 1, std::nullopt, N));

    const auto s4 = fg_poisson(4);
    const auto x4 = interior_assignment(s4);
    const auto N4 = s4.vertices.size();
    const auto X = [&](const char* a) { return std::optional<std::size_t>(x4.at(s4.lookup(a))); };
    const auto L1 = shear_left(4, 1, std::nullopt, N4);
    CHECK(m_left(4, x4, N4) ==
          L1 * shear_left(4, 2, X("X1"), N4) * shear_left(4, 3, X("X2"), N4) * L1 * shear_left(4, 2, X("X3"), N4) * L1);
    CHECK_THROWS(m_left(4, {}, N4));

    for (int n = 2; n <= 6; ++n) {
        const auto s = fg_poisson(n);
        const auto one = CommutativePoly::constant(s.vertices.size(), 1);
        const auto zero = CommutativePoly(s.vertices.size());
        CHECK(commutative_determinant(classical_fg_matrix(s, Side::left), zero, one) == one);
    }
}

TEST_CASE("n = 4 quantum matrices match the displayed bracketed products", "[ncmatrix][example]")
{
    const auto s = fg_poisson(4);
    auto edge = [&](const std::string& p) {
        return shaped(s, {{p + "1", -1}, {p + "2", -2}, {p + "3", -3}},
                      {{{p + "1", 4}, {p + "2", 4}, {p + "3", 4}}, {{p + "2", 4}, {p + "3", 4}}, {{p + "3", 4}}, {}}, -1, -1);
    };
    const auto S1 = shaped(s, {}, {{}, {}, {}, {}}, 0, 1);
    const auto S2X1 = shaped(s, {{"X1", -1}}, {{{"X1", 4}}, {}, {}, {}}, 1, 2);
    const auto S3X2 = shaped(s, {{"X2", -2}}, {{{"X2", 4}}, {{"X2", 4}}, {}, {}}, 2, 3);
    const auto S2X3 = shaped(s, {{"X3", -1}}, {{{"X3", 4}}, {}, {}, {}}, 1, 2);
    const auto left = edge("Z") * S1 * S2X1 * S3X2 * S1 * S2X3 * S1 * edge("Z'");
    const auto L = quantum_left(s);
    CHECK(L == weyl_order(left, s.torus));

    const auto R1 = shaped(s, {}, {{}, {}, {}, {}}, 3, 2);
    const auto R2X2 = shaped(s, {{"X2", 1}}, {{}, {}, {}, {{"X2", -4}}}, 2, 1);
    const auto R3X1 = shaped(s, {{"X1", 2}}, {{}, {}, {{"X1", -4}}, {{"X1", -4}}}, 1, 0);
    const auto R2X3 = shaped(s, {{"X3", 1}}, {{}, {}, {}, {{"X3", -4}}}, 2, 1);
    const auto right = edge("Z") * R1 * R2X2 * R3X1 * R1 * R2X3 * R1 * edge("Z''");
    const auto R = quantum_right(s);
    CHECK(R == weyl_order(right, s.torus));

    // displayed 2x2 submatrix entries, Weyl-ordered term by term
    const Exps zl = {{"Z3", 1}, {"Z2", 2}, {"Z1", 3}}, zl2 = {{"Z3", 1}, {"Z2", 2}, {"Z1", -1}};
    const Exps zp = {{"Z'3", 1}, {"Z'2", -2}, {"Z'1", -1}}, zp2 = {{"Z'3", -3}, {"Z'2", -2}, {"Z'1", -1}};
    auto xs = [](long a, long b, long c) { return Exps{{"X1", a}, {"X2", b}, {"X3", c}}; };
    const auto a = weyl_sum(s, {cat(cat(zl, zp), xs(-1, -2, -1)), cat(cat(zl, zp), xs(-1, 2, -1)), cat(cat(zl, zp), xs(3, 2, -1))});
    const auto b = weyl_sum(s, {cat(cat(zl, zp2), xs(-1, -2, -1))});
    const auto c = weyl_sum(s, {cat(cat(zl2, zp), xs(-1, -2, -1)), cat(cat(zl2, zp), xs(-1, 2, -1))});
    const auto d = weyl_sum(s, {cat(cat(zl2, zp2), xs(-1, -2, -1))});
    CHECK(L(0, 2) == a);
    CHECK(L(0, 3) == b);
    CHECK(L(1, 2) == c);
    CHECK(L(1, 3) == d);
    CHECK(L(0, 2).term_count() == 3);
    CHECK(L(0, 3).term_count() == 1);
    CHECK(L(1, 2).term_count() == 2);
    CHECK(L(1, 3).term_count() == 1);

    const Exps zr = {{"Z3", 1}, {"Z2", -2}, {"Z1", -1}}, zr2 = {{"Z3", -3}, {"Z2", -2}, {"Z1", -1}};
    const Exps zq = {{"Z''3", 1}, {"Z''2", 2}, {"Z''1", 3}}, zq2 = {{"Z''3", 1}, {"Z''2", 2}, {"Z''1", -1}};
    auto ys = [](long x2, long x1) { return Exps{{"X2", x2}, {"X1", x1}, {"X3", 1}}; };
    const auto ra = weyl_sum(s, {cat(cat(zr, ys(1, 2)), zq)});
    const auto rb = weyl_sum(s, {cat(cat(zr, ys(1, -2)), zq2), cat(cat(zr, ys(1, 2)), zq2)});
    const auto rc = weyl_sum(s, {cat(cat(zr2, ys(1, 2)), zq)});
    const auto rd = weyl_sum(s, {cat(cat(zr2, ys(-3, -2)), zq2), cat(cat(zr2, ys(1, -2)), zq2), cat(cat(zr2, ys(1, 2)), zq2)});
    CHECK(R(2, 0) == ra);
    CHECK(R(2, 1) == rb);
    CHECK(R(3, 0) == rc);
    CHECK(R(3, 1) == rd);
    CHECK(R(2, 0).term_count() == 1);
    CHECK(R(2, 1).term_count() == 2);
    CHECK(R(3, 0).term_count() == 1);
    CHECK(R(3, 1).term_count() == 3);
}

TEST_CASE("n = 2 quantum left matrix", "[ncmatrix][example]")
{
    const auto s = fg_poisson(2);
    const auto L = quantum_left(s);
    auto w = [&](long z, long zp) { return weyl_order(Word{{"Z1", z}, {"Z'1", zp}}, s.torus); };
    CHECK(L(0, 0) == w(1, 1));
    CHECK(L(0, 1) == w(1, -1));
    CHECK(L(1, 0).is_zero());
    CHECK(L(1, 1) == w(-1, -1));
}

TEST_CASE("quantum matrices specialize to the classical product and use only their subalgebra", "[ncmatrix][property]")
{
    for (int n = 2; n <= 6; ++n) {
        const auto s = fg_poisson(n);
        for (Side side : {Side::left, Side::right}) {
            const auto Q = quantum_fg_matrix(s, side);
            REQUIRE(specialize_commutative(Q) == classical_fg_matrix(s, side));
            const auto allowed = subalgebra_generators(s, side);
            for (std::size_t i = 0; i < Q.rows(); ++i)
                for (std::size_t j = 0; j < Q.cols(); ++j)
                    for (const auto& [e, c] : Q(i, j).terms())
                        for (std::size_t g = 0; g < e.size(); ++g)
                            if (e[g])
                                REQUIRE(std::find(allowed.begin(), allowed.end(), s.names[g]) != allowed.end());
        }
    }
}

TEST_CASE("edge shears commute with left shears iff k != j, with right shears iff k != n-j", "[ncmatrix][lemma]")
{
    for (int n = 2; n <= 6; ++n)
        for (int k = 1; k < n; ++k)
            for (int j = 1; j < n; ++j) {
                const auto E = shear_edge(n, k, 0, 2);
                const auto Lj = shear_left(n, j, 1, 2);
                const auto Rj = shear_right(n, j, 1, 2);
                INFO("n=" << n << " k=" << k << " j=" << j);
                CHECK((E * Lj == Lj * E) == (k != j));
                CHECK((E * Rj == Rj * E) == (k != n - j));
            }
}
