#pragma once

#include "fgq/fgq.hpp"

#include <random>

namespace fgq::testing {

inline TorusPtr random_torus(std::mt19937_64& rng, int n, std::size_t N)
{
    std::uniform_int_distribution<int> d(-2, 2);
    IntMatrix P(N, std::vector<long>(N, 0));
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = i + 1; j < N; ++j) {
            P[i][j] = d(rng);
            P[j][i] = -P[i][j];
        }
    std::vector<std::string> names;
    for (std::size_t i = 0; i < N; ++i)
        names.push_back("g" + std::to_string(i + 1));
    return make_torus(n, names, P);
}

inline ExponentVector random_exponents(std::mt19937_64& rng, const QuantumTorus& t, int spread = 2)
{
    std::uniform_int_distribution<long> d(-spread * t.n(), spread * t.n());
    ExponentVector e(t.size());
    for (auto& x : e)
        x = d(rng);
    return e;
}

inline HalfOmegaLaurent random_coefficient(std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> num(-5, 5), den(1, 4), hp(-6, 6), terms(1, 2);
    HalfOmegaLaurent c;
    const int k = terms(rng);
    for (int i = 0; i < k; ++i) {
        int a = num(rng);
        if (a == 0)
            a = 1;
        Rational r(a, den(rng));
        r.canonicalize(); // mpq equality assumes canonical form
        c.add_term(hp(rng), r);
    }
    if (c.is_zero())
        c = HalfOmegaLaurent(1);
    return c;
}

inline TorusElement random_element(std::mt19937_64& rng, const TorusPtr& t, int max_terms = 4)
{
    std::uniform_int_distribution<int> k(1, max_terms);
    TorusElement u(t);
    const int m = k(rng);
    for (int i = 0; i < m; ++i)
        u.add_term(random_exponents(rng, *t), random_coefficient(rng));
    return u;
}

inline Word random_word(std::mt19937_64& rng, const QuantumTorus& t, std::size_t len)
{
    std::uniform_int_distribution<std::size_t> g(0, t.size() - 1);
    std::uniform_int_distribution<long> e(-2 * t.n(), 2 * t.n());
    Word w;
    for (std::size_t i = 0; i < len; ++i) {
        long x = e(rng);
        if (x == 0)
            x = 1;
        w.push_back({t.names()[g(rng)], x});
    }
    return w;
}

// flatten a matrix of monomials into Weyl-coefficient form for readable comparisons
inline std::string entry(const QuantumMatrix& M, std::size_t i, std::size_t j) { return M(i, j).str(); }

} // namespace fgq::testing
