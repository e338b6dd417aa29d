#pragma once

#include "matrix.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

namespace fgq {

struct RelationFailure {
    std::string relation;        // "ba=qab", ..., or "det=1"
    int i = -1, j = -1;          // rows, 0-based
    int k = -1, m = -1;          // columns, 0-based
    TorusElement residual;       // left side minus right side
};

struct RelationReport {
    std::vector<RelationFailure> failures;
    bool passed() const { return failures.empty(); }
};

// h-exponent of q in a torus with root order n
inline long q_power(const TorusPtr& t) { return 2L * t->n() * t->n(); }

namespace detail {

inline void m2q_relations(const TorusElement& a, const TorusElement& b, const TorusElement& c, const TorusElement& d,
                          int i, int j, int k, int m, std::vector<RelationFailure>& out)
{
    const long q = q_power(a.torus());
    auto test = [&](const char* name, TorusElement lhs, const TorusElement& rhs) {
        lhs -= rhs;
        if (!lhs.is_zero())
            out.push_back({name, i, j, k, m, std::move(lhs)});
    };
    test("ba=qab", b * a, (a * b).shifted(q));
    test("dc=qcd", d * c, (c * d).shifted(q));
    test("ca=qac", c * a, (a * c).shifted(q));
    test("db=qbd", d * b, (b * d).shifted(q));
    test("bc=cb", b * c, c * b);
    const auto bc = b * c;
    test("da-ad=(q-1/q)bc", d * a - a * d, bc.shifted(q) - bc.shifted(-q));
}

} // namespace detail

inline RelationReport check_m2q(const TorusElement& a, const TorusElement& b, const TorusElement& c,
                                const TorusElement& d)
{
    RelationReport r;
    detail::m2q_relations(a, b, c, d, 0, 1, 0, 1, r.failures);
    return r;
}

// every 2x2 submatrix (rows i<j, columns k<m) is an M_2^q point
inline RelationReport check_mnq(const QuantumMatrix& M)
{
    if (!M.square())
        throw DimensionError("quantum matrix relations need a square matrix");
    RelationReport r;
    const int n = int(M.rows());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int m = k + 1; m < n; ++m)
                    detail::m2q_relations(M(i, k), M(i, m), M(j, k), M(j, m), i, j, k, m, r.failures);
    return r;
}

// sum over permutations of (-q^{-1})^{inv(s)} M_{1 s(1)} ... M_{n s(n)}, rows ascending.
// For 2x2 this is ad - q^{-1} bc = da - q bc on M_2^q points.
inline TorusElement quantum_determinant(const QuantumMatrix& M)
{
    if (!M.square())
        throw DimensionError("quantum determinant of a non-square matrix");
    const int n = int(M.rows());
    const auto& t = M(0, 0).torus();
    const long q = q_power(t);
    TorusElement det = TorusElement::zero(t);
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        TorusElement term = TorusElement::one(t);
        bool zero = false;
        for (int i = 0; i < n && !zero; ++i) {
            if (M(i, perm[i]).is_zero())
                zero = true;
            else
                term *= M(i, perm[i]);
        }
        if (zero)
            continue;
        long inv = 0;
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                inv += perm[a] > perm[b];
        det += term.scaled(HalfOmegaLaurent(inv % 2 ? -1 : 1, -q * inv));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return det;
}

inline RelationReport check_slnq(const QuantumMatrix& M)
{
    RelationReport r = check_mnq(M);
    auto residual = quantum_determinant(M) - TorusElement::one(M(0, 0).torus());
    if (!residual.is_zero())
        r.failures.push_back({"det=1", -1, -1, -1, -1, std::move(residual)});
    return r;
}

} // namespace fgq
