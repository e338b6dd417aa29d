#pragma once

#include "matrix.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace fgq {

using RationalVector = std::vector<Rational>;

struct SingularMatrixError : std::domain_error {
    using std::domain_error::domain_error;
};

// Reduced row echelon form in place; returns pivot columns.
inline std::vector<std::size_t> rref(RationalMatrix& A)
{
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < A.cols() && row < A.rows(); ++col) {
        std::size_t p = row;
        while (p < A.rows() && sgn(A(p, col)) == 0)
            ++p;
        if (p == A.rows())
            continue;
        if (p != row)
            for (std::size_t j = 0; j < A.cols(); ++j)
                std::swap(A(p, j), A(row, j));
        const Rational inv = 1 / A(row, col);
        for (std::size_t j = col; j < A.cols(); ++j)
            A(row, j) *= inv;
        for (std::size_t i = 0; i < A.rows(); ++i) {
            if (i == row || sgn(A(i, col)) == 0)
                continue;
            const Rational f = A(i, col);
            for (std::size_t j = col; j < A.cols(); ++j)
                A(i, j) -= f * A(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

inline std::size_t rank(RationalMatrix A) { return rref(A).size(); }

// basis of {x : A x = 0}, one column per basis vector (free variables set to the unit vectors)
inline std::vector<RationalVector> nullspace(RationalMatrix A)
{
    const auto piv = rref(A);
    std::vector<bool> is_pivot(A.cols(), false);
    for (auto p : piv)
        is_pivot[p] = true;
    std::vector<RationalVector> out;
    for (std::size_t f = 0; f < A.cols(); ++f) {
        if (is_pivot[f])
            continue;
        RationalVector v(A.cols(), Rational(0));
        v[f] = 1;
        for (std::size_t r = 0; r < piv.size(); ++r)
            v[piv[r]] = -A(r, f);
        out.push_back(std::move(v));
    }
    return out;
}

// covectors u with u A = 0
inline std::vector<RationalVector> left_nullspace(const RationalMatrix& A) { return nullspace(A.transposed()); }

inline Rational determinant(RationalMatrix A)
{
    if (!A.square())
        throw DimensionError("determinant of a non-square matrix");
    const std::size_t n = A.rows();
    Rational det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && sgn(A(p, c)) == 0)
            ++p;
        if (p == n)
            return 0;
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j)
                std::swap(A(p, j), A(c, j));
            det = -det;
        }
        det *= A(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            if (sgn(A(i, c)) == 0)
                continue;
            const Rational f = A(i, c) / A(c, c);
            for (std::size_t j = c; j < n; ++j)
                A(i, j) -= f * A(c, j);
        }
    }
    return det;
}

inline RationalMatrix inverse(const RationalMatrix& A)
{
    if (!A.square())
        throw DimensionError("inverse of a non-square matrix");
    const std::size_t n = A.rows();
    RationalMatrix W(n, 2 * n, Rational(0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            W(i, j) = A(i, j);
        W(i, n + i) = 1;
    }
    const auto piv = rref(W);
    if (piv.size() < n || piv[n - 1] != n - 1)
        throw SingularMatrixError("matrix is singular");
    RationalMatrix inv(n, n, Rational(0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            inv(i, j) = W(i, n + j);
    return inv;
}

// unique x with A x = b, or nullopt when inconsistent or underdetermined
inline std::optional<RationalVector> solve_unique(const RationalMatrix& A, const RationalVector& b)
{
    RationalMatrix W(A.rows(), A.cols() + 1, Rational(0));
    for (std::size_t i = 0; i < A.rows(); ++i) {
        for (std::size_t j = 0; j < A.cols(); ++j)
            W(i, j) = A(i, j);
        W(i, A.cols()) = b.at(i);
    }
    const auto piv = rref(W);
    if (!piv.empty() && piv.back() == A.cols())
        return std::nullopt;
    if (piv.size() != A.cols())
        return std::nullopt;
    RationalVector x(A.cols());
    for (std::size_t r = 0; r < piv.size(); ++r)
        x[piv[r]] = W(r, A.cols());
    return x;
}

// first k columns of A
inline RationalMatrix leading_columns(const RationalMatrix& A, std::size_t k)
{
    RationalMatrix out(A.rows(), k, Rational(0));
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t j = 0; j < k; ++j)
            out(i, j) = A(i, j);
    return out;
}

// column concatenation; empty blocks allowed as long as at least one row count is known
inline RationalMatrix hstack(const std::vector<RationalMatrix>& blocks, std::size_t rows)
{
    std::size_t cols = 0;
    for (const auto& b : blocks) {
        if (b.cols() && b.rows() != rows)
            throw DimensionError("hstack row mismatch");
        cols += b.cols();
    }
    RationalMatrix out(rows, cols, Rational(0));
    std::size_t o = 0;
    for (const auto& b : blocks) {
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < b.cols(); ++j)
                out(i, o + j) = b(i, j);
        o += b.cols();
    }
    return out;
}

inline RationalMatrix rows_to_matrix(const std::vector<RationalVector>& rows)
{
    if (rows.empty())
        throw DimensionError("no rows");
    RationalMatrix M(rows.size(), rows[0].size(), Rational(0));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != M.cols())
            throw DimensionError("ragged rows");
        for (std::size_t j = 0; j < M.cols(); ++j)
            M(i, j) = rows[i][j];
    }
    return M;
}

inline RationalMatrix columns_to_matrix(const std::vector<RationalVector>& cols)
{
    return rows_to_matrix(cols).transposed();
}

inline RationalVector row_times(const RationalVector& u, const RationalMatrix& A)
{
    if (u.size() != A.rows())
        throw DimensionError("covector length mismatch");
    RationalVector r(A.cols(), Rational(0));
    for (std::size_t i = 0; i < A.rows(); ++i)
        if (sgn(u[i]))
            for (std::size_t j = 0; j < A.cols(); ++j)
                r[j] += u[i] * A(i, j);
    return r;
}

inline bool is_zero_vector(const RationalVector& v)
{
    for (const auto& x : v)
        if (sgn(x))
            return false;
    return true;
}

inline RationalVector scaled(const RationalVector& v, const Rational& s)
{
    RationalVector r(v);
    for (auto& x : r)
        x *= s;
    return r;
}

// s with w = s v, if any (v nonzero)
inline std::optional<Rational> proportionality(const RationalVector& w, const RationalVector& v)
{
    std::optional<Rational> s;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (sgn(v[i])) {
            s = w[i] / v[i];
            break;
        }
    if (!s)
        return std::nullopt;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (w[i] != *s * v[i])
            return std::nullopt;
    return s;
}

} // namespace fgq
