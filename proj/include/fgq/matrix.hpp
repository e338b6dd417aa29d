#pragma once

#include "commutative.hpp"
#include "qtorus.hpp"
#include "rational.hpp"

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fgq {

struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

inline bool is_zero(const Rational& x) { return sgn(x) == 0; }
inline bool is_zero(const CommutativePoly& x) { return x.is_zero(); }
inline bool is_zero(const TorusElement& x) { return x.is_zero(); }

// Dense matrix over a possibly noncommutative ring; products keep the left factor on the left.
template <class T>
class Matrix {
public:
    Matrix(std::size_t rows, std::size_t cols, const T& fill) : r_(rows), c_(cols), a_(rows * cols, fill) {}

    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }
    bool square() const { return r_ == c_; }

    T& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }
    T& at(std::size_t i, std::size_t j)
    {
        if (i >= r_ || j >= c_)
            throw DimensionError("matrix index out of range");
        return (*this)(i, j);
    }
    const T& at(std::size_t i, std::size_t j) const
    {
        if (i >= r_ || j >= c_)
            throw DimensionError("matrix index out of range");
        return (*this)(i, j);
    }

    template <class F>
    auto map(F&& f) const
    {
        if (a_.empty())
            throw DimensionError("map over an empty matrix");
        using U = std::decay_t<decltype(f(a_[0]))>;
        Matrix<U> out(r_, c_, f(a_[0]));
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t j = 0; j < c_; ++j)
                out(i, j) = f((*this)(i, j));
        return out;
    }

    Matrix transposed() const
    {
        if (a_.empty())
            throw DimensionError("transpose of an empty matrix");
        Matrix t(c_, r_, a_[0]);
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t j = 0; j < c_; ++j)
                t(j, i) = (*this)(i, j);
        return t;
    }

    friend bool operator==(const Matrix& x, const Matrix& y)
    {
        return x.r_ == y.r_ && x.c_ == y.c_ && x.a_ == y.a_;
    }

private:
    std::size_t r_, c_;
    std::vector<T> a_;
};

// (AB)_ij = sum_k A_ik B_kj with A_ik on the left
template <class T>
Matrix<T> matmul(const Matrix<T>& A, const Matrix<T>& B)
{
    if (A.cols() != B.rows())
        throw DimensionError("inner dimensions differ: " + std::to_string(A.cols()) + " vs " + std::to_string(B.rows()));
    if (A.cols() == 0)
        throw DimensionError("empty inner dimension");
    Matrix<T> C(A.rows(), B.cols(), A(0, 0));
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t j = 0; j < B.cols(); ++j) {
            T acc = A(i, 0) * B(0, j);
            for (std::size_t k = 1; k < A.cols(); ++k)
                if (!is_zero(A(i, k)) && !is_zero(B(k, j)))
                    acc += A(i, k) * B(k, j);
            C(i, j) = std::move(acc);
        }
    return C;
}

template <class T>
Matrix<T> operator*(const Matrix<T>& A, const Matrix<T>& B)
{
    return matmul(A, B);
}

template <class T>
Matrix<T> identity_matrix(std::size_t n, const T& zero, const T& one)
{
    Matrix<T> I(n, n, zero);
    for (std::size_t i = 0; i < n; ++i)
        I(i, i) = one;
    return I;
}

// Leibniz expansion skipping zero entries; for commuting entries only.
template <class T>
T commutative_determinant(const Matrix<T>& M, const T& zero, const T& one)
{
    if (!M.square())
        throw DimensionError("determinant of a non-square matrix");
    const std::size_t n = M.rows();
    T total = zero;
    std::vector<std::size_t> perm;
    std::vector<bool> used(n, false);
    std::function<void(std::size_t, const T&, int)> rec = [&](std::size_t row, const T& acc, int sign) {
        if (row == n) {
            if (sign > 0)
                total += acc;
            else
                total -= acc;
            return;
        }
        for (std::size_t c = 0; c < n; ++c) {
            if (used[c] || is_zero(M(row, c)))
                continue;
            int inv = 0;
            for (std::size_t c2 = c + 1; c2 < n; ++c2)
                if (used[c2])
                    ++inv;
            used[c] = true;
            rec(row + 1, acc * M(row, c), (inv % 2) ? -sign : sign);
            used[c] = false;
        }
    };
    rec(0, one, 1);
    return total;
}

using RationalMatrix = Matrix<Rational>;
using CommutativeMatrix = Matrix<CommutativePoly>;
using QuantumMatrix = Matrix<TorusElement>;

inline RationalMatrix rational_identity(std::size_t n) { return identity_matrix<Rational>(n, 0, 1); }

inline CommutativeMatrix commutative_identity(std::size_t n, std::size_t nvars)
{
    return identity_matrix(n, CommutativePoly(nvars), CommutativePoly::constant(nvars, 1));
}

inline QuantumMatrix quantum_identity(std::size_t n, const TorusPtr& t)
{
    return identity_matrix(n, TorusElement::zero(t), TorusElement::one(t));
}

// Entrywise Weyl ordering of a commutative matrix into T.
inline QuantumMatrix weyl_order(const CommutativeMatrix& M, const TorusPtr& t)
{
    return M.map([&](const CommutativePoly& p) { return weyl_order(p, t); });
}

inline CommutativeMatrix specialize_commutative(const QuantumMatrix& M)
{
    return M.map([](const TorusElement& u) { return specialize_commutative(u); });
}

} // namespace fgq
