#pragma once

#include "matrix.hpp"
#include "triangle_quiver.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fgq {

namespace detail {

inline void check_shear_index(int n, int k)
{
    if (n < 2 || k < 1 || k > n - 1)
        throw std::out_of_range("shear index " + std::to_string(k) + " outside 1.." + std::to_string(n - 1));
}

inline CommutativePoly var_power(std::size_t nvars, const std::optional<std::size_t>& v, long numerator)
{
    ExponentVector e(nvars, 0);
    if (v)
        e.at(*v) = numerator;
    return CommutativePoly::monomial(e);
}

} // namespace detail

// Commutative-layer shearing matrices.  Variables are indices into an nvars-variable ring whose
// exponents are numerators over n.  With normalized = false the determinant normalizer is omitted.

// X^{-(k-1)/n} (diag(X,..,X,1,..,1) + E_{k,k+1}), X in the first k-1 slots
inline CommutativeMatrix shear_left(int n, int k, std::optional<std::size_t> x, std::size_t nvars, bool normalized = true)
{
    detail::check_shear_index(n, k);
    if (k > 1 && !x)
        throw std::invalid_argument("shear_left with k > 1 needs a variable");
    const auto var = k == 1 ? std::nullopt : x;
    const long s = normalized ? -(k - 1) : 0;
    CommutativeMatrix M(n, n, CommutativePoly(nvars));
    for (int i = 0; i < n; ++i)
        M(i, i) = detail::var_power(nvars, var, s + (i < k - 1 ? n : 0));
    M(k - 1, k) = detail::var_power(nvars, var, s);
    return M;
}

// X^{(k-1)/n} (diag(1,..,1,X^{-1},..,X^{-1}) + E_{n-k+1,n-k}), X^{-1} in the last k-1 slots
inline CommutativeMatrix shear_right(int n, int k, std::optional<std::size_t> x, std::size_t nvars, bool normalized = true)
{
    detail::check_shear_index(n, k);
    if (k > 1 && !x)
        throw std::invalid_argument("shear_right with k > 1 needs a variable");
    const auto var = k == 1 ? std::nullopt : x;
    const long s = normalized ? (k - 1) : 0;
    CommutativeMatrix M(n, n, CommutativePoly(nvars));
    for (int i = 0; i < n; ++i)
        M(i, i) = detail::var_power(nvars, var, s - (i >= n - k + 1 ? n : 0));
    M(n - k, n - k - 1) = detail::var_power(nvars, var, s);
    return M;
}

// Z^{-j/n} diag(Z,..,Z,1,..,1), Z in the first j slots
inline CommutativeMatrix shear_edge(int n, int j, std::size_t z, std::size_t nvars, bool normalized = true)
{
    detail::check_shear_index(n, j);
    const long s = normalized ? -j : 0;
    CommutativeMatrix M(n, n, CommutativePoly(nvars));
    for (int i = 0; i < n; ++i)
        M(i, i) = detail::var_power(nvars, z, s + (i < j ? n : 0));
    return M;
}

// antidiagonal U_{n+1-i, i} = (-1)^{i-1}
template <class T>
Matrix<T> uturn(int n, const T& zero, const T& one)
{
    if (n < 2)
        throw std::out_of_range("U-turn matrix needs n >= 2");
    Matrix<T> U(n, n, zero);
    for (int i = 1; i <= n; ++i)
        U(n - i, i - 1) = (i % 2) ? one : zero - one;
    return U;
}

inline RationalMatrix uturn(int n) { return uturn<Rational>(n, 0, 1); }

// Rational closed forms with the fractional normalizer removed:
// X^{(k-1)/n} S^left_k(X), X^{-(k-1)/n} S^right_k(X), Z^{j/n} S^edge_j(Z).
inline RationalMatrix shear_left_scaled(int n, int k, const Rational& x)
{
    detail::check_shear_index(n, k);
    RationalMatrix M = rational_identity(n);
    for (int i = 0; i < k - 1; ++i)
        M(i, i) = x;
    M(k - 1, k) = 1;
    return M;
}

inline RationalMatrix shear_right_scaled(int n, int k, const Rational& x)
{
    detail::check_shear_index(n, k);
    RationalMatrix M = rational_identity(n);
    for (int i = n - k + 1; i < n; ++i)
        M(i, i) = 1 / x;
    M(n - k, n - k - 1) = 1;
    return M;
}

inline RationalMatrix shear_edge_scaled(int n, int j, const Rational& z)
{
    detail::check_shear_index(n, j);
    RationalMatrix M = rational_identity(n);
    for (int i = 0; i < j; ++i)
        M(i, i) = z;
    return M;
}

// prod_{k=n-1}^{1} ( S_1 prod_{l=2}^{k} S_l(X_v) ); descending outer index, ascending inner.
// factor(l, v) returns the l-th shear at vertex v (no vertex when l = 1).
template <class T, class F>
Matrix<T> left_sweep_product(int n, Matrix<T> acc, F&& factor)
{
    for (int k = n - 1; k >= 1; --k) {
        acc = acc * factor(1, std::optional<ThetaVertex>{});
        for (int l = 2; l <= k; ++l)
            acc = acc * factor(l, std::optional<ThetaVertex>{ThetaVertex{l - 1, n - k, k - l + 1}});
    }
    return acc;
}

template <class T, class F>
Matrix<T> right_sweep_product(int n, Matrix<T> acc, F&& factor)
{
    for (int k = n - 1; k >= 1; --k) {
        acc = acc * factor(1, std::optional<ThetaVertex>{});
        for (int l = 2; l <= k; ++l)
            acc = acc * factor(l, std::optional<ThetaVertex>{ThetaVertex{k - l + 1, n - k, l - 1}});
    }
    return acc;
}

using VertexAssignment = std::map<ThetaVertex, std::size_t>;

namespace detail {

inline std::size_t assigned(const VertexAssignment& x, const ThetaVertex& v)
{
    auto it = x.find(v);
    if (it == x.end())
        throw std::invalid_argument("no variable assigned to vertex " + v.key());
    return it->second;
}

} // namespace detail

inline CommutativeMatrix m_left(int n, const VertexAssignment& x, std::size_t nvars, bool normalized = true)
{
    return left_sweep_product(n, commutative_identity(n, nvars), [&](int l, std::optional<ThetaVertex> v) {
        return shear_left(n, l, v ? std::optional<std::size_t>(detail::assigned(x, *v)) : std::nullopt, nvars, normalized);
    });
}

inline CommutativeMatrix m_right(int n, const VertexAssignment& x, std::size_t nvars, bool normalized = true)
{
    return right_sweep_product(n, commutative_identity(n, nvars), [&](int l, std::optional<ThetaVertex> v) {
        return shear_right(n, l, v ? std::optional<std::size_t>(detail::assigned(x, *v)) : std::nullopt, nvars, normalized);
    });
}

// prod_{l=1}^{n-1} S^edge_l(Z_l); z[l-1] is the variable of Z_l
inline CommutativeMatrix m_edge(int n, const std::vector<std::size_t>& z, std::size_t nvars, bool normalized = true)
{
    if (z.size() != std::size_t(n - 1))
        throw std::invalid_argument("edge matrix needs n-1 variables");
    CommutativeMatrix M = commutative_identity(n, nvars);
    for (int l = 1; l <= n - 1; ++l)
        M = M * shear_edge(n, l, z[l - 1], nvars, normalized);
    return M;
}

// FG variables of the quiver torus
inline VertexAssignment interior_assignment(const FGQuiverSpec& s)
{
    VertexAssignment x;
    for (const auto& v : theta_interior(s.n))
        x[v] = s.index(v);
    return x;
}

enum class EdgeKind { Z, Zp, Zpp };

inline std::vector<std::size_t> edge_assignment(const FGQuiverSpec& s, EdgeKind kind)
{
    std::vector<std::size_t> z;
    for (int j = 1; j < s.n; ++j)
        z.push_back(s.index(kind == EdgeKind::Z ? s.Z(j) : kind == EdgeKind::Zp ? s.Zp(j) : s.Zpp(j)));
    return z;
}

// M^edge(Z) M^left M^edge(Z') (left) or M^edge(Z) M^right M^edge(Z'') (right) in the q = 1 layer
inline CommutativeMatrix classical_fg_matrix(const FGQuiverSpec& s, Side side, bool normalized = true)
{
    const std::size_t N = s.vertices.size();
    const auto x = interior_assignment(s);
    const auto inner = side == Side::left ? m_left(s.n, x, N, normalized) : m_right(s.n, x, N, normalized);
    const auto last = edge_assignment(s, side == Side::left ? EdgeKind::Zp : EdgeKind::Zpp);
    return m_edge(s.n, edge_assignment(s, EdgeKind::Z), N, normalized) * inner * m_edge(s.n, last, N, normalized);
}

struct LabeledFactor {
    std::string label; // e.g. "S^left_2(X1)", "S^edge_3(Z'3)"
    CommutativeMatrix matrix;
};

// The factors of classical_fg_matrix in multiplication order; their product is the whole matrix.
inline std::vector<LabeledFactor> fg_factors(const FGQuiverSpec& s, Side side, bool normalized = true)
{
    const int n = s.n;
    const std::size_t N = s.vertices.size();
    std::vector<LabeledFactor> out;
    auto edge = [&](EdgeKind kind) {
        const auto z = edge_assignment(s, kind);
        for (int l = 1; l < n; ++l)
            out.push_back({"S^edge_" + std::to_string(l) + "(" + s.names[z[l - 1]] + ")",
                           shear_edge(n, l, z[l - 1], N, normalized)});
    };
    edge(EdgeKind::Z);
    const auto x = interior_assignment(s);
    const char* tag = side == Side::left ? "S^left_" : "S^right_";
    auto record = [&](int l, std::optional<ThetaVertex> v) {
        const auto var = v ? std::optional<std::size_t>(detail::assigned(x, *v)) : std::nullopt;
        auto M = side == Side::left ? shear_left(n, l, var, N, normalized) : shear_right(n, l, var, N, normalized);
        out.push_back({tag + std::to_string(l) + (v ? "(" + s.name(*v) + ")" : ""), M});
        return M;
    };
    if (side == Side::left)
        left_sweep_product(n, commutative_identity(n, N), record);
    else
        right_sweep_product(n, commutative_identity(n, N), record);
    edge(side == Side::left ? EdgeKind::Zp : EdgeKind::Zpp);
    return out;
}

inline QuantumMatrix quantum_left(const FGQuiverSpec& s, bool normalized = true)
{
    return weyl_order(classical_fg_matrix(s, Side::left, normalized), s.torus);
}

inline QuantumMatrix quantum_right(const FGQuiverSpec& s, bool normalized = true)
{
    return weyl_order(classical_fg_matrix(s, Side::right, normalized), s.torus);
}

inline QuantumMatrix quantum_fg_matrix(const FGQuiverSpec& s, Side side, bool normalized = true)
{
    return side == Side::left ? quantum_left(s, normalized) : quantum_right(s, normalized);
}

// The edge matrix of the quiver torus along Z (kind Z), Z' or Z''.
inline QuantumMatrix quantum_edge(const FGQuiverSpec& s, EdgeKind kind)
{
    return weyl_order(m_edge(s.n, edge_assignment(s, kind), s.vertices.size()), s.torus);
}

} // namespace fgq
