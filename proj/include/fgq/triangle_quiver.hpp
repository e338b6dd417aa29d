#pragma once

#include "qtorus.hpp"

#include <algorithm>
#include <compare>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fgq {

enum class Side { left, right };

inline const char* to_string(Side s) { return s == Side::left ? "left" : "right"; }

struct ThetaVertex {
    int a = 0, b = 0, c = 0;

    int level() const { return a + b + c; }
    bool is_corner() const { return (a == 0) + (b == 0) + (c == 0) >= 2; }
    bool is_interior() const { return a > 0 && b > 0 && c > 0; }
    std::string key() const { return std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c); }

    friend auto operator<=>(const ThetaVertex&, const ThetaVertex&) = default;
};

// all (a,b,c) >= 0 with a+b+c = level, lexicographic; level is n or n-1
inline std::vector<ThetaVertex> theta_vertices(int n, int level)
{
    if (n < 2)
        throw std::invalid_argument("discrete triangle needs n >= 2");
    if (level != n && level != n - 1)
        throw std::invalid_argument("level must be n or n-1");
    std::vector<ThetaVertex> out;
    for (int a = 0; a <= level; ++a)
        for (int b = 0; a + b <= level; ++b)
            out.push_back({a, b, level - a - b});
    return out;
}

inline std::vector<ThetaVertex> theta_interior(int n)
{
    std::vector<ThetaVertex> out;
    for (const auto& v : theta_vertices(n, n))
        if (v.is_interior())
            out.push_back(v);
    return out;
}

// Interior vertices in the order they appear in the left matrix product; X_1, X_2, ... follow this order.
inline std::vector<ThetaVertex> interior_numbering(int n)
{
    std::vector<ThetaVertex> out;
    for (int k = n - 1; k >= 2; --k)
        for (int l = 2; l <= k; ++l)
            out.push_back({l - 1, n - k, k - l + 1});
    return out;
}

struct FGQuiverSpec {
    int n = 0;
    std::vector<ThetaVertex> vertices; // Theta_n minus corners, lexicographic
    std::vector<std::string> names;    // alias per vertex: Zj, Z'j, Z''j or Xi
    IntMatrix poisson;
    TorusPtr torus;

    std::size_t index(const ThetaVertex& v) const
    {
        auto it = std::lower_bound(vertices.begin(), vertices.end(), v);
        if (it == vertices.end() || *it != v)
            throw std::out_of_range("vertex " + v.key() + " is not a quiver vertex");
        return std::size_t(it - vertices.begin());
    }
    const std::string& name(const ThetaVertex& v) const { return names[index(v)]; }
    long P(const ThetaVertex& u, const ThetaVertex& v) const { return poisson[index(u)][index(v)]; }

    ThetaVertex Z(int j) const { return {j, 0, n - j}; }
    ThetaVertex Zp(int j) const { return {j, n - j, 0}; }
    ThetaVertex Zpp(int j) const { return {0, j, n - j}; }

    // accepts an alias name or an "a,b,c" triple
    ThetaVertex lookup(const std::string& key) const
    {
        for (std::size_t i = 0; i < names.size(); ++i)
            if (names[i] == key || vertices[i].key() == key)
                return vertices[i];
        throw std::out_of_range("no quiver vertex named " + key);
    }
};

inline std::string fg_alias(const ThetaVertex& v, const std::vector<ThetaVertex>& numbering)
{
    if (v.b == 0)
        return "Z" + std::to_string(v.a);
    if (v.c == 0)
        return "Z'" + std::to_string(v.a);
    if (v.a == 0)
        return "Z''" + std::to_string(v.b);
    auto it = std::find(numbering.begin(), numbering.end(), v);
    return "X" + std::to_string(1 + (it - numbering.begin()));
}

inline FGQuiverSpec fg_poisson(int n)
{
    FGQuiverSpec s;
    s.n = n;
    for (const auto& v : theta_vertices(n, n))
        if (!v.is_corner())
            s.vertices.push_back(v);
    const auto numbering = interior_numbering(n);
    for (const auto& v : s.vertices)
        s.names.push_back(fg_alias(v, numbering));
    const std::size_t N = s.vertices.size();
    s.poisson.assign(N, std::vector<long>(N, 0));

    auto arrow = [&](const ThetaVertex& u, const ThetaVertex& v) {
        if (u.is_corner() || v.is_corner())
            return;
        const auto i = s.index(u), j = s.index(v);
        ++s.poisson[i][j];
        --s.poisson[j][i];
    };
    auto cycle = [&](const ThetaVertex& x, const ThetaVertex& y, const ThetaVertex& z) {
        arrow(x, y);
        arrow(y, z);
        arrow(z, x);
    };
    // upward small triangles
    for (const auto& v : theta_vertices(n, n - 1))
        cycle({v.a + 1, v.b, v.c}, {v.a, v.b, v.c + 1}, {v.a, v.b + 1, v.c});
    // downward small triangles
    for (int a = 0; a <= n - 2; ++a)
        for (int b = 0; a + b <= n - 2; ++b) {
            const int c = n - 2 - a - b;
            cycle({a + 1, b, c + 1}, {a + 1, b + 1, c}, {a, b + 1, c + 1});
        }
    s.torus = make_torus(n, s.names, s.poisson);
    return s;
}

// T_L drops the Z'' generators, T_R drops the Z' generators
inline std::vector<std::string> subalgebra_generators(const FGQuiverSpec& s, Side side)
{
    std::vector<std::string> out;
    for (std::size_t i = 0; i < s.vertices.size(); ++i) {
        const auto& v = s.vertices[i];
        if (side == Side::left && v.a == 0)
            continue;
        if (side == Side::right && v.c == 0)
            continue;
        out.push_back(s.names[i]);
    }
    return out;
}

} // namespace fgq
