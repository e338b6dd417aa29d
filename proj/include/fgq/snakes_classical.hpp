#pragma once

#include "flags.hpp"
#include "ncmatrix.hpp"

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fgq {

enum class Chirality { left, right };

inline const char* to_string(Chirality c) { return c == Chirality::left ? "left" : "right"; }

// Snake in Theta_{n-1}: n vertices sigma_1..sigma_n.  The head is sigma_n for left snakes and
// sigma_1 for right snakes.  Heads other than (n-1,0,0) are handled by cyclically relabeling the
// triangle so that the head becomes (n-1,0,0): L_(a,b,c)(E,F,G) = L_(c,a,b)(G,E,F).
struct Snake {
    std::vector<ThetaVertex> vertices;
    Chirality chirality = Chirality::left;
    ThetaVertex head;

    int n() const { return int(vertices.size()); }
    const ThetaVertex& operator[](int k) const { return vertices.at(k - 1); } // 1-based
    friend bool operator==(const Snake&, const Snake&) = default;
};

struct MalformedSnake : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

namespace detail {

// rotation taking the head to (n-1,0,0)
inline ThetaVertex to_canonical(const ThetaVertex& v, const ThetaVertex& head)
{
    if (head.a > 0)
        return v;
    if (head.c > 0)
        return {v.c, v.a, v.b};
    return {v.b, v.c, v.a};
}

inline ThetaVertex from_canonical(const ThetaVertex& v, const ThetaVertex& head)
{
    if (head.a > 0)
        return v;
    if (head.c > 0)
        return {v.b, v.c, v.a};
    return {v.c, v.a, v.b};
}

struct FlagFrame {
    const Flag& E;
    const Flag& F;
    const Flag& G;
};

inline FlagFrame canonical_flags(const Flag& E, const Flag& F, const Flag& G, const ThetaVertex& head)
{
    if (head.a > 0)
        return {E, F, G};
    if (head.c > 0)
        return {G, E, F};
    return {F, G, E};
}

inline ThetaVertex left_child(const ThetaVertex& v, int alpha) { return {alpha, v.b + 1, v.c}; }
inline ThetaVertex right_child(const ThetaVertex& v, int alpha) { return {alpha, v.b, v.c + 1}; }

} // namespace detail

inline bool is_valid(const Snake& s)
{
    const int n = s.n();
    if (n < 2 || s.head.level() != n - 1 || !s.head.is_corner())
        return false;
    std::vector<ThetaVertex> c;
    for (const auto& v : s.vertices) {
        if (v.a < 0 || v.b < 0 || v.c < 0 || v.level() != n - 1)
            return false;
        c.push_back(detail::to_canonical(v, s.head));
    }
    for (int k = 1; k <= n; ++k) {
        const auto& v = c[k - 1];
        if (v.a != (s.chirality == Chirality::left ? k - 1 : n - k))
            return false;
    }
    for (int k = 1; k < n; ++k) {
        // the vertex nearer the head dominates componentwise in beta and gamma
        const auto& near = s.chirality == Chirality::left ? c[k] : c[k - 1];
        const auto& far = s.chirality == Chirality::left ? c[k - 1] : c[k];
        if (far.b < near.b || far.c < near.c)
            return false;
    }
    return true;
}

inline void check_snake(const Snake& s)
{
    if (!is_valid(s))
        throw MalformedSnake("malformed snake");
}

inline ThetaVertex default_head(int n) { return {n - 1, 0, 0}; }

// all snakes of the given chirality and head; each step picks the left or right child
inline std::vector<Snake> enumerate_snakes(int n, Chirality ch, std::optional<ThetaVertex> head = std::nullopt)
{
    if (n < 2)
        throw std::invalid_argument("snakes need n >= 2");
    const ThetaVertex h = head.value_or(default_head(n));
    std::vector<Snake> out;
    std::vector<ThetaVertex> c(n);
    std::function<void(int)> grow = [&](int step) {
        // step counts vertices placed, starting from the head
        if (step == n) {
            Snake s;
            s.chirality = ch;
            s.head = h;
            for (const auto& v : c)
                s.vertices.push_back(detail::from_canonical(v, h));
            out.push_back(std::move(s));
            return;
        }
        const int k = ch == Chirality::left ? n - step : step + 1;       // 1-based position being placed
        const int prev = ch == Chirality::left ? k + 1 : k - 1;          // its parent position
        const int alpha = ch == Chirality::left ? k - 1 : n - k;
        for (const auto& child : {detail::left_child(c[prev - 1], alpha), detail::right_child(c[prev - 1], alpha)}) {
            c[k - 1] = child;
            grow(step + 1);
        }
    };
    const int head_pos = ch == Chirality::left ? n : 1;
    c[head_pos - 1] = default_head(n);
    grow(1);
    return out;
}

struct SnakeMove {
    enum class Kind { diamond, tail, not_adjacent };
    Kind kind = Kind::not_adjacent;
    int position = 0;      // 1-based snake position that changes
    int shear_index = 0;   // k of S^left_k / S^right_k
    ThetaVertex vertex;    // interior vertex of Theta_n for diamond moves, in the snakes' own coordinates
};

inline const char* to_string(SnakeMove::Kind k)
{
    switch (k) {
    case SnakeMove::Kind::diamond: return "diamond";
    case SnakeMove::Kind::tail: return "tail";
    default: return "not-adjacent";
    }
}

// Adjacency of an ordered pair: the changed vertex moves from the right child to the left child of its
// parent (left snakes) or from the left child to the right child (right snakes).
inline SnakeMove classify_adjacent(const Snake& s, const Snake& t)
{
    check_snake(s);
    check_snake(t);
    if (s.n() != t.n() || s.chirality != t.chirality || s.head != t.head)
        throw MalformedSnake("snakes of different shape");
    const int n = s.n();
    std::vector<int> diff;
    for (int k = 1; k <= n; ++k)
        if (s[k] != t[k])
            diff.push_back(k);
    SnakeMove mv;
    if (diff.size() != 1)
        return mv;
    const int k = diff[0];
    auto cs = [&](int i) { return detail::to_canonical(s[i], s.head); };
    auto ct = [&](int i) { return detail::to_canonical(t[i], t.head); };
    if (s.chirality == Chirality::left) {
        if (k == n)
            return mv;
        const auto parent = cs(k + 1);
        if (cs(k) != detail::right_child(parent, k - 1) || ct(k) != detail::left_child(parent, k - 1))
            return mv;
        mv.kind = k == 1 ? SnakeMove::Kind::tail : SnakeMove::Kind::diamond;
        mv.position = k;
        mv.shear_index = k;
        if (k > 1)
            mv.vertex = detail::from_canonical({k - 1, parent.b + 1, parent.c + 1}, s.head);
    } else {
        if (k == 1)
            return mv;
        const auto parent = cs(k - 1);
        if (cs(k) != detail::left_child(parent, n - k) || ct(k) != detail::right_child(parent, n - k))
            return mv;
        mv.kind = k == n ? SnakeMove::Kind::tail : SnakeMove::Kind::diamond;
        mv.position = k;
        mv.shear_index = n - k + 1;
        if (k < n)
            mv.vertex = detail::from_canonical({n - k, parent.b + 1, parent.c + 1}, s.head);
    }
    return mv;
}

struct SnakeSequence {
    std::vector<Snake> snakes;
    std::vector<SnakeMove> moves; // moves[i] takes snakes[i] to snakes[i+1]
};

// Left: left snakes with head (n-1,0,0) from (k-1,0,n-k) to (k-1,n-k,0).
// Right: right snakes with head (0,0,n-1) from (k-1,0,n-k) to (0,k-1,n-k).
// The sweep is grouped so that the diamond vertices follow the left/right matrix product index formulas.
inline SnakeSequence preferred_sequence(int n, Side side)
{
    if (n < 2)
        throw std::invalid_argument("snakes need n >= 2");
    SnakeSequence seq;
    Snake s;
    s.chirality = side == Side::left ? Chirality::left : Chirality::right;
    s.head = side == Side::left ? ThetaVertex{n - 1, 0, 0} : ThetaVertex{0, 0, n - 1};
    for (int k = 1; k <= n; ++k)
        s.vertices.push_back({k - 1, 0, n - k});
    seq.snakes.push_back(s);
    for (int k = n - 1; k >= 1; --k)
        for (int l = 1; l <= k; ++l) {
            if (side == Side::left) {
                auto& v = s.vertices[l - 1];
                v = {v.a, v.b + 1, v.c - 1};
            } else {
                auto& v = s.vertices[n - l];
                v = {v.a - 1, v.b + 1, v.c};
            }
            seq.moves.push_back(classify_adjacent(seq.snakes.back(), s));
            if (seq.moves.back().kind == SnakeMove::Kind::not_adjacent)
                throw std::logic_error("preferred sweep produced a non-adjacent pair");
            seq.snakes.push_back(s);
        }
    return seq;
}

struct ProjectiveBasis {
    std::vector<RationalVector> covectors; // u_1..u_n
    std::vector<ThetaVertex> lines;        // sigma_k, u_k in L_{sigma_k}

    RationalMatrix matrix() const { return rows_to_matrix(covectors); }
};

namespace detail {

// a, b with u + a l + b r = 0
inline std::pair<Rational, Rational> coplanar_split(const RationalVector& u, const RationalVector& l,
                                                    const RationalVector& r)
{
    const std::size_t n = u.size();
    RationalMatrix A(n, 2, Rational(0));
    RationalVector rhs(n);
    for (std::size_t i = 0; i < n; ++i) {
        A(i, 0) = l[i];
        A(i, 1) = r[i];
        rhs[i] = -u[i];
    }
    const auto x = solve_unique(A, rhs);
    if (!x)
        throw GenericityError("snake lines are not coplanar with distinct directions");
    return {(*x)[0], (*x)[1]};
}

} // namespace detail

// Projective basis attached to (E,F,G) and a snake; normalization is u_n (left) or u_1 (right).
inline ProjectiveBasis projective_basis(const Flag& E, const Flag& F, const Flag& G, const Snake& s,
                                        const RationalVector& normalization)
{
    check_snake(s);
    const int n = s.n();
    if (int(E.n()) != n)
        throw DimensionError("snake length differs from the flag dimension");
    const auto fr = detail::canonical_flags(E, F, G, s.head);
    auto line = [&](const ThetaVertex& canon) { return vertex_line(fr.E, fr.F, fr.G, canon); };
    auto canon = [&](int k) { return detail::to_canonical(s[k], s.head); };

    ProjectiveBasis U;
    U.covectors.assign(n, RationalVector());
    U.lines = s.vertices;
    const int head_pos = s.chirality == Chirality::left ? n : 1;
    if (is_zero_vector(normalization) || !proportionality(normalization, line(canon(head_pos))))
        throw std::invalid_argument("normalization covector is not a nonzero point of the head line");
    U.covectors[head_pos - 1] = normalization;

    if (s.chirality == Chirality::left) {
        for (int k = n - 1; k >= 1; --k) {
            const auto parent = canon(k + 1);
            const auto lv = detail::left_child(parent, k - 1), rv = detail::right_child(parent, k - 1);
            const auto l = line(lv), r = line(rv);
            const auto [x, y] = detail::coplanar_split(U.covectors[k], l, r);
            U.covectors[k - 1] = canon(k) == lv ? scaled(l, x) : scaled(r, -y);
        }
    } else {
        for (int k = 2; k <= n; ++k) {
            const auto parent = canon(k - 1);
            const auto lv = detail::left_child(parent, n - k), rv = detail::right_child(parent, n - k);
            const auto l = line(lv), r = line(rv);
            const auto [x, y] = detail::coplanar_split(U.covectors[k - 2], l, r);
            U.covectors[k - 1] = canon(k) == lv ? scaled(l, -x) : scaled(r, y);
        }
    }
    if (rank(U.matrix()) != std::size_t(n))
        throw GenericityError("projective basis covectors are dependent");
    return U;
}

// the head line of a snake, as a covector (the canonical normalization choice)
inline RationalVector head_line(const Flag& E, const Flag& F, const Flag& G, const Snake& s)
{
    const auto fr = detail::canonical_flags(E, F, G, s.head);
    return vertex_line(fr.E, fr.F, fr.G, default_head(s.n()));
}

// B with [[u]]_U B = [[u]]_U'; basis covectors are the rows of U, so B = U U'^{-1}
inline RationalMatrix change_of_basis(const ProjectiveBasis& U, const ProjectiveBasis& Up)
{
    return U.matrix() * inverse(Up.matrix());
}

// Closed-form change of basis for a diamond/tail move, fractional normalizer cleared:
// left  X^{(k-1)/n} S^left_k(X),  right  X^{-(k-1)/n} S^right_k(X),  X = tau at the diamond vertex.
inline RationalMatrix move_matrix(const Flag& E, const Flag& F, const Flag& G, Chirality ch, const SnakeMove& mv)
{
    const int n = int(E.n());
    const Rational x = mv.kind == SnakeMove::Kind::diamond ? triangle_invariant(E, F, G, mv.vertex) : Rational(1);
    if (mv.kind == SnakeMove::Kind::not_adjacent)
        throw std::invalid_argument("no closed form for a non-adjacent pair");
    return ch == Chirality::left ? shear_left_scaled(n, mv.shear_index, x) : shear_right_scaled(n, mv.shear_index, x);
}

// product of per-move closed forms along a sequence
inline RationalMatrix sequence_matrix(const Flag& E, const Flag& F, const Flag& G, const SnakeSequence& seq)
{
    RationalMatrix B = rational_identity(E.n());
    for (const auto& mv : seq.moves)
        B = B * move_matrix(E, F, G, seq.snakes.front().chirality, mv);
    return B;
}

// all adjacency-respecting sequences from one snake to another (the moves form a DAG)
inline std::vector<SnakeSequence> all_sequences(const Snake& from, const Snake& to)
{
    const auto pool = enumerate_snakes(from.n(), from.chirality, from.head);
    std::vector<SnakeSequence> out;
    SnakeSequence cur;
    cur.snakes.push_back(from);
    std::function<void()> walk = [&]() {
        if (cur.snakes.back() == to) {
            out.push_back(cur);
            return;
        }
        for (const auto& t : pool) {
            const auto mv = classify_adjacent(cur.snakes.back(), t);
            if (mv.kind == SnakeMove::Kind::not_adjacent)
                continue;
            cur.snakes.push_back(t);
            cur.moves.push_back(mv);
            walk();
            cur.snakes.pop_back();
            cur.moves.pop_back();
        }
    };
    walk();
    return out;
}

// ---- shears -------------------------------------------------------------------

// the point p' of L2 with p + p' + p'' = 0 for some p'' in L3
inline RationalVector shear(const RationalVector& p, const RationalVector& l2, const RationalVector& l3)
{
    return scaled(l2, detail::coplanar_split(p, l2, l3).first);
}

enum class Direction { ccw, cw };

// Composite shear around the downward triangle at interior vertex (a,b,c), starting on
// L(a-1,b,c); returns s with p_3 = s p_0.
inline Rational shear_cycle_triangle(const Flag& E, const Flag& F, const Flag& G, const ThetaVertex& v, Direction dir,
                                     const RationalVector& p0)
{
    if (!v.is_interior() || v.level() != int(E.n()))
        throw std::invalid_argument("shear cycle needs an interior vertex");
    const int a = v.a, b = v.b, c = v.c;
    auto L = [&](int x, int y, int z) { return vertex_line(E, F, G, {x, y, z}); };
    const auto m1 = L(a - 1, b, c), m2 = L(a, b - 1, c), m3 = L(a, b, c - 1);
    const auto o1 = L(a + 1, b - 1, c - 1), o2 = L(a - 1, b + 1, c - 1), o3 = L(a - 1, b - 1, c + 1);
    if (!proportionality(p0, m1) || is_zero_vector(p0))
        throw std::invalid_argument("starting point is not on the starting line");
    RationalVector p = p0;
    if (dir == Direction::ccw) {
        p = shear(p, m3, o2);
        p = shear(p, m2, o1);
        p = shear(p, m1, o3);
    } else {
        p = shear(p, m2, o3);
        p = shear(p, m3, o1);
        p = shear(p, m1, o2);
    }
    return *proportionality(p, p0);
}

// Composite shear around the j-th diamond across the edge EG, starting on L(E^(j-1) + G^(n-j)).
// ccw passes first through the triangle of (E,F',G), then through that of (G,F,E).
inline Rational shear_cycle_edge(const Flag& E, const Flag& G, const Flag& F, const Flag& Fp, int j, Direction dir,
                                 const RationalVector& p0)
{
    const int n = int(E.n());
    if (j < 1 || j > n - 1)
        throw std::out_of_range("edge index outside 1..n-1");
    const auto A = vertex_line(E, G, F, {j - 1, n - j, 0});
    const auto B = vertex_line(E, G, F, {j, n - j - 1, 0});
    const auto viaFp = vertex_line(E, Fp, G, {j - 1, 1, n - j - 1});
    const auto viaF = vertex_line(E, G, F, {j - 1, n - j - 1, 1});
    if (!proportionality(p0, A) || is_zero_vector(p0))
        throw std::invalid_argument("starting point is not on the starting line");
    RationalVector p = p0;
    if (dir == Direction::ccw) {
        p = shear(p, B, viaFp);
        p = shear(p, A, viaF);
    } else {
        p = shear(p, B, viaF);
        p = shear(p, A, viaFp);
    }
    return *proportionality(p, p0);
}

// ---- proposition checks ---------------------------------------------------------

struct MoveCheck {
    bool passed = false;
    std::string detail;
};

// a diamond or tail move between two snakes: change of basis vs the closed form
inline MoveCheck verify_move(const Flag& E, const Flag& F, const Flag& G, const Snake& s, const Snake& t)
{
    const auto mv = classify_adjacent(s, t);
    if (mv.kind == SnakeMove::Kind::not_adjacent)
        return {false, "snakes are not adjacent"};
    const auto u = head_line(E, F, G, s);
    const auto B = change_of_basis(projective_basis(E, F, G, s, u), projective_basis(E, F, G, t, u));
    const auto C = move_matrix(E, F, G, s.chirality, mv);
    if (B == C)
        return {true, ""};
    return {false, std::string(to_string(s.chirality)) + " " + to_string(mv.kind) + " move at position " +
                       std::to_string(mv.position) + " disagrees with the closed form"};
}

// Edge move: left snakes sigma_k = (n-k,0,k-1) in Theta(G,F,E) and sigma'_k = (k-1,0,n-k) in Theta(E,F',G)
// with u_n = u'_n; B = prod_j Z_j^{j/n} S^edge_j(Z_j) = diag(prod_{j>=i} Z_j), Z_j = eps_j(E,G,F,F').
inline MoveCheck verify_edge_move(const Flag& E, const Flag& G, const Flag& F, const Flag& Fp)
{
    const int n = int(E.n());
    Snake s, t;
    s.head = {0, 0, n - 1};
    t.head = {n - 1, 0, 0};
    for (int k = 1; k <= n; ++k) {
        s.vertices.push_back({n - k, 0, k - 1});
        t.vertices.push_back({k - 1, 0, n - k});
    }
    const auto u = head_line(G, F, E, s);
    const auto U = projective_basis(G, F, E, s, u);
    const auto Up = projective_basis(E, Fp, G, t, u);
    const auto B = change_of_basis(U, Up);
    RationalMatrix C = rational_identity(n);
    for (int j = 1; j < n; ++j)
        C = C * shear_edge_scaled(n, j, edge_invariant(E, G, F, Fp, j));
    if (B == C)
        return {true, ""};
    return {false, "edge move change of basis disagrees with the edge shear product"};
}

// U-turn: sigma_k = (n-k,0,k-1) (left) and sigma'_k = (k-1,0,n-k) (right), both in Theta(E,F,G), u_n = u'_1.
inline MoveCheck verify_uturn(const Flag& E, const Flag& F, const Flag& G)
{
    const int n = int(E.n());
    Snake s, t;
    s.chirality = Chirality::left;
    t.chirality = Chirality::right;
    s.head = t.head = {0, 0, n - 1};
    for (int k = 1; k <= n; ++k) {
        s.vertices.push_back({n - k, 0, k - 1});
        t.vertices.push_back({k - 1, 0, n - k});
    }
    const auto u = head_line(E, F, G, s);
    const auto B = change_of_basis(projective_basis(E, F, G, s, u), projective_basis(E, F, G, t, u));
    if (B == uturn(n))
        return {true, ""};
    return {false, "U-turn change of basis is not the U-turn matrix"};
}

// ---- fractional normalizers ---------------------------------------------------

// A commutative matrix evaluated at rational values, written as (prod_i x_i^{r_i/n}) * R with R rational.
struct RootScaledMatrix {
    int n = 0;
    std::vector<Rational> values;
    ExponentVector root; // r_i
    RationalMatrix R;

    // the n-th power of the scalar prefactor
    Rational prefactor_power() const
    {
        Rational s = 1;
        for (std::size_t i = 0; i < root.size(); ++i)
            s *= pow(values[i], root[i]);
        return s;
    }
};

inline long floor_div(long a, long b) { return a >= 0 ? a / b : -((-a + b - 1) / b); }

inline RootScaledMatrix evaluate_root_scaled(const CommutativeMatrix& M, int n, const std::vector<Rational>& values)
{
    const std::size_t N = values.size();
    RootScaledMatrix out{n, values, ExponentVector(N, 0), RationalMatrix(M.rows(), M.cols(), Rational(0))};
    bool have_root = false;
    for (std::size_t i = 0; i < M.rows(); ++i)
        for (std::size_t j = 0; j < M.cols(); ++j)
            for (const auto& [e, c] : M(i, j).terms()) {
                if (e.size() != N)
                    throw DimensionError("value count differs from the variable count");
                ExponentVector r(N);
                for (std::size_t k = 0; k < N; ++k)
                    r[k] = e[k] - n * floor_div(e[k], n);
                if (!have_root) {
                    out.root = r;
                    have_root = true;
                } else if (r != out.root) {
                    throw std::invalid_argument("entries carry different fractional parts");
                }
                Rational term = c;
                for (std::size_t k = 0; k < N; ++k)
                    term *= pow(values[k], (e[k] - r[k]) / n);
                out.R(i, j) += term;
            }
    return out;
}

// B = lambda * M for some lambda with lambda^n = target, where M = s R and s^n is known:
// B = mu R with mu rational, and then lambda = mu / s, so the test is mu^n = target * s^n.
inline bool proportional_with_power(const RationalMatrix& B, const RootScaledMatrix& M, const Rational& target)
{
    std::optional<Rational> mu;
    for (std::size_t i = 0; i < B.rows(); ++i)
        for (std::size_t j = 0; j < B.cols(); ++j) {
            if (sgn(M.R(i, j)) == 0) {
                if (sgn(B(i, j)) != 0)
                    return false;
                continue;
            }
            const Rational r = B(i, j) / M.R(i, j);
            if (!mu)
                mu = r;
            else if (*mu != r)
                return false;
        }
    if (!mu || sgn(*mu) == 0)
        return false;
    return pow(*mu, M.n) == target * M.prefactor_power();
}

// tau values at the interior vertices (the m_left/m_right variables, in lexicographic order)
inline std::vector<Rational> interior_tau(const Flag& E, const Flag& F, const Flag& G)
{
    std::vector<Rational> out;
    for (const auto& v : theta_interior(int(E.n())))
        out.push_back(triangle_invariant(E, F, G, v));
    return out;
}

// normalized sweep matrix (m_left or m_right) with tau substituted, against B_{bot->top} / Det(B)^{1/n}
inline MoveCheck verify_normalized_sweep(const Flag& E, const Flag& F, const Flag& G, Side side)
{
    const int n = int(E.n());
    const auto interior = theta_interior(n);
    VertexAssignment x;
    for (std::size_t i = 0; i < interior.size(); ++i)
        x[interior[i]] = i;
    const auto M = side == Side::left ? m_left(n, x, interior.size()) : m_right(n, x, interior.size());
    const auto seq = preferred_sequence(n, side);
    const auto u = head_line(E, F, G, seq.snakes.front());
    const auto B = change_of_basis(projective_basis(E, F, G, seq.snakes.front(), u),
                                   projective_basis(E, F, G, seq.snakes.back(), u));
    // M = B / det(B)^{1/n} means B = lambda M with lambda^n = det(B)
    const auto rs = evaluate_root_scaled(M, n, interior_tau(E, F, G));
    if (proportional_with_power(B, rs, determinant(B)))
        return {true, ""};
    return {false, std::string(to_string(side)) + " sweep matrix is not the normalized change of basis"};
}

} // namespace fgq
