#pragma once

#include "linalg.hpp"
#include "ncmatrix.hpp"
#include "slnq.hpp"
#include "snakes_classical.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fgq {

struct ConstructionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// j-th snake-move torus: z_1..z_{n-1}, z'_1..z'_{n-1}, and x for diamond moves (j > 1).
struct SnakeMoveTorus {
    int n = 0;
    int j = 0;
    SnakeMove::Kind kind = SnakeMove::Kind::tail;
    Side side = Side::left;
    TorusPtr torus;

    bool has_x() const { return j > 1; }
    // x_{j-1} on the left, x_{n-j+1} on the right
    std::string x_name() const { return "x" + std::to_string(side == Side::left ? j - 1 : n - j + 1); }
};

inline std::vector<std::string> snake_move_generators(int n, int j, Side side)
{
    std::vector<std::string> g;
    for (int k = 1; k < n; ++k)
        g.push_back("z" + std::to_string(k));
    for (int k = 1; k < n; ++k)
        g.push_back("z'" + std::to_string(k));
    if (j > 1)
        g.push_back("x" + std::to_string(side == Side::left ? j - 1 : n - j + 1));
    return g;
}

// The commutative snake-move matrix (prod_k S^edge_k(z_k)) S_j(x) (prod_k S^edge_k(z'_k)) over nvars variables,
// factor generators starting at offset (order z, z', x as in snake_move_generators).
inline CommutativeMatrix snake_move_commutative(int n, int j, Side side, std::size_t nvars, std::size_t offset)
{
    std::vector<std::size_t> z, zp;
    for (int k = 0; k < n - 1; ++k) {
        z.push_back(offset + k);
        zp.push_back(offset + (n - 1) + k);
    }
    const std::optional<std::size_t> x = j > 1 ? std::optional<std::size_t>(offset + 2 * (n - 1)) : std::nullopt;
    const auto S = side == Side::left ? shear_left(n, j, x, nvars) : shear_right(n, j, x, nvars);
    return m_edge(n, z, nvars) * S * m_edge(n, zp, nvars);
}

inline QuantumMatrix snake_move_matrix(const SnakeMoveTorus& t)
{
    return weyl_order(snake_move_commutative(t.n, t.j, t.side, t.torus->size(), 0), t.torus);
}

// ---- embedding combinatorics --------------------------------------------------

// vertebra v of a snake: the Theta_n vertex shared by the upward triangles of sigma_v and sigma_{v+1}
inline std::vector<ThetaVertex> vertebrae(const Snake& s)
{
    auto up = [](const ThetaVertex& v) {
        return std::set<ThetaVertex>{{v.a + 1, v.b, v.c}, {v.a, v.b + 1, v.c}, {v.a, v.b, v.c + 1}};
    };
    std::vector<ThetaVertex> out;
    for (int k = 1; k < s.n(); ++k) {
        const auto A = up(s[k]), B = up(s[k + 1]);
        std::vector<ThetaVertex> common;
        for (const auto& v : A)
            if (B.count(v))
                common.push_back(v);
        if (common.size() != 1)
            throw MalformedSnake("consecutive snake vertices are not neighbors");
        out.push_back(common[0]);
    }
    return out;
}

struct FactorSlot {
    std::size_t factor; // 0-based move index
    std::string generator;
    friend auto operator<=>(const FactorSlot&, const FactorSlot&) = default;
};

// Preimage classes of the retraction: for move i, z_k goes to vertebra k of the snake before the move,
// z'_k to vertebra k of the snake after it, and x to the diamond vertex.
inline std::map<ThetaVertex, std::vector<FactorSlot>> embedding_classes(const SnakeSequence& seq)
{
    std::map<ThetaVertex, std::vector<FactorSlot>> cls;
    for (std::size_t i = 0; i < seq.moves.size(); ++i) {
        const auto before = vertebrae(seq.snakes[i]), after = vertebrae(seq.snakes[i + 1]);
        for (std::size_t k = 0; k < before.size(); ++k) {
            cls[before[k]].push_back({i, "z" + std::to_string(k + 1)});
            cls[after[k]].push_back({i, "z'" + std::to_string(k + 1)});
        }
        const auto& mv = seq.moves[i];
        if (mv.kind == SnakeMove::Kind::diamond) {
            const int n = seq.snakes[i].n();
            const int j = mv.shear_index;
            cls[mv.vertex].push_back({i, "x" + std::to_string(seq.snakes[i].chirality == Chirality::left ? j - 1 : n - j + 1)});
        }
    }
    return cls;
}

// ---- Poisson solve -------------------------------------------------------------

struct SnakeMoveSystem {
    int n = 0;
    Side side = Side::left;
    std::map<int, SnakeMoveTorus> tori; // by j
    std::size_t unknowns = 0;
    std::size_t equations = 0;
    std::size_t free_parameters = 0;
};

namespace detail {

inline int generator_level(const std::string& g)
{
    std::size_t p = 0;
    while (p < g.size() && !std::isdigit(static_cast<unsigned char>(g[p])))
        ++p;
    return std::stoi(g.substr(p));
}

// nearest-neighbor support: z/z' pairs with |k-l| <= 1; x only with indices j-1, j
inline bool local_pair(int j, const std::string& g, const std::string& h)
{
    const bool gx = g[0] == 'x', hx = h[0] == 'x';
    if (gx || hx) {
        const int k = generator_level(gx ? h : g);
        return k == j - 1 || k == j;
    }
    return std::abs(generator_level(g) - generator_level(h)) <= 1;
}

} // namespace detail

// Solve for the Poisson matrices of all snake-move tori of one side jointly:
//  (C1) each M_j is an SL_n^q point (linear conditions on pairings of its monomial entries);
//  (C2) the embedding reproduces the Fock-Goncharov pairings on T_L (or T_R);
//  (C3) nearest-neighbor support.
// Free parameters are set to zero; the result must be integral.
inline SnakeMoveSystem solve_snake_move_system(int n, Side side)
{
    if (n < 2)
        throw std::invalid_argument("snake-move tori need n >= 2");
    const auto seq = preferred_sequence(n, side);
    const auto fg = fg_poisson(n);
    const auto classes = embedding_classes(seq);

    std::set<int> js;
    for (const auto& mv : seq.moves)
        js.insert(mv.shear_index);

    // unknown columns (j, a, b) with a < b in generator order
    std::map<std::tuple<int, std::size_t, std::size_t>, std::size_t> col;
    std::map<int, std::vector<std::string>> gens;
    for (int j : js) {
        gens[j] = snake_move_generators(n, j, side);
        const auto& g = gens[j];
        for (std::size_t a = 0; a < g.size(); ++a)
            for (std::size_t b = a + 1; b < g.size(); ++b)
                if (detail::local_pair(j, g[a], g[b]))
                    col.emplace(std::make_tuple(j, a, b), col.size());
    }
    const std::size_t U = col.size();

    std::vector<RationalVector> rows;
    RationalVector rhs;
    auto gen_index = [&](int j, const std::string& name) {
        const auto& g = gens[j];
        return std::size_t(std::find(g.begin(), g.end(), name) - g.begin());
    };
    // coefficient row of <e1, e2> = sum_{a,b} P_j(a,b) e1_a e2_b
    auto pairing_row = [&](int j, const ExponentVector& e1, const ExponentVector& e2) {
        RationalVector r(U, Rational(0));
        const std::size_t m = gens[j].size();
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t b = a + 1; b < m; ++b) {
                auto it = col.find({j, a, b});
                if (it == col.end())
                    continue;
                r[it->second] += e1[a] * e2[b] - e1[b] * e2[a];
            }
        return r;
    };

    // (C2)
    std::vector<ThetaVertex> sub;
    for (const auto& v : fg.vertices)
        if (side == Side::left ? v.a != 0 : v.c != 0)
            sub.push_back(v);
    for (std::size_t p = 0; p < sub.size(); ++p)
        for (std::size_t q = p + 1; q < sub.size(); ++q) {
            RationalVector r(U, Rational(0));
            const auto cp = classes.find(sub[p]), cq = classes.find(sub[q]);
            if (cp != classes.end() && cq != classes.end())
                for (const auto& s1 : cp->second)
                    for (const auto& s2 : cq->second) {
                        if (s1.factor != s2.factor)
                            continue;
                        const int j = seq.moves[s1.factor].shear_index;
                        const auto a = gen_index(j, s1.generator), b = gen_index(j, s2.generator);
                        if (a == b)
                            continue;
                        auto it = col.find({j, std::min(a, b), std::max(a, b)});
                        if (it != col.end())
                            r[it->second] += a < b ? 1 : -1;
                    }
            rows.push_back(std::move(r));
            rhs.push_back(fg.P(sub[p], sub[q]));
        }

    // (C1)
    const long n2 = long(n) * n;
    for (int j : js) {
        const std::size_t m = gens[j].size();
        const auto M = snake_move_commutative(n, j, side, m, 0);
        auto mono = [&](std::size_t r, std::size_t c) {
            if (M(r, c).terms().size() != 1)
                throw std::logic_error("snake-move entry is not a monomial");
            return M(r, c).terms().begin()->first;
        };
        std::size_t orow = 0, ocol = 0;
        for (std::size_t r = 0; r < std::size_t(n); ++r)
            for (std::size_t c = 0; c < std::size_t(n); ++c)
                if (r != c && !M(r, c).is_zero()) {
                    orow = r;
                    ocol = c;
                }
        const auto off = mono(orow, ocol);
        for (std::size_t a = 0; a < std::size_t(n); ++a)
            for (std::size_t b = a + 1; b < std::size_t(n); ++b) {
                rows.push_back(pairing_row(j, mono(a, a), mono(b, b)));
                rhs.push_back(0);
            }
        // row partner: the off entry sits right of (upper) or left of (lower) the diagonal entry of its row
        if (orow < ocol) {
            rows.push_back(pairing_row(j, off, mono(orow, orow))); // ba = q ab
            rhs.push_back(n2);
            rows.push_back(pairing_row(j, mono(ocol, ocol), off)); // db = q bd
            rhs.push_back(n2);
        } else {
            rows.push_back(pairing_row(j, off, mono(ocol, ocol))); // ca = q ac
            rhs.push_back(n2);
            rows.push_back(pairing_row(j, mono(orow, orow), off)); // dc = q cd
            rhs.push_back(n2);
        }
        for (std::size_t a = 0; a < std::size_t(n); ++a)
            if (a != orow && a != ocol) {
                rows.push_back(pairing_row(j, off, mono(a, a)));
                rhs.push_back(0);
            }
    }

    RationalMatrix W(rows.size(), U + 1, Rational(0));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t c = 0; c < U; ++c)
            W(i, c) = rows[i][c];
        W(i, U) = rhs[i];
    }
    const auto piv = rref(W);
    if (!piv.empty() && piv.back() == U)
        throw ConstructionError("snake-move Poisson system is infeasible");
    RationalVector sol(U, Rational(0));
    for (std::size_t r = 0; r < piv.size(); ++r)
        sol[piv[r]] = W(r, U);

    SnakeMoveSystem out;
    out.n = n;
    out.side = side;
    out.unknowns = U;
    out.equations = rows.size();
    out.free_parameters = U - piv.size();
    for (int j : js) {
        const auto& g = gens[j];
        IntMatrix P(g.size(), std::vector<long>(g.size(), 0));
        for (std::size_t a = 0; a < g.size(); ++a)
            for (std::size_t b = a + 1; b < g.size(); ++b) {
                auto it = col.find({j, a, b});
                if (it == col.end())
                    continue;
                const Rational& v = sol[it->second];
                if (!is_integer(v))
                    throw ConstructionError("non-integral snake-move Poisson entry");
                P[a][b] = v.get_num().get_si();
                P[b][a] = -P[a][b];
            }
        SnakeMoveTorus t;
        t.n = n;
        t.j = j;
        t.kind = j == 1 ? SnakeMove::Kind::tail : SnakeMove::Kind::diamond;
        t.side = side;
        t.torus = make_torus(n, g, std::move(P));
        out.tori.emplace(j, std::move(t));
    }
    return out;
}

inline SnakeMoveTorus solve_snake_move_poisson(int n, int j, Side side)
{
    if (j < 1 || j > n - 1)
        throw std::out_of_range("snake-move index outside 1..n-1");
    return solve_snake_move_system(n, side).tori.at(j);
}

// ---- embedding ------------------------------------------------------------------

// the Fock-Goncharov subtorus T_L (left) or T_R (right)
inline TorusPtr fg_subtorus(const FGQuiverSpec& s, Side side)
{
    const auto names = subalgebra_generators(s, side);
    IntMatrix P(names.size(), std::vector<long>(names.size()));
    for (std::size_t a = 0; a < names.size(); ++a)
        for (std::size_t b = 0; b < names.size(); ++b)
            P[a][b] = s.torus->P(s.torus->index_of(names[a]), s.torus->index_of(names[b]));
    return make_torus(s.n, names, std::move(P));
}

// re-express an element of one torus in another whose generator set contains every generator it uses
inline TorusElement restrict_to(const TorusElement& u, const TorusPtr& target)
{
    const auto& src = *u.torus();
    std::vector<std::optional<std::size_t>> where(src.size());
    for (std::size_t i = 0; i < src.size(); ++i)
        where[i] = target->find(src.names()[i]);
    TorusElement r(target);
    for (const auto& [e, c] : u.terms()) {
        ExponentVector f(target->size(), 0);
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (!e[i])
                continue;
            if (!where[i])
                throw PresentationError("generator " + src.names()[i] + " is not in the target torus");
            f[*where[i]] = e[i];
        }
        // Weyl monomials keep their meaning when P restricts
        r.add_term(f, c.shifted(target->weyl_shift(f) - src.weyl_shift(e)));
    }
    return r;
}

struct EmbeddingSpec {
    int n = 0;
    Side side = Side::left;
    FGQuiverSpec fg;
    SnakeSequence sequence;
    std::vector<SnakeMoveTorus> factor_tori; // one per move
    TensorProduct tensor;
    TorusPtr subtorus;                       // T_L or T_R
    std::map<ThetaVertex, std::vector<FactorSlot>> classes;
    std::optional<GeneratorMap> map;

    std::size_t slot_index(const FactorSlot& s) const
    {
        return tensor.offsets.at(s.factor) + factor_tori.at(s.factor).torus->index_of(s.generator);
    }

    // every tensor generator lies in exactly one preimage class
    bool retraction_ok() const
    {
        std::vector<int> hits(tensor.torus->size(), 0);
        for (const auto& [v, slots] : classes)
            for (const auto& s : slots)
                ++hits[slot_index(s)];
        for (int h : hits)
            if (h != 1)
                return false;
        return true;
    }
};

inline EmbeddingSpec build_embedding(int n, Side side)
{
    EmbeddingSpec e;
    e.n = n;
    e.side = side;
    e.fg = fg_poisson(n);
    e.sequence = preferred_sequence(n, side);
    const auto sys = solve_snake_move_system(n, side);
    std::vector<TorusPtr> ts;
    for (const auto& mv : e.sequence.moves) {
        e.factor_tori.push_back(sys.tori.at(mv.shear_index));
        ts.push_back(e.factor_tori.back().torus);
    }
    e.tensor = tensor(ts);
    e.subtorus = fg_subtorus(e.fg, side);
    e.classes = embedding_classes(e.sequence);

    const long nn = n;
    std::vector<ExponentVector> images;
    for (const auto& name : e.subtorus->names()) {
        ExponentVector v(e.tensor.torus->size(), 0);
        auto it = e.classes.find(e.fg.lookup(name));
        if (it != e.classes.end())
            for (const auto& s : it->second)
                v[e.slot_index(s)] += nn;
        images.push_back(std::move(v));
    }
    for (const auto& [v, slots] : e.classes)
        if (std::find(e.subtorus->names().begin(), e.subtorus->names().end(), e.fg.name(v)) == e.subtorus->names().end())
            throw ConstructionError("embedding class at a vertex outside the subtorus: " + v.key());
    e.map.emplace(e.subtorus, e.tensor.torus, std::move(images));
    return e;
}

// human-readable image of a subtorus generator, e.g. "1 (x) z'2 (x) z2 x2 z'2 (x) ..."
inline std::string embedding_image_string(const EmbeddingSpec& e, const std::string& name)
{
    // within a factor: z, then x, then z', the order of the skin the snake sweeps across
    auto rank = [](const std::string& g) { return g[0] == 'x' ? 1 : g.find('\'') != std::string::npos ? 2 : 0; };
    std::vector<std::vector<std::string>> parts(e.factor_tori.size());
    auto it = e.classes.find(e.fg.lookup(name));
    if (it != e.classes.end())
        for (const auto& s : it->second)
            parts[s.factor].push_back(s.generator);
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        auto& p = parts[i];
        std::stable_sort(p.begin(), p.end(), [&](const auto& a, const auto& b) { return rank(a) < rank(b); });
        std::string word;
        for (const auto& g : p)
            word += (word.empty() ? "" : " ") + g;
        out += (i ? " (x) " : "") + (word.empty() ? std::string("1") : word);
    }
    return out;
}

// ---- factorization ---------------------------------------------------------------

struct FactorizationReport {
    std::vector<HomFailure> hom_failures;
    bool retraction = false;
    std::vector<std::size_t> non_slnq_factors; // move indices whose M_j fails check_slnq
    bool equal = false;
    int mismatch_row = -1, mismatch_col = -1;
    std::optional<TorusElement> residual;
    QuantumMatrix lhs, rhs; // image of the FG matrix, ordered product of snake-move matrices

    bool passed() const { return hom_failures.empty() && retraction && non_slnq_factors.empty() && equal; }
};

inline QuantumMatrix apply_entrywise(const GeneratorMap& f, const QuantumMatrix& M)
{
    return M.map([&](const TorusElement& u) { return f(u); });
}

inline QuantumMatrix restrict_entrywise(const QuantumMatrix& M, const TorusPtr& t)
{
    return M.map([&](const TorusElement& u) { return restrict_to(u, t); });
}

inline FactorizationReport verify_factorization(const EmbeddingSpec& e)
{
    const int n = e.n;
    const auto& T = e.tensor.torus;
    FactorizationReport rep{{}, false, {}, false, -1, -1, std::nullopt, quantum_identity(n, T), quantum_identity(n, T)};
    rep.hom_failures = e.map->validate();
    rep.retraction = e.retraction_ok();

    const auto fgm = restrict_entrywise(quantum_fg_matrix(e.fg, e.side), e.subtorus);
    rep.lhs = apply_entrywise(*e.map, fgm);

    for (std::size_t i = 0; i < e.factor_tori.size(); ++i) {
        const auto Mi = snake_move_matrix(e.factor_tori[i]);
        if (!check_slnq(Mi).passed())
            rep.non_slnq_factors.push_back(i);
        rep.rhs = rep.rhs * apply_entrywise(tensor_injection(e.tensor, i), Mi);
    }
    rep.equal = true;
    for (int i = 0; i < n && rep.equal; ++i)
        for (int j = 0; j < n && rep.equal; ++j) {
            auto d = rep.lhs(i, j) - rep.rhs(i, j);
            if (!d.is_zero()) {
                rep.equal = false;
                rep.mismatch_row = i;
                rep.mismatch_col = j;
                rep.residual = std::move(d);
            }
        }
    return rep;
}

inline FactorizationReport verify_factorization(int n, Side side) { return verify_factorization(build_embedding(n, side)); }

// ---- Lemma checks ----------------------------------------------------------------

// commutative polynomial over a factor's variables, moved to the tensor's variables
inline CommutativePoly lift(const CommutativePoly& p, std::size_t offset, std::size_t total)
{
    CommutativePoly r(total);
    for (const auto& [e, c] : p.terms()) {
        ExponentVector f(total, 0);
        for (std::size_t i = 0; i < e.size(); ++i)
            f.at(offset + i) = e[i];
        r.add_term(f, c);
    }
    return r;
}

struct LemmaReport {
    bool equal = false;
    int row = -1, col = -1;
};

// [M_1][M_2]...[M_k] against [M_1 M_2 ... M_k]; matrices are over the variables of the torus t
inline LemmaReport check_lemma_weyl_product(const TorusPtr& t, const std::vector<CommutativeMatrix>& mats)
{
    if (mats.empty())
        throw std::invalid_argument("no matrices");
    QuantumMatrix lhs = weyl_order(mats[0], t);
    CommutativeMatrix prod = mats[0];
    for (std::size_t i = 1; i < mats.size(); ++i) {
        lhs = lhs * weyl_order(mats[i], t);
        prod = prod * mats[i];
    }
    const auto rhs = weyl_order(prod, t);
    for (std::size_t i = 0; i < lhs.rows(); ++i)
        for (std::size_t j = 0; j < lhs.cols(); ++j)
            if (!(lhs(i, j) == rhs(i, j)))
                return {false, int(i), int(j)};
    return {true, -1, -1};
}

// per-factor matrices (over each factor's own variables) lifted into the tensor product
inline LemmaReport check_lemma_weyl_product(const TensorProduct& tp, const std::vector<CommutativeMatrix>& mats)
{
    if (mats.size() != tp.factors.size())
        throw std::invalid_argument("one matrix per tensor factor expected");
    std::vector<CommutativeMatrix> lifted;
    for (std::size_t i = 0; i < mats.size(); ++i) {
        const auto off = tp.offsets[i];
        const auto N = tp.torus->size();
        lifted.push_back(mats[i].map([&](const CommutativePoly& p) { return lift(p, off, N); }));
    }
    return check_lemma_weyl_product(tp.torus, lifted);
}

// Weyl product rule checked on the snake-move factors of a sweep
inline LemmaReport check_lemma_on_sweep(const EmbeddingSpec& e)
{
    std::vector<CommutativeMatrix> mats;
    for (const auto& t : e.factor_tori)
        mats.push_back(snake_move_commutative(t.n, t.j, t.side, t.torus->size(), 0));
    return check_lemma_weyl_product(e.tensor, mats);
}

} // namespace fgq
