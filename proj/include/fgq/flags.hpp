#pragma once

#include "linalg.hpp"
#include "triangle_quiver.hpp"

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace fgq {

struct GenericityError : std::domain_error {
    using std::domain_error::domain_error;
};

// Complete flag: E^(a) is spanned by the first a columns of the basis matrix.
class Flag {
public:
    explicit Flag(RationalMatrix basis) : B_(std::move(basis))
    {
        if (!B_.square() || B_.rows() == 0)
            throw DimensionError("flag basis must be a nonempty square matrix");
        if (rank(B_) != B_.rows())
            throw SingularMatrixError("flag basis is not invertible");
    }

    static Flag standard_ascending(std::size_t n) { return Flag(rational_identity(n)); }
    static Flag standard_descending(std::size_t n)
    {
        RationalMatrix B(n, n, Rational(0));
        for (std::size_t i = 0; i < n; ++i)
            B(n - 1 - i, i) = 1;
        return Flag(std::move(B));
    }

    std::size_t n() const { return B_.rows(); }
    const RationalMatrix& basis() const { return B_; }
    RationalMatrix subspace(std::size_t a) const { return leading_columns(B_, a); }

    // phi E
    Flag transformed(const RationalMatrix& phi) const { return Flag(phi * B_); }

private:
    RationalMatrix B_;
};

// columns spanning the annihilator of the column span of W (coordinates in the dual basis)
inline RationalMatrix annihilator(const RationalMatrix& W)
{
    const std::size_t n = W.rows();
    if (W.cols() == 0)
        return rational_identity(n);
    const auto ns = left_nullspace(W);
    if (ns.empty())
        return RationalMatrix(n, 0, Rational(0));
    return columns_to_matrix(ns);
}

inline std::size_t span_dim(const std::vector<RationalMatrix>& blocks, std::size_t n)
{
    const auto M = hstack(blocks, n);
    return M.cols() ? rank(M) : 0;
}

// dim(W cap W') computed as n - dim(W^perp + W'^perp)
inline std::size_t intersection_dim(const RationalMatrix& W, const RationalMatrix& Wp)
{
    const std::size_t n = W.rows();
    return n - span_dim({annihilator(W), annihilator(Wp)}, n);
}

inline bool same_subspace(const RationalMatrix& A, const RationalMatrix& B)
{
    const std::size_t ra = A.cols() ? rank(A) : 0;
    const std::size_t rb = B.cols() ? rank(B) : 0;
    return ra == rb && span_dim({A, B}, A.rows()) == ra;
}

inline bool same_flag(const Flag& E, const Flag& F)
{
    if (E.n() != F.n())
        return false;
    for (std::size_t a = 1; a < E.n(); ++a)
        if (!same_subspace(E.subspace(a), F.subspace(a)))
            return false;
    return true;
}

// (E^perp)^(a) = (E^(n-a))^perp, assembled one nullspace at a time
inline Flag dual_flag(const Flag& E)
{
    const std::size_t n = E.n();
    std::vector<RationalVector> cols;
    for (std::size_t a = 1; a <= n; ++a) {
        const auto ann = annihilator(E.subspace(n - a));
        for (std::size_t j = 0; j < ann.cols(); ++j) {
            RationalVector v(n);
            for (std::size_t i = 0; i < n; ++i)
                v[i] = ann(i, j);
            auto trial = cols;
            trial.push_back(v);
            if (rank(columns_to_matrix(trial)) == trial.size()) {
                cols = std::move(trial);
                break;
            }
        }
        if (cols.size() != a)
            throw std::logic_error("dual flag construction failed");
    }
    return Flag(columns_to_matrix(cols));
}

struct PairGenericity {
    bool direct_sum;      // (1a)
    bool sum_dimension;   // (1b)
    bool trivial_meet;    // (2a)
    bool meet_dimension;  // (2b)
    bool consistent() const
    {
        return direct_sum == sum_dimension && sum_dimension == trivial_meet && trivial_meet == meet_dimension;
    }
};

inline PairGenericity pair_genericity(const Flag& E, const Flag& G)
{
    const std::size_t n = E.n();
    PairGenericity g{true, true, true, true};
    for (std::size_t a = 0; a <= n; ++a)
        for (std::size_t c = 0; c <= n; ++c) {
            const auto Ea = E.subspace(a), Gc = G.subspace(c);
            const std::size_t sum = span_dim({Ea, Gc}, n);
            const std::size_t meet = intersection_dim(Ea, Gc);
            if (sum != std::min(a + c, n))
                g.sum_dimension = false;
            if (meet != (a + c > n ? a + c - n : 0))
                g.meet_dimension = false;
            if (a + c == n) {
                if (sum != n)
                    g.direct_sum = false;
                if (meet != 0)
                    g.trivial_meet = false;
            }
        }
    return g;
}

inline bool is_generic_pair(const Flag& E, const Flag& G) { return pair_genericity(E, G).direct_sum; }

struct SpanGenericity {
    bool direct_sum;    // (1a): direct and spanning for total dimension n
    bool sum_dimension; // (1b): dim = min(total, n) for all choices
};

inline SpanGenericity span_genericity(const std::vector<Flag>& flags)
{
    const std::size_t n = flags.at(0).n();
    const std::size_t m = flags.size();
    SpanGenericity g{true, true};
    std::vector<std::size_t> d(m, 0);
    while (true) {
        std::size_t total = 0;
        std::vector<RationalMatrix> blocks;
        for (std::size_t i = 0; i < m; ++i) {
            total += d[i];
            blocks.push_back(flags[i].subspace(d[i]));
        }
        const std::size_t dim = span_dim(blocks, n);
        if (dim != std::min(total, n))
            g.sum_dimension = false;
        if (total == n && dim != n)
            g.direct_sum = false;
        std::size_t i = 0;
        while (i < m && d[i] == n)
            d[i++] = 0;
        if (i == m)
            break;
        ++d[i];
    }
    return g;
}

inline bool is_max_span_triple(const Flag& E, const Flag& F, const Flag& G)
{
    return span_genericity({E, F, G}).direct_sum;
}

inline bool is_max_span_quad(const Flag& E, const Flag& F, const Flag& G, const Flag& H)
{
    return span_genericity({E, F, G, H}).direct_sum;
}

struct FlagTuple {
    std::vector<Flag> flags;
    bool max_span = false; // cached certificate

    explicit FlagTuple(std::vector<Flag> fs) : flags(std::move(fs))
    {
        if (flags.size() < 2 || flags.size() > 4)
            throw std::invalid_argument("flag tuples hold 2, 3 or 4 flags");
        max_span = flags.size() == 2 ? is_generic_pair(flags[0], flags[1]) : span_genericity(flags).direct_sum;
    }
    bool certificate_holds() const
    {
        const bool now = flags.size() == 2 ? is_generic_pair(flags[0], flags[1]) : span_genericity(flags).direct_sum;
        return now == max_span;
    }
};

// e^(a) ^ f^(b) ^ g^(c) for a+b+c = n, as a determinant of stacked leading columns
inline Rational wedge(const Flag& E, std::size_t a, const Flag& F, std::size_t b, const Flag& G, std::size_t c)
{
    if (a + b + c != E.n())
        throw DimensionError("wedge needs a+b+c = n");
    return determinant(hstack({E.subspace(a), F.subspace(b), G.subspace(c)}, E.n()));
}

namespace detail {

inline Rational checked_ratio(const Rational& num, const Rational& den)
{
    if (sgn(num) == 0 || sgn(den) == 0)
        throw GenericityError("vanishing wedge product: flags are not in general position");
    return num / den;
}

} // namespace detail

inline Rational triangle_invariant(const Flag& E, const Flag& F, const Flag& G, const ThetaVertex& v)
{
    if (v.level() != int(E.n()) || !v.is_interior())
        throw std::invalid_argument("triangle invariant needs an interior vertex of Theta_n");
    const std::size_t a = v.a, b = v.b, c = v.c;
    auto w = [&](std::size_t x, std::size_t y, std::size_t z) { return wedge(E, x, F, y, G, z); };
    return detail::checked_ratio(w(a - 1, b + 1, c), w(a + 1, b - 1, c)) *
           detail::checked_ratio(w(a, b - 1, c + 1), w(a, b + 1, c - 1)) *
           detail::checked_ratio(w(a + 1, b, c - 1), w(a - 1, b, c + 1));
}

inline Rational edge_invariant(const Flag& E, const Flag& G, const Flag& F, const Flag& Fp, int j)
{
    const int n = int(E.n());
    if (j < 1 || j > n - 1)
        throw std::out_of_range("edge invariant index outside 1..n-1");
    const std::size_t J = j, K = n - j;
    return -detail::checked_ratio(wedge(E, J, G, K - 1, F, 1), wedge(E, J, G, K - 1, Fp, 1)) *
           detail::checked_ratio(wedge(E, J - 1, G, K, Fp, 1), wedge(E, J - 1, G, K, F, 1));
}

// phi sending L_a = E^(a) cap G^(n-a+1) to the a-th standard basis vector
inline RationalMatrix pgl_transport_pair(const Flag& E, const Flag& G)
{
    if (!is_generic_pair(E, G))
        throw GenericityError("flag pair is not generic");
    const std::size_t n = E.n();
    std::vector<RationalVector> lines;
    for (std::size_t a = 1; a <= n; ++a) {
        const auto Ea = E.subspace(a), Gc = G.subspace(n - a + 1);
        // E x = G y  <=>  [E | -G] (x, y) = 0
        RationalMatrix S(n, a + (n - a + 1), Rational(0));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < a; ++j)
                S(i, j) = Ea(i, j);
            for (std::size_t j = 0; j < n - a + 1; ++j)
                S(i, a + j) = -Gc(i, j);
        }
        const auto ns = nullspace(S);
        if (ns.size() != 1)
            throw GenericityError("E^(a) cap G^(n-a+1) is not a line");
        RationalVector x(ns[0].begin(), ns[0].begin() + a);
        RationalVector v(n, Rational(0));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < a; ++j)
                v[i] += Ea(i, j) * x[j];
        lines.push_back(std::move(v));
    }
    return inverse(columns_to_matrix(lines));
}

// L_(a,b,c) = (E^(a) + F^(b) + G^(c))^perp for a+b+c = n-1, as a covector
inline RationalVector vertex_line(const Flag& E, const Flag& F, const Flag& G, const ThetaVertex& v)
{
    const std::size_t n = E.n();
    if (v.a < 0 || v.b < 0 || v.c < 0 || v.level() != int(n) - 1)
        throw std::invalid_argument("line vertex must lie in Theta_{n-1}");
    const auto ns = left_nullspace(hstack({E.subspace(v.a), F.subspace(v.b), G.subspace(v.c)}, n));
    if (ns.size() != 1)
        throw GenericityError("snake line " + v.key() + " is not one-dimensional");
    return ns[0];
}

// uniform integer entries in [-9, 9], resampled until invertible
inline Flag random_flag(std::size_t n, std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> d(-9, 9);
    while (true) {
        RationalMatrix B(n, n, Rational(0));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                B(i, j) = d(rng);
        if (sgn(determinant(B)) != 0)
            return Flag(std::move(B));
    }
}

// count flags with the maximum span property (generic pair for count 2), resampling on failure
inline std::vector<Flag> random_generic_flags(std::size_t n, std::size_t count, std::mt19937_64& rng,
                                              std::size_t max_attempts = 1000)
{
    for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
        std::vector<Flag> fs;
        for (std::size_t i = 0; i < count; ++i)
            fs.push_back(random_flag(n, rng));
        if (FlagTuple(fs).max_span)
            return fs;
    }
    throw GenericityError("could not sample a generic flag tuple");
}

inline std::vector<Flag> random_generic_flags(std::size_t n, std::size_t count, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    return random_generic_flags(n, count, rng);
}

} // namespace fgq
