#pragma once

#include "commutative.hpp"
#include "laurent.hpp"

#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace fgq {

struct PresentationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

using IntMatrix = std::vector<std::vector<long>>;

// Presentation of the quantum torus T^omega(P) with n-th roots of the generators.
class QuantumTorus {
public:
    QuantumTorus(int n, std::vector<std::string> names, IntMatrix poisson)
        : n_(n), names_(std::move(names)), P_(std::move(poisson))
    {
        if (n_ < 1)
            throw PresentationError("root order n must be positive");
        if (P_.size() != names_.size())
            throw PresentationError("Poisson matrix size does not match the generator count");
        for (std::size_t i = 0; i < P_.size(); ++i) {
            if (P_[i].size() != names_.size())
                throw PresentationError("ragged Poisson matrix");
        }
        for (std::size_t i = 0; i < P_.size(); ++i)
            for (std::size_t j = 0; j < P_.size(); ++j)
                if (P_[i][j] != -P_[j][i])
                    throw PresentationError("Poisson matrix is not antisymmetric at (" + names_[i] + ", " +
                                            names_[j] + ")");
        for (std::size_t i = 0; i < names_.size(); ++i)
            if (!index_.emplace(names_[i], i).second)
                throw PresentationError("duplicate generator name " + names_[i]);
    }

    int n() const { return n_; }
    std::size_t size() const { return names_.size(); }
    const std::vector<std::string>& names() const { return names_; }
    const IntMatrix& poisson() const { return P_; }
    long P(std::size_t i, std::size_t j) const { return P_[i][j]; }

    std::optional<std::size_t> find(const std::string& name) const
    {
        auto it = index_.find(name);
        if (it == index_.end())
            return std::nullopt;
        return it->second;
    }
    std::size_t index_of(const std::string& name) const
    {
        auto i = find(name);
        if (!i)
            throw PresentationError("unknown generator " + name);
        return *i;
    }

    // sum_ij P_ij a_i b_j on numerators; [a][b] = q^{<a,b>/(2 n^2)} [a+b]
    long pairing(const ExponentVector& a, const ExponentVector& b) const
    {
        check_length(a);
        check_length(b);
        long s = 0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (!a[i])
                continue;
            for (std::size_t j = 0; j < b.size(); ++j)
                if (b[j])
                    s += P_[i][j] * a[i] * b[j];
        }
        return s;
    }

    // h-exponent of the scalar turning a Weyl monomial into the normal-ordered one:
    // [X^e] = h^{weyl_shift(e)} X^e with weyl_shift(e) = -sum_{i<j} P_ij e_i e_j
    long weyl_shift(const ExponentVector& e) const
    {
        long s = 0;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (!e[i])
                continue;
            for (std::size_t j = i + 1; j < e.size(); ++j)
                if (e[j])
                    s += P_[i][j] * e[i] * e[j];
        }
        return -s;
    }

    void check_length(const ExponentVector& e) const
    {
        if (e.size() != names_.size())
            throw PresentationError("exponent vector has length " + std::to_string(e.size()) + ", torus has " +
                                    std::to_string(names_.size()) + " generators");
    }

    friend bool operator==(const QuantumTorus& a, const QuantumTorus& b)
    {
        return a.n_ == b.n_ && a.names_ == b.names_ && a.P_ == b.P_;
    }

private:
    int n_;
    std::vector<std::string> names_;
    IntMatrix P_;
    std::unordered_map<std::string, std::size_t> index_;
};

using TorusPtr = std::shared_ptr<const QuantumTorus>;

inline TorusPtr make_torus(int n, std::vector<std::string> names, IntMatrix poisson)
{
    return std::make_shared<const QuantumTorus>(n, std::move(names), std::move(poisson));
}

inline bool same_presentation(const TorusPtr& a, const TorusPtr& b)
{
    return a == b || (a && b && *a == *b);
}

class TorusElement {
public:
    using Terms = std::map<ExponentVector, HalfOmegaLaurent>;

    explicit TorusElement(TorusPtr t) : t_(std::move(t))
    {
        if (!t_)
            throw PresentationError("null torus");
    }

    static TorusElement zero(const TorusPtr& t) { return TorusElement(t); }
    static TorusElement one(const TorusPtr& t) { return monomial(t, ExponentVector(t->size(), 0)); }
    static TorusElement monomial(const TorusPtr& t, const ExponentVector& e, const HalfOmegaLaurent& c = 1)
    {
        t->check_length(e);
        TorusElement r(t);
        r.add_term(e, c);
        return r;
    }
    // X_name^{numerator/n}
    static TorusElement generator(const TorusPtr& t, const std::string& name, long numerator)
    {
        ExponentVector e(t->size(), 0);
        e[t->index_of(name)] = numerator;
        return monomial(t, e);
    }
    static TorusElement generator(const TorusPtr& t, const std::string& name)
    {
        return generator(t, name, t->n());
    }
    static TorusElement scalar(const TorusPtr& t, const HalfOmegaLaurent& c)
    {
        return monomial(t, ExponentVector(t->size(), 0), c);
    }

    const TorusPtr& torus() const { return t_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    void add_term(const ExponentVector& e, const HalfOmegaLaurent& c)
    {
        if (c.is_zero())
            return;
        auto [it, fresh] = terms_.try_emplace(e, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero())
                terms_.erase(it);
        }
    }

    TorusElement& operator+=(const TorusElement& o)
    {
        check(o);
        for (const auto& [e, c] : o.terms_)
            add_term(e, c);
        return *this;
    }
    TorusElement& operator-=(const TorusElement& o)
    {
        check(o);
        for (const auto& [e, c] : o.terms_)
            add_term(e, -c);
        return *this;
    }
    friend TorusElement operator+(TorusElement a, const TorusElement& b) { return a += b; }
    friend TorusElement operator-(TorusElement a, const TorusElement& b) { return a -= b; }
    TorusElement operator-() const { return scaled(HalfOmegaLaurent(-1)); }

    friend TorusElement operator*(const TorusElement& u, const TorusElement& v)
    {
        u.check(v);
        const auto& t = *u.t_;
        const std::size_t N = t.size();
        TorusElement r(u.t_);
        std::vector<long> lower(N);
        for (const auto& [b, cb] : v.terms_) {
            // lower[i] = sum_{j<i} P_ij b_j, so moving X^b left past X^a costs omega^{sum_i a_i lower[i]}
            for (std::size_t i = 0; i < N; ++i) {
                long s = 0;
                for (std::size_t j = 0; j < i; ++j)
                    if (b[j])
                        s += t.P(i, j) * b[j];
                lower[i] = s;
            }
            for (const auto& [a, ca] : u.terms_) {
                long s = 0;
                for (std::size_t i = 0; i < N; ++i)
                    if (a[i])
                        s += a[i] * lower[i];
                r.add_term(a + b, (ca * cb).shifted(2 * s));
            }
        }
        return r;
    }
    TorusElement& operator*=(const TorusElement& o) { return *this = *this * o; }

    TorusElement scaled(const HalfOmegaLaurent& c) const
    {
        TorusElement r(t_);
        for (const auto& [e, x] : terms_)
            r.add_term(e, x * c);
        return r;
    }
    TorusElement shifted(long h_pow) const
    {
        TorusElement r(t_);
        for (const auto& [e, x] : terms_)
            r.terms_.emplace(e, x.shifted(h_pow));
        return r;
    }

    friend bool operator==(const TorusElement& a, const TorusElement& b)
    {
        return same_presentation(a.t_, b.t_) && a.terms_ == b.terms_;
    }

    // Sum of Weyl-ordered monomials, e.g. "[X1^1/4 X2^-1/2] + 2*h^3*[...]"; the canonical human form.
    std::string str() const;

private:
    void check(const TorusElement& o) const
    {
        if (!same_presentation(t_, o.t_))
            throw PresentationError("elements of different quantum tori");
    }

    TorusPtr t_;
    Terms terms_;
};

// [X^e] with scalar c
inline TorusElement weyl_monomial(const TorusPtr& t, const ExponentVector& e, const HalfOmegaLaurent& c = 1)
{
    return TorusElement::monomial(t, e, c.shifted(t->weyl_shift(e)));
}

struct Letter {
    std::string generator;
    long numerator; // exponent numerator/n
};
using Word = std::vector<Letter>;

// [w] = q^{-1/2 sum_{a<b} P_{i_a i_b} r_a r_b} w, multiplying the letters in the given order
inline TorusElement weyl_order(const Word& w, const TorusPtr& t)
{
    std::vector<std::size_t> idx;
    idx.reserve(w.size());
    for (const auto& l : w)
        idx.push_back(t->index_of(l.generator));
    long s = 0;
    TorusElement prod = TorusElement::one(t);
    for (std::size_t a = 0; a < w.size(); ++a) {
        for (std::size_t b = a + 1; b < w.size(); ++b)
            s += t->P(idx[a], idx[b]) * w[a].numerator * w[b].numerator;
        ExponentVector e(t->size(), 0);
        e[idx[a]] = w[a].numerator;
        prod *= TorusElement::monomial(t, e);
    }
    return prod.shifted(-s);
}

// Expand an element as a sum of Weyl monomials: coefficient of [X^e] for each e.
inline std::map<ExponentVector, HalfOmegaLaurent> weyl_coefficients(const TorusElement& u)
{
    std::map<ExponentVector, HalfOmegaLaurent> r;
    for (const auto& [e, c] : u.terms())
        r.emplace(e, c.shifted(-u.torus()->weyl_shift(e)));
    return r;
}

inline CommutativePoly specialize_commutative(const TorusElement& u)
{
    CommutativePoly r(u.torus()->size());
    for (const auto& [e, c] : u.terms())
        r.add_term(e, c.at_one());
    return r;
}

// Entrywise inverse of specialization along Weyl ordering: each commutative monomial becomes [X^e].
inline TorusElement weyl_order(const CommutativePoly& p, const TorusPtr& t)
{
    if (p.nvars() != t->size())
        throw PresentationError("commutative polynomial and torus have different variable counts");
    TorusElement r(t);
    for (const auto& [e, c] : p.terms())
        r.add_term(e, HalfOmegaLaurent(c, t->weyl_shift(e)));
    return r;
}

inline std::string format_exponents(const QuantumTorus& t, const ExponentVector& e)
{
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (!e[i])
            continue;
        if (!first)
            os << ' ';
        first = false;
        Rational ex(e[i], t.n());
        ex.canonicalize();
        os << t.names()[i];
        if (ex != 1)
            os << '^' << ex.get_str();
    }
    return first ? std::string("1") : os.str();
}

inline std::string TorusElement::str() const
{
    if (terms_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : weyl_coefficients(*this)) {
        if (!first)
            os << " + ";
        first = false;
        if (!(c == HalfOmegaLaurent(1)))
            os << "(" << c.str() << ")*";
        os << "[" << format_exponents(*t_, e) << "]";
    }
    return os.str();
}

// ---- tensor products ----------------------------------------------------------

struct TensorProduct {
    TorusPtr torus;
    std::vector<TorusPtr> factors;
    std::vector<std::size_t> offsets;
};

inline std::string factor_name(const std::string& g, std::size_t factor) { return g + "^(" + std::to_string(factor) + ")"; }

// Block-diagonal Poisson matrix; generator g of factor i (1-based) is renamed g^(i).  A single factor is returned as is.
inline TensorProduct tensor(const std::vector<TorusPtr>& ts)
{
    if (ts.empty())
        throw PresentationError("tensor product of no factors");
    TensorProduct out;
    out.factors = ts;
    if (ts.size() == 1) {
        out.torus = ts[0];
        out.offsets = {0};
        return out;
    }
    std::size_t N = 0;
    for (const auto& t : ts) {
        if (t->n() != ts[0]->n())
            throw PresentationError("tensor factors with different root orders");
        out.offsets.push_back(N);
        N += t->size();
    }
    std::vector<std::string> names;
    IntMatrix P(N, std::vector<long>(N, 0));
    for (std::size_t f = 0; f < ts.size(); ++f) {
        const auto& t = *ts[f];
        const std::size_t o = out.offsets[f];
        for (std::size_t i = 0; i < t.size(); ++i) {
            names.push_back(factor_name(t.names()[i], f + 1));
            for (std::size_t j = 0; j < t.size(); ++j)
                P[o + i][o + j] = t.P(i, j);
        }
    }
    out.torus = make_torus(ts[0]->n(), std::move(names), std::move(P));
    return out;
}

// ---- generator-map homomorphisms ----------------------------------------------

struct HomFailure {
    std::string first, second;
    long expected, actual; // pairings in numerator units (n^2 times the q-exponent)
};

// Algebra map determined by X_i -> [Y^{v_i}] on generators, hence [X^e] -> [Y^{sum_i e_i v_i / n}].
class GeneratorMap {
public:
    GeneratorMap(TorusPtr src, TorusPtr dst, std::vector<ExponentVector> images)
        : src_(std::move(src)), dst_(std::move(dst)), images_(std::move(images))
    {
        if (src_->n() != dst_->n())
            throw PresentationError("generator map between tori of different root orders");
        if (images_.size() != src_->size())
            throw PresentationError("generator map needs one image per source generator");
        for (const auto& v : images_)
            dst_->check_length(v);
    }

    // images given as elements; each must be a Weyl monomial [Y^v] with coefficient 1
    static GeneratorMap from_elements(const TorusPtr& src, const TorusPtr& dst,
                                      const std::map<std::string, TorusElement>& images)
    {
        std::vector<ExponentVector> v(src->size());
        std::vector<bool> seen(src->size(), false);
        for (const auto& [name, el] : images) {
            const auto i = src->index_of(name);
            if (!same_presentation(el.torus(), dst))
                throw PresentationError("image of " + name + " lives in another torus");
            if (el.term_count() != 1)
                throw PresentationError("image of " + name + " is not a monomial");
            const auto& [e, c] = *el.terms().begin();
            if (!(c == HalfOmegaLaurent(1, dst->weyl_shift(e))))
                throw PresentationError("image of " + name + " is not a Weyl monomial with coefficient 1");
            v[i] = e;
            seen[i] = true;
        }
        for (std::size_t i = 0; i < seen.size(); ++i)
            if (!seen[i])
                throw PresentationError("no image for generator " + src->names()[i]);
        return GeneratorMap(src, dst, std::move(v));
    }

    const TorusPtr& source() const { return src_; }
    const TorusPtr& target() const { return dst_; }
    const std::vector<ExponentVector>& images() const { return images_; }

    ExponentVector map_exponents(const ExponentVector& e) const
    {
        src_->check_length(e);
        const long n = src_->n();
        ExponentVector out(dst_->size(), 0);
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (!e[i])
                continue;
            for (std::size_t k = 0; k < out.size(); ++k)
                out[k] += e[i] * images_[i][k];
        }
        for (auto& x : out) {
            if (x % n != 0)
                throw PresentationError("image exponent is not a multiple of 1/n");
            x /= n;
        }
        return out;
    }

    // every pair (i,j) with <v_i, v_j> != n^2 P_ij
    std::vector<HomFailure> validate() const
    {
        std::vector<HomFailure> bad;
        const long n2 = long(src_->n()) * src_->n();
        for (std::size_t i = 0; i < images_.size(); ++i)
            for (std::size_t j = i + 1; j < images_.size(); ++j) {
                const long got = dst_->pairing(images_[i], images_[j]);
                if (got != n2 * src_->P(i, j))
                    bad.push_back({src_->names()[i], src_->names()[j], n2 * src_->P(i, j), got});
            }
        return bad;
    }
    bool valid() const { return validate().empty(); }

    TorusElement operator()(const TorusElement& u) const
    {
        if (!same_presentation(u.torus(), src_))
            throw PresentationError("element is not in the source torus");
        TorusElement r(dst_);
        for (const auto& [e, c] : u.terms()) {
            const auto f = map_exponents(e);
            r.add_term(f, c.shifted(dst_->weyl_shift(f) - src_->weyl_shift(e)));
        }
        return r;
    }

private:
    TorusPtr src_, dst_;
    std::vector<ExponentVector> images_;
};

// injection of factor f (0-based) into the tensor product
inline GeneratorMap tensor_injection(const TensorProduct& tp, std::size_t f)
{
    const auto& src = tp.factors.at(f);
    std::vector<ExponentVector> v(src->size(), ExponentVector(tp.torus->size(), 0));
    for (std::size_t i = 0; i < src->size(); ++i)
        v[i][tp.offsets[f] + i] = src->n();
    return GeneratorMap(src, tp.torus, std::move(v));
}

} // namespace fgq
