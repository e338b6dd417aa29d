#pragma once

#include "rational.hpp"

#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace fgq {

// Exponent numerators over a fixed denominator n; entry i is the power of generator i times n.
using ExponentVector = std::vector<long>;

inline ExponentVector operator+(const ExponentVector& a, const ExponentVector& b)
{
    if (a.size() != b.size())
        throw std::invalid_argument("exponent vectors of different length");
    ExponentVector r(a);
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] += b[i];
    return r;
}

inline ExponentVector operator*(long s, const ExponentVector& a)
{
    ExponentVector r(a);
    for (auto& x : r)
        x *= s;
    return r;
}

// Commutative Laurent polynomial with fractional exponents: the q = omega = 1 layer.
class CommutativePoly {
public:
    using Terms = std::map<ExponentVector, Rational>;

    CommutativePoly() = default;
    explicit CommutativePoly(std::size_t nvars) : nvars_(nvars) {}

    static CommutativePoly constant(std::size_t nvars, const Rational& c)
    {
        return monomial(ExponentVector(nvars, 0), c);
    }
    static CommutativePoly monomial(const ExponentVector& e, const Rational& c = 1)
    {
        CommutativePoly p(e.size());
        p.add_term(e, c);
        return p;
    }

    std::size_t nvars() const { return nvars_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const ExponentVector& e, const Rational& c)
    {
        if (e.size() != nvars_)
            throw std::invalid_argument("exponent vector length mismatch");
        if (sgn(c) == 0)
            return;
        auto [it, fresh] = terms_.try_emplace(e, c);
        if (!fresh) {
            it->second += c;
            if (sgn(it->second) == 0)
                terms_.erase(it);
        }
    }

    CommutativePoly& operator+=(const CommutativePoly& o)
    {
        check(o);
        for (const auto& [e, c] : o.terms_)
            add_term(e, c);
        return *this;
    }
    CommutativePoly& operator-=(const CommutativePoly& o)
    {
        check(o);
        for (const auto& [e, c] : o.terms_)
            add_term(e, -c);
        return *this;
    }
    friend CommutativePoly operator+(CommutativePoly a, const CommutativePoly& b) { return a += b; }
    friend CommutativePoly operator-(CommutativePoly a, const CommutativePoly& b) { return a -= b; }
    friend CommutativePoly operator*(const CommutativePoly& a, const CommutativePoly& b)
    {
        a.check(b);
        CommutativePoly r(a.nvars_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_)
                r.add_term(ea + eb, ca * cb);
        return r;
    }
    CommutativePoly& operator*=(const CommutativePoly& o) { return *this = *this * o; }

    friend bool operator==(const CommutativePoly& a, const CommutativePoly& b)
    {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }

    // names[i] labels variable i; exponents are printed as numerator/n
    std::string str(const std::vector<std::string>& names, int n) const
    {
        if (terms_.empty())
            return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [e, c] : terms_) {
            if (!first)
                os << " + ";
            first = false;
            os << c.get_str();
            for (std::size_t i = 0; i < e.size(); ++i)
                if (e[i]) {
                    Rational ex(e[i], n);
                    ex.canonicalize();
                    os << "*" << names.at(i) << "^" << ex.get_str();
                }
        }
        return os.str();
    }

private:
    void check(const CommutativePoly& o) const
    {
        if (o.nvars_ != nvars_)
            throw std::invalid_argument("commutative polynomials over different variable sets");
    }

    std::size_t nvars_ = 0;
    Terms terms_;
};

} // namespace fgq
