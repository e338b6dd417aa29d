#pragma once

#include "rational.hpp"

#include <map>
#include <sstream>
#include <string>

namespace fgq {

// Laurent polynomial in the formal symbol h = omega^{1/2}.  With omega^{n^2} = q,
// q itself is h^{2 n^2}.
class HalfOmegaLaurent {
public:
    using Terms = std::map<long, Rational>;

    HalfOmegaLaurent() = default;
    HalfOmegaLaurent(const Rational& c, long h_pow = 0)
    {
        if (sgn(c) != 0)
            terms_.emplace(h_pow, c);
    }
    HalfOmegaLaurent(long c) : HalfOmegaLaurent(Rational(c)) {}

    static HalfOmegaLaurent h_power(long k) { return {Rational(1), k}; }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(long h_pow, const Rational& c)
    {
        auto [it, fresh] = terms_.try_emplace(h_pow, c);
        if (!fresh) {
            it->second += c;
            if (sgn(it->second) == 0)
                terms_.erase(it);
        } else if (sgn(c) == 0) {
            terms_.erase(it);
        }
    }

    HalfOmegaLaurent& operator+=(const HalfOmegaLaurent& o)
    {
        for (const auto& [k, c] : o.terms_)
            add_term(k, c);
        return *this;
    }
    HalfOmegaLaurent& operator-=(const HalfOmegaLaurent& o)
    {
        for (const auto& [k, c] : o.terms_)
            add_term(k, -c);
        return *this;
    }
    friend HalfOmegaLaurent operator+(HalfOmegaLaurent a, const HalfOmegaLaurent& b) { return a += b; }
    friend HalfOmegaLaurent operator-(HalfOmegaLaurent a, const HalfOmegaLaurent& b) { return a -= b; }
    HalfOmegaLaurent operator-() const
    {
        HalfOmegaLaurent r;
        for (const auto& [k, c] : terms_)
            r.terms_.emplace(k, -c);
        return r;
    }

    friend HalfOmegaLaurent operator*(const HalfOmegaLaurent& a, const HalfOmegaLaurent& b)
    {
        HalfOmegaLaurent r;
        for (const auto& [ka, ca] : a.terms_)
            for (const auto& [kb, cb] : b.terms_)
                r.add_term(ka + kb, ca * cb);
        return r;
    }
    HalfOmegaLaurent& operator*=(const HalfOmegaLaurent& o) { return *this = *this * o; }

    // multiply by h^k
    HalfOmegaLaurent shifted(long k) const
    {
        HalfOmegaLaurent r;
        for (const auto& [kk, c] : terms_)
            r.terms_.emplace(kk + k, c);
        return r;
    }

    // the q = omega = 1 specialization
    Rational at_one() const
    {
        Rational s = 0;
        for (const auto& [k, c] : terms_)
            s += c;
        return s;
    }

    friend bool operator==(const HalfOmegaLaurent& a, const HalfOmegaLaurent& b) { return a.terms_ == b.terms_; }

    std::string str() const
    {
        if (terms_.empty())
            return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [k, c] : terms_) {
            if (!first)
                os << " + ";
            first = false;
            if (k == 0)
                os << c.get_str();
            else if (c == 1)
                os << "h^" << k;
            else
                os << c.get_str() << "*h^" << k;
        }
        return os.str();
    }

private:
    Terms terms_;
};

} // namespace fgq
