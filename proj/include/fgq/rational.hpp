#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace fgq {

using Rational = mpq_class;

inline Rational parse_rational(const std::string& s)
{
    Rational r;
    if (r.set_str(s, 10) != 0)
        throw std::invalid_argument("bad rational literal: " + s);
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

// r^e for a (possibly negative) integer exponent; r must be nonzero when e < 0.
inline Rational pow(const Rational& r, long e)
{
    Rational base = r, out = 1;
    if (e < 0) {
        if (sgn(r) == 0)
            throw std::domain_error("zero to a negative power");
        base = 1 / r;
        e = -e;
    }
    while (e) {
        if (e & 1)
            out *= base;
        base *= base;
        e >>= 1;
    }
    return out;
}

} // namespace fgq
