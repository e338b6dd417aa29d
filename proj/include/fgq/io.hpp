#pragma once

#include "matrix.hpp"
#include "ncmatrix.hpp"
#include "qtorus.hpp"
#include "slnq.hpp"

#include "json.hpp"

#include <regex>
#include <sstream>
#include <string>

namespace fgq {

using json = nlohmann::json;

struct ParseError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Normal-ordered terms, one JSON term per (monomial, h-power).
inline json to_json(const TorusElement& u)
{
    const auto& t = *u.torus();
    json terms = json::array();
    for (const auto& [e, c] : u.terms()) {
        json exps = json::object();
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i])
                exps[t.names()[i]] = e[i];
        for (const auto& [k, r] : c.terms())
            terms.push_back({{"h_pow", k}, {"coeff", to_string(r)}, {"exps", exps}});
    }
    return {{"terms", terms}, {"n", t.n()}};
}

// Terms may repeat or be unsorted; the result is re-normalized by accumulation.
inline TorusElement element_from_json(const json& j, const TorusPtr& t)
{
    if (!j.is_object() || !j.contains("terms") || !j.contains("n"))
        throw ParseError("element JSON needs \"terms\" and \"n\"");
    if (j.at("n").get<int>() != t->n())
        throw ParseError("element n does not match the torus");
    TorusElement u(t);
    for (const auto& term : j.at("terms")) {
        ExponentVector e(t->size(), 0);
        for (const auto& [name, num] : term.at("exps").items()) {
            const auto i = t->find(name);
            if (!i)
                throw ParseError("unknown generator: " + name);
            e[*i] += num.get<long>();
        }
        Rational c;
        try {
            c = parse_rational(term.at("coeff").get<std::string>());
        } catch (const std::exception&) {
            throw ParseError("bad coefficient in element JSON");
        }
        u.add_term(e, HalfOmegaLaurent(c, term.at("h_pow").get<long>()));
    }
    return u;
}

inline json to_json(const QuantumTorus& t)
{
    return {{"n", t.n()}, {"generators", t.names()}, {"poisson", t.poisson()}};
}

inline json to_json(const QuantumMatrix& M)
{
    json rows = json::array();
    for (std::size_t i = 0; i < M.rows(); ++i) {
        json r = json::array();
        for (std::size_t j = 0; j < M.cols(); ++j)
            r.push_back(to_json(M(i, j)));
        rows.push_back(std::move(r));
    }
    return rows;
}

// Weyl-form strings, easier to read than normal-ordered terms
inline json to_display_json(const QuantumMatrix& M)
{
    json rows = json::array();
    for (std::size_t i = 0; i < M.rows(); ++i) {
        json r = json::array();
        for (std::size_t j = 0; j < M.cols(); ++j)
            r.push_back(M(i, j).str());
        rows.push_back(std::move(r));
    }
    return rows;
}

inline json to_json(const RelationReport& rep)
{
    json f = json::array();
    for (const auto& x : rep.failures)
        f.push_back({{"relation", x.relation},
                     {"rows", {x.i, x.j}},
                     {"cols", {x.k, x.m}},
                     {"residual", to_json(x.residual)},
                     {"residual_text", x.residual.str()}});
    return {{"passed", rep.passed()}, {"failures", f}};
}

// ---- LaTeX ------------------------------------------------------------------

// "Z''2" -> Z^{\prime\prime}_{2}, "x1^(3)" -> x^{(3)}_{1}
inline std::string latex_generator(const std::string& name)
{
    static const std::regex re(R"(^([A-Za-z]+)('*)(\d+)(?:\^\((\d+)\))?$)");
    std::smatch m;
    if (!std::regex_match(name, m, re))
        return "\\mathrm{" + name + "}";
    std::string sup;
    for (long i = 0; i < m[2].length(); ++i)
        sup += "\\prime";
    if (m[4].matched)
        sup += "(" + m[4].str() + ")";
    std::string out = m[1].str();
    if (!sup.empty())
        out += "^{" + sup + "}";
    return out + "_{" + m[3].str() + "}";
}

inline std::string latex_exponent(long num, int n)
{
    Rational r(num, n);
    r.canonicalize();
    if (r.get_den() == 1)
        return r.get_num().get_str();
    return (sgn(r) < 0 ? "-" : "") + std::string("\\frac{") + mpz_class(abs(r.get_num())).get_str() + "}{" + r.get_den().get_str() + "}";
}

inline std::string latex_coefficient(const HalfOmegaLaurent& c)
{
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, r] : c.terms()) {
        if (!first)
            os << (sgn(r) < 0 ? " - " : " + ");
        else if (sgn(r) < 0)
            os << "-";
        first = false;
        const Rational a = abs(r);
        const bool unit = a == 1;
        if (!unit || k == 0)
            os << a.get_str();
        if (k)
            os << "\\omega^{" << latex_exponent(k, 2) << "}";
    }
    return os.str();
}

inline std::string to_latex(const TorusElement& u)
{
    if (u.is_zero())
        return "0";
    const auto& t = *u.torus();
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : weyl_coefficients(u)) {
        const bool single = c.terms().size() == 1;
        const bool neg = single && sgn(c.terms().begin()->second) < 0;
        if (!first)
            os << (neg ? " - " : " + ");
        else if (neg)
            os << "-";
        first = false;
        const HalfOmegaLaurent mag = neg ? -c : c;
        if (!(mag == HalfOmegaLaurent(1)))
            os << (single ? latex_coefficient(mag) : "(" + latex_coefficient(mag) + ")");
        os << "[";
        bool any = false;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (!e[i])
                continue;
            if (any)
                os << ' ';
            any = true;
            const auto g = latex_generator(t.names()[i]);
            if (e[i] == t.n())
                os << g;
            else if (g.find('^') != std::string::npos) // avoid a double superscript
                os << "{" << g << "}^{" << latex_exponent(e[i], t.n()) << "}";
            else
                os << g << "^{" << latex_exponent(e[i], t.n()) << "}";
        }
        if (!any)
            os << "1";
        os << "]";
    }
    return os.str();
}

// commutative entries; variable i is named by t.names()[i]
inline std::string to_latex(const CommutativePoly& p, const QuantumTorus& t)
{
    if (p.is_zero())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : p.terms()) {
        if (!first)
            os << (sgn(c) < 0 ? " - " : " + ");
        else if (sgn(c) < 0)
            os << "-";
        first = false;
        const Rational a = abs(c);
        bool any = false;
        std::ostringstream mono;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (!e[i])
                continue;
            const auto g = latex_generator(t.names()[i]);
            mono << (any ? " " : "");
            any = true;
            if (e[i] == t.n())
                mono << g;
            else if (g.find('^') != std::string::npos)
                mono << "{" << g << "}^{" << latex_exponent(e[i], t.n()) << "}";
            else
                mono << g << "^{" << latex_exponent(e[i], t.n()) << "}";
        }
        if (a != 1 || !any)
            os << a.get_str() << (any ? " " : "");
        os << mono.str();
    }
    return os.str();
}

inline std::string to_latex(const CommutativeMatrix& M, const QuantumTorus& t)
{
    std::ostringstream os;
    os << "\\begin{pmatrix}";
    for (std::size_t i = 0; i < M.rows(); ++i) {
        for (std::size_t j = 0; j < M.cols(); ++j)
            os << (j ? " & " : " ") << to_latex(M(i, j), t);
        os << (i + 1 < M.rows() ? " \\\\" : " ");
    }
    os << "\\end{pmatrix}";
    return os.str();
}

// "[ F_1 F_2 ... F_k ]": the Weyl-bracketed product of commutative factor matrices
inline std::string bracketed_latex(const std::vector<LabeledFactor>& factors, const QuantumTorus& t)
{
    std::ostringstream os;
    os << "\\left[\n";
    for (const auto& f : factors)
        os << "  % " << f.label << "\n  " << to_latex(f.matrix, t) << "\n";
    os << "\\right]";
    return os.str();
}

inline std::string to_latex(const QuantumMatrix& M)
{
    std::ostringstream os;
    os << "\\begin{pmatrix}\n";
    for (std::size_t i = 0; i < M.rows(); ++i) {
        for (std::size_t j = 0; j < M.cols(); ++j)
            os << (j ? " & " : "  ") << to_latex(M(i, j));
        os << (i + 1 < M.rows() ? " \\\\\n" : "\n");
    }
    os << "\\end{pmatrix}";
    return os.str();
}

inline std::string to_text(const QuantumMatrix& M)
{
    std::ostringstream os;
    for (std::size_t i = 0; i < M.rows(); ++i)
        for (std::size_t j = 0; j < M.cols(); ++j)
            os << "(" << i + 1 << "," << j + 1 << ") " << M(i, j).str() << "\n";
    return os.str();
}

} // namespace fgq
