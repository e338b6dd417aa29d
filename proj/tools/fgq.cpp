// fgq: build, check and factorize the Fock-Goncharov quantum matrices; run the classical flag oracle.

#include "fgq/fgq.hpp"
#include "fgq/io.hpp"

#include "CLI11.hpp"

#include <iostream>
#include <random>
#include <sstream>

using namespace fgq;

namespace {

constexpr const char* kSchema = "fgq/1";

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

void emit(json j)
{
    j["schema"] = kSchema;
    std::cout << j.dump(2) << "\n";
}

json matrix_strings(const RationalMatrix& M)
{
    json rows = json::array();
    for (std::size_t i = 0; i < M.rows(); ++i) {
        json r = json::array();
        for (std::size_t j = 0; j < M.cols(); ++j)
            r.push_back(M(i, j).get_str());
        rows.push_back(std::move(r));
    }
    return rows;
}

json matrix_strings(const CommutativeMatrix& M, const QuantumTorus& t)
{
    json rows = json::array();
    for (std::size_t i = 0; i < M.rows(); ++i) {
        json r = json::array();
        for (std::size_t j = 0; j < M.cols(); ++j)
            r.push_back(M(i, j).str(t.names(), t.n()));
        rows.push_back(std::move(r));
    }
    return rows;
}

std::vector<std::string> split_csv(const std::string& s)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, ',');)
        if (!item.empty())
            out.push_back(item);
    return out;
}

Side parse_side(const std::string& s)
{
    if (s == "left")
        return Side::left;
    if (s == "right")
        return Side::right;
    throw UsageError("side must be left or right, got " + s);
}

// ---- quiver ----------------------------------------------------------------------

int run_quiver(int n, const std::string& format)
{
    const auto s = fg_poisson(n);
    if (format == "text") {
        for (std::size_t i = 0; i < s.vertices.size(); ++i) {
            std::cout << s.names[i] << " (" << s.vertices[i].key() << "):";
            for (std::size_t j = 0; j < s.vertices.size(); ++j)
                if (s.poisson[i][j])
                    std::cout << " " << s.names[j] << "=" << s.poisson[i][j];
            std::cout << "\n";
        }
        return 0;
    }
    json vertices = json::array(), aliases = json::object(), by_key = json::object(), by_alias = json::object();
    for (std::size_t i = 0; i < s.vertices.size(); ++i) {
        const auto& v = s.vertices[i];
        vertices.push_back({{"key", v.key()}, {"alias", s.names[i]}, {"coords", {v.a, v.b, v.c}}});
        aliases[s.names[i]] = v.key();
        json rk = json::object(), ra = json::object();
        for (std::size_t j = 0; j < s.vertices.size(); ++j) {
            rk[s.vertices[j].key()] = s.poisson[i][j];
            ra[s.names[j]] = s.poisson[i][j];
        }
        by_key[v.key()] = rk;
        by_alias[s.names[i]] = ra;
    }
    emit({{"command", "quiver"},
          {"n", n},
          {"vertices", vertices},
          {"aliases", aliases},
          {"generators", s.names},
          {"poisson", by_key},
          {"poisson_by_alias", by_alias}});
    return 0;
}

// ---- build -----------------------------------------------------------------------

int run_build(int n, const std::string& which, const std::string& edge_kind, bool quantum, const std::string& format)
{
    const auto s = fg_poisson(n);
    std::vector<LabeledFactor> factors;
    std::string symbol;
    if (which == "left" || which == "right") {
        factors = fg_factors(s, which == "left" ? Side::left : Side::right);
        symbol = which == "left" ? "L" : "R";
    } else {
        const EdgeKind kind = edge_kind == "Z" ? EdgeKind::Z : edge_kind == "Z'" ? EdgeKind::Zp : EdgeKind::Zpp;
        const auto z = edge_assignment(s, kind);
        for (int l = 1; l < n; ++l)
            factors.push_back({"S^edge_" + std::to_string(l) + "(" + s.names[z[l - 1]] + ")",
                               shear_edge(n, l, z[l - 1], s.vertices.size())});
        symbol = "M^{edge}";
    }
    CommutativeMatrix C = commutative_identity(n, s.vertices.size());
    for (const auto& f : factors)
        C = C * f.matrix;
    const auto& t = *s.torus;

    if (format == "latex") {
        if (quantum) {
            std::cout << symbol << (which == "edge" ? "" : "^{\\omega}") << " = " << bracketed_latex(factors, t)
                      << "\n= " << to_latex(weyl_order(C, s.torus)) << "\n";
        } else {
            std::cout << symbol << " = " << to_latex(C, t) << "\n";
        }
        return 0;
    }
    if (format == "text") {
        if (quantum) {
            std::cout << to_text(weyl_order(C, s.torus));
        } else {
            for (std::size_t i = 0; i < C.rows(); ++i)
                for (std::size_t j = 0; j < C.cols(); ++j)
                    std::cout << "(" << i + 1 << "," << j + 1 << ") " << C(i, j).str(t.names(), t.n()) << "\n";
        }
        return 0;
    }
    json labels = json::array();
    for (const auto& f : factors)
        labels.push_back(f.label);
    json out{{"command", "build"}, {"n", n},          {"matrix", which},
             {"quantum", quantum}, {"factors", labels}, {"generators", t.names()}};
    if (which == "edge")
        out["edge"] = edge_kind;
    if (quantum) {
        const auto Q = weyl_order(C, s.torus);
        out["entries"] = to_json(Q);
        out["display"] = to_display_json(Q);
    } else {
        out["entries"] = matrix_strings(C, t);
    }
    emit(out);
    return 0;
}

// ---- check -----------------------------------------------------------------------

int run_check(int n, const std::string& which, const std::string& emit_format)
{
    const auto s = fg_poisson(n);
    json results = json::object();
    bool all = true;
    for (const auto& w : split_csv(which)) {
        const Side side = parse_side(w);
        const auto rep = check_slnq(quantum_fg_matrix(s, side));
        all = all && rep.passed();
        results[w] = to_json(rep);
        if (emit_format == "text") {
            std::cout << w << ": " << (rep.passed() ? "pass" : "FAIL") << "\n";
            for (const auto& f : rep.failures)
                std::cout << "  " << f.relation << " rows " << f.i + 1 << "," << f.j + 1 << " cols " << f.k + 1 << ","
                          << f.m + 1 << ": " << f.residual.str() << "\n";
        }
    }
    if (results.empty())
        throw UsageError("--which names no matrix");
    if (emit_format == "json")
        emit({{"command", "check"}, {"n", n}, {"results", results}, {"passed", all}});
    return all ? 0 : 1;
}

// ---- factorize -------------------------------------------------------------------

int run_factorize(int n, const std::string& side_name, const std::string& emit_format)
{
    const Side side = parse_side(side_name);
    const auto e = build_embedding(n, side);
    const auto sys = solve_snake_move_system(n, side);
    const auto rep = verify_factorization(e);

    if (emit_format == "text") {
        for (const auto& [j, t] : sys.tori) {
            std::cout << "torus j=" << j << " (" << to_string(t.kind) << "):";
            const auto& T = *t.torus;
            for (std::size_t a = 0; a < T.size(); ++a)
                for (std::size_t b = a + 1; b < T.size(); ++b)
                    if (T.P(a, b))
                        std::cout << " P(" << T.names()[a] << "," << T.names()[b] << ")=" << T.P(a, b);
            std::cout << "\n";
        }
        for (const auto& name : e.subtorus->names())
            std::cout << name << " -> " << embedding_image_string(e, name) << "\n";
        std::cout << "factorization: " << (rep.passed() ? "equal" : "MISMATCH") << "\n";
        return rep.passed() ? 0 : 1;
    }

    json tori = json::array();
    for (const auto& [j, t] : sys.tori)
        tori.push_back({{"j", j}, {"kind", to_string(t.kind)}, {"generators", t.torus->names()},
                        {"poisson", t.torus->poisson()}});
    json table = json::object();
    for (std::size_t i = 0; i < e.subtorus->size(); ++i) {
        const auto& name = e.subtorus->names()[i];
        json ex = json::object();
        const auto& v = e.map->images()[i];
        for (std::size_t k = 0; k < v.size(); ++k)
            if (v[k])
                ex[e.tensor.torus->names()[k]] = v[k];
        table[name] = {{"image", embedding_image_string(e, name)}, {"exponents", ex}};
    }
    json moves = json::array();
    for (const auto& mv : e.sequence.moves) {
        json m{{"kind", to_string(mv.kind)}, {"j", mv.shear_index}};
        if (mv.kind == SnakeMove::Kind::diamond)
            m["vertex"] = mv.vertex.key();
        moves.push_back(m);
    }
    json failures = json::array();
    for (const auto& f : rep.hom_failures)
        failures.push_back({{"first", f.first}, {"second", f.second}, {"expected", f.expected}, {"actual", f.actual}});
    json out{{"command", "factorize"},
             {"n", n},
             {"side", side_name},
             {"system", {{"unknowns", sys.unknowns}, {"equations", sys.equations}, {"free_parameters", sys.free_parameters}}},
             {"snake_move_tori", tori},
             {"moves", moves},
             {"embedding", table},
             {"hom_failures", failures},
             {"retraction", rep.retraction},
             {"non_slnq_factors", rep.non_slnq_factors},
             {"equal", rep.equal},
             {"lhs", to_display_json(rep.lhs)},
             {"rhs", to_display_json(rep.rhs)},
             {"passed", rep.passed()}};
    if (!rep.equal && rep.residual)
        out["mismatch"] = {{"row", rep.mismatch_row + 1}, {"col", rep.mismatch_col + 1}, {"residual", rep.residual->str()}};
    emit(out);
    return rep.passed() ? 0 : 1;
}

// ---- classical -------------------------------------------------------------------

int run_invariants(int n, std::uint64_t seed, int trials, const std::string& format)
{
    std::mt19937_64 rng(seed);
    json out = json::array();
    for (int trial = 0; trial < trials; ++trial) {
        const auto fs = random_generic_flags(n, 4, rng);
        const auto &E = fs[0], &F = fs[1], &G = fs[2], &Fp = fs[3];
        json tau = json::object(), eps = json::object();
        for (const auto& v : theta_interior(n))
            tau[v.key()] = triangle_invariant(E, F, G, v).get_str();
        for (int j = 1; j < n; ++j)
            eps[std::to_string(j)] = edge_invariant(E, G, F, Fp, j).get_str();
        if (format == "text") {
            std::cout << "trial " << trial << ":";
            for (const auto& [k, v] : tau.items())
                std::cout << " tau(" << k << ")=" << v.get<std::string>();
            for (const auto& [k, v] : eps.items())
                std::cout << " eps" << k << "=" << v.get<std::string>();
            std::cout << "\n";
        }
        out.push_back({{"trial", trial},
                       {"flags", {{"E", matrix_strings(E.basis())}, {"F", matrix_strings(F.basis())},
                                  {"G", matrix_strings(G.basis())}, {"F'", matrix_strings(Fp.basis())}}},
                       {"tau", tau},
                       {"epsilon", eps}});
    }
    if (format == "json")
        emit({{"command", "classical invariants"}, {"n", n}, {"seed", seed}, {"trials", trials}, {"results", out}});
    return 0;
}

struct Tally {
    std::size_t checks = 0;
    json failures = json::array();

    void record(int trial, bool ok, const std::string& what)
    {
        ++checks;
        if (!ok)
            failures.push_back({{"trial", trial}, {"detail", what}});
    }
};

std::vector<std::pair<Snake, Snake>> move_pairs(int n, Chirality ch, std::optional<SnakeMove::Kind> kind)
{
    std::vector<std::pair<Snake, Snake>> out;
    for (const ThetaVertex& h : {ThetaVertex{n - 1, 0, 0}, ThetaVertex{0, n - 1, 0}, ThetaVertex{0, 0, n - 1}}) {
        const auto all = enumerate_snakes(n, ch, h);
        for (const auto& s : all)
            for (const auto& t : all) {
                const auto mv = classify_adjacent(s, t);
                if (mv.kind != SnakeMove::Kind::not_adjacent && (!kind || mv.kind == *kind))
                    out.emplace_back(s, t);
            }
    }
    return out;
}

void verify_trial(const std::string& prop, int n, int trial, const std::vector<Flag>& fs, Tally& tally)
{
    const auto &E = fs[0], &F = fs[1], &G = fs[2], &Fp = fs[3];
    auto moves = [&](Chirality ch, std::optional<SnakeMove::Kind> kind) {
        for (const auto& [s, t] : move_pairs(n, ch, kind)) {
            const auto r = verify_move(E, F, G, s, t);
            tally.record(trial, r.passed, r.detail);
        }
    };
    if (prop == "diamond")
        moves(Chirality::left, SnakeMove::Kind::diamond);
    else if (prop == "tail")
        moves(Chirality::left, SnakeMove::Kind::tail);
    else if (prop == "right")
        moves(Chirality::right, std::nullopt);
    else if (prop == "edge") {
        const auto r = verify_edge_move(E, G, F, Fp);
        tally.record(trial, r.passed, r.detail);
    } else if (prop == "uturn") {
        const auto r = verify_uturn(E, F, G);
        tally.record(trial, r.passed, r.detail);
    } else if (prop == "shears") {
        for (const auto& v : theta_interior(n)) {
            const auto p0 = vertex_line(E, F, G, {v.a - 1, v.b, v.c});
            const auto tau = triangle_invariant(E, F, G, v);
            tally.record(trial, shear_cycle_triangle(E, F, G, v, Direction::ccw, p0) == tau, "ccw triangle shear at " + v.key());
            tally.record(trial, shear_cycle_triangle(E, F, G, v, Direction::cw, p0) == 1 / tau, "cw triangle shear at " + v.key());
        }
        for (int j = 1; j < n; ++j) {
            const auto p0 = vertex_line(E, G, F, {j - 1, n - j, 0});
            const auto eps = edge_invariant(E, G, F, Fp, j);
            tally.record(trial, shear_cycle_edge(E, G, F, Fp, j, Direction::ccw, p0) == -eps,
                         "ccw edge shear j=" + std::to_string(j));
            tally.record(trial, shear_cycle_edge(E, G, F, Fp, j, Direction::cw, p0) == -1 / eps,
                         "cw edge shear j=" + std::to_string(j));
        }
    } else if (prop == "symmetries") {
        for (const auto& v : theta_interior(n)) {
            const auto tau = triangle_invariant(E, F, G, v);
            tally.record(trial, tau * triangle_invariant(F, E, G, {v.b, v.a, v.c}) == 1, "tau transposition at " + v.key());
            tally.record(trial, tau == triangle_invariant(G, E, F, {v.c, v.a, v.b}), "tau rotation at " + v.key());
        }
        for (int j = 1; j < n; ++j)
            tally.record(trial, edge_invariant(E, G, F, Fp, j) * edge_invariant(E, G, Fp, F, j) == 1,
                         "epsilon swap j=" + std::to_string(j));
    } else if (prop == "sweep") {
        for (auto side : {Side::left, Side::right}) {
            const auto r = verify_normalized_sweep(E, F, G, side);
            tally.record(trial, r.passed, r.detail);
        }
    } else {
        throw UsageError("unknown property " + prop);
    }
}

const std::vector<std::string> kProps{"diamond", "tail", "right", "edge", "uturn", "shears", "symmetries", "sweep"};

int run_verify(int n, const std::string& prop, int trials, std::uint64_t seed, const std::string& format)
{
    const std::vector<std::string> props = prop == "all" ? kProps : std::vector<std::string>{prop};
    for (const auto& p : props)
        if (std::find(kProps.begin(), kProps.end(), p) == kProps.end())
            throw UsageError("unknown property " + p);
    json results = json::object();
    bool all = true;
    for (const auto& p : props) {
        std::mt19937_64 rng(seed);
        Tally tally;
        for (int trial = 0; trial < trials; ++trial)
            verify_trial(p, n, trial, random_generic_flags(n, 4, rng), tally);
        const bool ok = tally.failures.empty();
        all = all && ok;
        if (format == "text") {
            std::cout << p << ": " << tally.checks << " checks, " << tally.failures.size() << " failures\n";
            for (const auto& f : tally.failures)
                std::cout << "  trial " << f["trial"].get<int>() << ": " << f["detail"].get<std::string>() << "\n";
        }
        results[p] = {{"checks", tally.checks}, {"failures", tally.failures}, {"passed", ok}};
    }
    if (format == "json")
        emit({{"command", "classical verify"},
              {"n", n},
              {"seed", seed},
              {"trials", trials},
              {"results", results},
              {"passed", all}});
    return all ? 0 : 1;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Fock-Goncharov quantum matrices: construction and exact verification"};
    app.require_subcommand(1);

    int n = 0;
    auto add_n = [&](CLI::App* sub) { sub->add_option("--n", n, "matrix size, at least 2")->required()->check(CLI::Range(2, 64)); };

    std::string format = "json";
    auto* quiver = app.add_subcommand("quiver", "FG quiver vertices, aliases and Poisson matrix");
    add_n(quiver);
    quiver->add_option("--format", format)->check(CLI::IsMember({"json", "text"}));

    std::string matrix = "left", edge_kind = "Z";
    bool quantum = false;
    auto* build = app.add_subcommand("build", "left, right or edge matrix");
    add_n(build);
    build->add_option("--matrix", matrix)->check(CLI::IsMember({"left", "right", "edge"}));
    build->add_option("--edge", edge_kind, "edge variables for --matrix edge")->check(CLI::IsMember({"Z", "Z'", "Z''"}));
    build->add_flag("--quantum", quantum, "Weyl-ordered matrix over the quantum torus");
    build->add_option("--format", format)->check(CLI::IsMember({"json", "latex", "text"}));

    std::string which = "left,right", emit_format = "json";
    auto* check = app.add_subcommand("check", "SL_n^q relations and quantum determinant");
    add_n(check);
    check->add_option("--which", which, "comma-separated: left,right");
    check->add_option("--emit-failures", emit_format)->check(CLI::IsMember({"json", "text"}));

    std::string side = "left";
    auto* factorize = app.add_subcommand("factorize", "snake-move factorization of the left or right matrix");
    add_n(factorize);
    factorize->add_option("--side", side)->check(CLI::IsMember({"left", "right"}));
    factorize->add_option("--emit", emit_format)->check(CLI::IsMember({"json", "text"}));

    std::uint64_t seed = 1;
    int trials = 100;
    std::string prop = "all";
    auto* classical = app.add_subcommand("classical", "flag-geometry oracle");
    classical->require_subcommand(1);
    auto* invariants = classical->add_subcommand("invariants", "random flags with their triangle and edge invariants");
    add_n(invariants);
    invariants->add_option("--seed", seed);
    invariants->add_option("--trials", trials)->check(CLI::PositiveNumber);
    invariants->add_option("--format", format)->check(CLI::IsMember({"json", "text"}));
    auto* verify = classical->add_subcommand("verify", "exact checks of the change-of-basis and shear identities");
    add_n(verify);
    std::vector<std::string> prop_choices = kProps;
    prop_choices.push_back("all");
    verify->add_option("--prop", prop)->check(CLI::IsMember(prop_choices));
    verify->add_option("--trials", trials)->check(CLI::PositiveNumber);
    verify->add_option("--seed", seed);
    verify->add_option("--format", format)->check(CLI::IsMember({"json", "text"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*quiver)
            return run_quiver(n, format);
        if (*build)
            return run_build(n, matrix, edge_kind, quantum, format);
        if (*check)
            return run_check(n, which, emit_format);
        if (*factorize)
            return run_factorize(n, side, emit_format);
        if (*invariants)
            return run_invariants(n, seed, trials, format);
        if (*verify)
            return run_verify(n, prop, trials, seed, format);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
