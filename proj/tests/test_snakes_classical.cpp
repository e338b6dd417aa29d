#include "support.hpp"

#include <catch_amalgamated.hpp>

using namespace fgq;

namespace {

std::vector<ThetaVertex> corners(int n) { return {{n - 1, 0, 0}, {0, n - 1, 0}, {0, 0, n - 1}}; }

int seeds_for(int n) { return n <= 4 ? 100 : 20; }

std::vector<std::pair<Snake, Snake>> adjacent_pairs(int n, Chirality ch, const ThetaVertex& head)
{
    const auto all = enumerate_snakes(n, ch, head);
    std::vector<std::pair<Snake, Snake>> out;
    for (const auto& s : all)
        for (const auto& t : all)
            if (classify_adjacent(s, t).kind != SnakeMove::Kind::not_adjacent)
                out.emplace_back(s, t);
    return out;
}

} // namespace

TEST_CASE("snake enumeration", "[snakes]")
{
    for (int n = 2; n <= 7; ++n)
        for (auto ch : {Chirality::left, Chirality::right})
            for (const auto& h : corners(n)) {
                const auto all = enumerate_snakes(n, ch, h);
                REQUIRE(all.size() == std::size_t(1) << (n - 1));
                for (const auto& s : all) {
                    CHECK(is_valid(s));
                    CHECK(s.head == h);
                }
                for (std::size_t i = 0; i < all.size(); ++i)
                    for (std::size_t j = i + 1; j < all.size(); ++j)
                        CHECK_FALSE(all[i] == all[j]);
            }
    CHECK_THROWS(enumerate_snakes(1, Chirality::left));

    Snake bad = enumerate_snakes(3, Chirality::left).front();
    bad.vertices[0] = {1, 1, 0};
    CHECK_FALSE(is_valid(bad));
    CHECK_THROWS_AS(classify_adjacent(bad, bad), MalformedSnake);
}

TEST_CASE("preferred sequences", "[snakes]")
{
    for (int n = 2; n <= 6; ++n)
        for (auto side : {Side::left, Side::right}) {
            const auto seq = preferred_sequence(n, side);
            REQUIRE(seq.moves.size() == std::size_t(n * (n - 1) / 2));
            REQUIRE(seq.snakes.size() == seq.moves.size() + 1);
            for (int k = 1; k <= n; ++k) {
                CHECK(seq.snakes.front()[k] == ThetaVertex{k - 1, 0, n - k});
                CHECK(seq.snakes.back()[k] ==
                      (side == Side::left ? ThetaVertex{k - 1, n - k, 0} : ThetaVertex{0, k - 1, n - k}));
            }
            for (std::size_t i = 0; i < seq.moves.size(); ++i)
                CHECK(classify_adjacent(seq.snakes[i], seq.snakes[i + 1]).kind == seq.moves[i].kind);
        }

    const auto s2 = preferred_sequence(2, Side::left);
    REQUIRE(s2.moves.size() == 1);
    CHECK(s2.moves[0].kind == SnakeMove::Kind::tail);

    const auto s3 = preferred_sequence(3, Side::left);
    REQUIRE(s3.moves.size() == 3);
    CHECK(s3.moves[0].kind == SnakeMove::Kind::tail);
    CHECK(s3.moves[1].kind == SnakeMove::Kind::diamond);
    CHECK(s3.moves[1].shear_index == 2);
    CHECK(s3.moves[1].vertex == ThetaVertex{1, 1, 1});
    CHECK(s3.moves[2].kind == SnakeMove::Kind::tail);

    const auto s4 = preferred_sequence(4, Side::left);
    std::vector<ThetaVertex> diamonds;
    std::vector<int> shear;
    for (const auto& mv : s4.moves) {
        shear.push_back(mv.shear_index);
        if (mv.kind == SnakeMove::Kind::diamond)
            diamonds.push_back(mv.vertex);
    }
    CHECK(diamonds == std::vector<ThetaVertex>{{1, 1, 2}, {2, 1, 1}, {1, 2, 1}});
    CHECK(shear == std::vector<int>{1, 2, 3, 1, 2, 1});

    // right sweep: same shear pattern, vertices from the right index formula
    const auto r4 = preferred_sequence(4, Side::right);
    shear.clear();
    for (const auto& mv : r4.moves)
        shear.push_back(mv.shear_index);
    CHECK(shear == std::vector<int>{1, 2, 3, 1, 2, 1});
}

TEST_CASE("adjacency classification", "[snakes]")
{
    const auto all = enumerate_snakes(3, Chirality::left);
    for (const auto& s : all)
        CHECK(classify_adjacent(s, s).kind == SnakeMove::Kind::not_adjacent);

    const auto seq = preferred_sequence(3, Side::left);
    const auto mid = classify_adjacent(seq.snakes[1], seq.snakes[2]);
    CHECK(mid.kind == SnakeMove::Kind::diamond);
    CHECK(mid.vertex == ThetaVertex{1, 1, 1});
    const auto tail = classify_adjacent(seq.snakes[0], seq.snakes[1]);
    CHECK(tail.kind == SnakeMove::Kind::tail);
    CHECK(tail.position == 1);
    // moves are directed
    CHECK(classify_adjacent(seq.snakes[1], seq.snakes[0]).kind == SnakeMove::Kind::not_adjacent);

    // every snake but the top has an outgoing move
    for (int n = 2; n <= 5; ++n)
        for (auto ch : {Chirality::left, Chirality::right}) {
            const auto snakes = enumerate_snakes(n, ch);
            std::size_t sinks = 0;
            for (const auto& s : snakes) {
                bool out = false;
                for (const auto& t : snakes)
                    out = out || classify_adjacent(s, t).kind != SnakeMove::Kind::not_adjacent;
                sinks += !out;
            }
            CHECK(sinks == 1);
        }
}

TEST_CASE("projective bases", "[snakes]")
{
    std::mt19937_64 rng(101);
    for (int n = 2; n <= 5; ++n)
        for (int trial = 0; trial < 10; ++trial) {
            const auto fs = random_generic_flags(n, 3, rng);
            const auto &E = fs[0], &F = fs[1], &G = fs[2];
            for (auto ch : {Chirality::left, Chirality::right})
                for (const auto& h : corners(n))
                    for (const auto& s : enumerate_snakes(n, ch, h)) {
                        const auto u = head_line(E, F, G, s);
                        const auto U = projective_basis(E, F, G, s, u);
                        // each u_k annihilates the flag pieces of its vertex, read in the head's frame
                        const auto fr = detail::canonical_flags(E, F, G, s.head);
                        for (int k = 1; k <= n; ++k) {
                            const auto v = detail::to_canonical(s[k], s.head);
                            const auto& c = U.covectors[k - 1];
                            CHECK_FALSE(is_zero_vector(c));
                            CHECK(is_zero_vector(row_times(c, fr.E.subspace(v.a))));
                            CHECK(is_zero_vector(row_times(c, fr.F.subspace(v.b))));
                            CHECK(is_zero_vector(row_times(c, fr.G.subspace(v.c))));
                        }
                        const Rational lambda(-3, 2);
                        const auto V = projective_basis(E, F, G, s, scaled(u, lambda));
                        for (int k = 0; k < n; ++k)
                            CHECK(V.covectors[k] == scaled(U.covectors[k], lambda));
                        CHECK(change_of_basis(U, U) == rational_identity(n));
                    }
            CHECK_THROWS(projective_basis(E, F, G, enumerate_snakes(n, Chirality::left).front(),
                                          RationalVector(n, Rational(0))));
        }
}

TEST_CASE("change of basis composes", "[snakes]")
{
    std::mt19937_64 rng(103);
    for (int trial = 0; trial < 20; ++trial) {
        const auto fs = random_generic_flags(4, 3, rng);
        const auto snakes = enumerate_snakes(4, Chirality::left);
        const auto u = head_line(fs[0], fs[1], fs[2], snakes[0]);
        std::vector<ProjectiveBasis> B;
        for (int i = 0; i < 3; ++i)
            B.push_back(projective_basis(fs[0], fs[1], fs[2], snakes[(trial + 3 * i) % snakes.size()], u));
        CHECK(change_of_basis(B[0], B[2]) == change_of_basis(B[0], B[1]) * change_of_basis(B[1], B[2]));
    }
}

TEST_CASE("diamond and tail moves match their closed forms", "[snakes][oracle]")
{
    for (int n = 2; n <= 5; ++n) {
        std::mt19937_64 rng(1000 + n);
        std::map<std::pair<Chirality, ThetaVertex>, std::vector<std::pair<Snake, Snake>>> pairs;
        for (auto ch : {Chirality::left, Chirality::right})
            for (const auto& h : corners(n))
                pairs[{ch, h}] = adjacent_pairs(n, ch, h);
        for (int seed = 0; seed < seeds_for(n); ++seed) {
            const auto fs = random_generic_flags(n, 3, rng);
            for (const auto& [key, list] : pairs)
                for (const auto& [s, t] : list) {
                    const auto r = verify_move(fs[0], fs[1], fs[2], s, t);
                    INFO(r.detail);
                    REQUIRE(r.passed);
                }
        }
    }
}

TEST_CASE("edge moves and U-turns", "[snakes][oracle]")
{
    for (int n = 2; n <= 5; ++n) {
        std::mt19937_64 rng(2000 + n);
        for (int seed = 0; seed < seeds_for(n); ++seed) {
            const auto fs = random_generic_flags(n, 4, rng);
            REQUIRE(verify_edge_move(fs[0], fs[1], fs[2], fs[3]).passed);
            REQUIRE(verify_uturn(fs[0], fs[2], fs[1]).passed);
        }
    }
}

TEST_CASE("shear cycles", "[snakes][oracle]")
{
    for (int n = 2; n <= 5; ++n) {
        std::mt19937_64 rng(3000 + n);
        for (int seed = 0; seed < seeds_for(n); ++seed) {
            const auto fs = random_generic_flags(n, 4, rng);
            const auto &E = fs[0], &F = fs[1], &G = fs[2], &Fp = fs[3];
            for (const auto& v : theta_interior(n)) {
                const auto p0 = vertex_line(E, F, G, {v.a - 1, v.b, v.c});
                const auto tau = triangle_invariant(E, F, G, v);
                REQUIRE(shear_cycle_triangle(E, F, G, v, Direction::ccw, p0) == tau);
                REQUIRE(shear_cycle_triangle(E, F, G, v, Direction::cw, scaled(p0, 5)) == 1 / tau);
            }
            // the edge EG is shared by (E,F',G) and (G,F,E)
            for (int j = 1; j < n; ++j) {
                const auto p0 = vertex_line(E, G, F, {j - 1, n - j, 0});
                const auto eps = edge_invariant(E, G, F, Fp, j);
                REQUIRE(shear_cycle_edge(E, G, F, Fp, j, Direction::ccw, p0) == -eps);
                REQUIRE(shear_cycle_edge(E, G, F, Fp, j, Direction::cw, p0) == -1 / eps);
            }
        }
    }
    const auto fs = random_generic_flags(3, 3, 5);
    CHECK_THROWS(shear_cycle_triangle(fs[0], fs[1], fs[2], {1, 1, 1}, Direction::ccw,
                                      vertex_line(fs[0], fs[1], fs[2], {1, 0, 1})));
}

TEST_CASE("path independence over every snake sequence", "[snakes][oracle]")
{
    for (int n = 2; n <= 5; ++n)
        for (auto side : {Side::left, Side::right}) {
            const auto pref = preferred_sequence(n, side);
            const auto all = all_sequences(pref.snakes.front(), pref.snakes.back());
            INFO("n = " << n << ", " << to_string(side) << ", " << all.size() << " sequences");
            CHECK(all.size() >= 1);
            const int trials = n <= 4 ? 10 : 2;
            std::mt19937_64 rng(4000 + n);
            for (int trial = 0; trial < trials; ++trial) {
                const auto fs = random_generic_flags(n, 3, rng);
                const auto &E = fs[0], &F = fs[1], &G = fs[2];
                const auto u = head_line(E, F, G, pref.snakes.front());
                const auto B = change_of_basis(projective_basis(E, F, G, pref.snakes.front(), u),
                                               projective_basis(E, F, G, pref.snakes.back(), u));
                CHECK(sequence_matrix(E, F, G, pref) == B);
                for (const auto& seq : all)
                    REQUIRE(sequence_matrix(E, F, G, seq) == B);
            }
        }
    // moves act like particles entering at position 1 and hopping up without overtaking
    const auto p3 = preferred_sequence(3, Side::left), p4 = preferred_sequence(4, Side::left);
    CHECK(all_sequences(p3.snakes.front(), p3.snakes.back()).size() == 1);
    CHECK(all_sequences(p4.snakes.front(), p4.snakes.back()).size() == 2);
}

TEST_CASE("normalized sweep equals the sweep matrix", "[snakes][oracle]")
{
    for (int n = 2; n <= 5; ++n) {
        std::mt19937_64 rng(5000 + n);
        for (int trial = 0; trial < (n <= 4 ? 30 : 10); ++trial) {
            const auto fs = random_generic_flags(n, 3, rng);
            for (auto side : {Side::left, Side::right}) {
                const auto r = verify_normalized_sweep(fs[0], fs[1], fs[2], side);
                INFO(r.detail);
                REQUIRE(r.passed);
            }
        }
    }
}
