#include "polysum/polyhedron.hpp"

#include "polysum/errors.hpp"
#include "polysum/fixtures.hpp"
#include "polysum/oracle.hpp"
#include "polysum/rng.hpp"

#include <doctest.h>

using namespace polysum;

namespace {

Rational R(long n) { return Rational(n); }

System simplex3() {
    return System(Matrix{{R(1), R(1), R(1)}}, {R(1)}, "simplex");
}

} // namespace

TEST_CASE("simplex vertices are the unit vectors") {
    auto verts = enumerate_vertices(simplex3());
    REQUIRE(verts.size() == 3);
    CHECK(verts[0].coords == Vec{R(0), R(0), R(1)});
    CHECK(verts[1].coords == Vec{R(0), R(1), R(0)});
    CHECK(verts[2].coords == Vec{R(1), R(0), R(0)});
    for (const auto& v : verts) CHECK(v.support.size() == 1);
}

TEST_CASE("slack-form square has four vertices") {
    auto cube = fixtures::fix_cube(2);
    auto verts = enumerate_vertices(cube);
    CHECK(verts.size() == 4);
}

TEST_CASE("infeasible and empty systems") {
    System bad(Matrix{{R(1), R(1)}}, {R(-1)}, "empty");
    CHECK(enumerate_vertices(bad).empty());
    CHECK_THROWS_AS(diameter(bad), ContractError);
}

TEST_CASE("enumeration cap refusal names the cap") {
    System s(Matrix(1, 19), {R(0)}, "big");
    try {
        enumerate_vertices(s);
        FAIL("expected CapError");
    } catch (const CapError& e) {
        CHECK(std::string(e.what()).find("18") != std::string::npos);
        CHECK(e.cap == 18);
    }
}

TEST_CASE("simplex is a complete graph; cubes have diameter n") {
    auto s = simplex3();
    auto verts = enumerate_vertices(s);
    CHECK(are_adjacent(s, verts[0], verts[1]));
    CHECK(are_adjacent(s, verts[1], verts[2]));
    CHECK(diameter(s).value == 1);

    CHECK(diameter(fixtures::fix_cube(2)).value == 2);
    CHECK(diameter(fixtures::fix_cube(3)).value == 3);
}

TEST_CASE("cube antipodes are not adjacent") {
    auto cube = fixtures::fix_cube(3);
    auto g = build_graph(cube);
    // antipodal pair: x = (0,0,0) with s = (1,1,1), and x = (1,1,1)
    Vertex lo(Vec{R(0), R(0), R(0), R(1), R(1), R(1)});
    Vertex hi(Vec{R(1), R(1), R(1), R(0), R(0), R(0)});
    CHECK_FALSE(are_adjacent(cube, lo, hi));
    CHECK(*distance(g, g.index_of(lo), g.index_of(hi)) == 3);
}

TEST_CASE("adjacency rejects identical vertices") {
    auto verts = enumerate_vertices(simplex3());
    CHECK_THROWS_AS(are_adjacent(simplex3(), verts[0], verts[0]), ContractError);
}

TEST_CASE("pyramid fixture: apex degeneracy and diameters") {
    auto pyr = fixtures::fix_pyramid(8);
    auto verts = enumerate_vertices(pyr);
    CHECK(verts.size() == 9);
    CHECK_FALSE(is_simple(pyr));

    // apex support is smaller than the rank
    std::size_t rk = rank(pyr.a);
    bool saw_degenerate = false;
    for (const auto& v : verts)
        if (v.support.size() < rk) {
            saw_degenerate = true;
            // apex: all slacks zero
            for (std::size_t j = 3; j < pyr.n(); ++j) CHECK(v.coords[j].is_zero());
        }
    CHECK(saw_degenerate);

    CHECK(diameter(pyr).value == 2);
    CHECK(diameter(fixtures::fix_pyramid_slice(8)).value == 4);

    CHECK(diameter(fixtures::fix_pyramid(4)).value == 2);
    CHECK(diameter(fixtures::fix_pyramid_slice(4)).value == 2);
}

TEST_CASE("apex is adjacent to every base vertex of the pyramid") {
    auto pyr = fixtures::fix_pyramid(4);
    auto verts = enumerate_vertices(pyr);
    std::size_t rk = rank(pyr.a);
    const Vertex* apex = nullptr;
    for (const auto& v : verts)
        if (v.support.size() < rk) apex = &v;
    REQUIRE(apex != nullptr);
    for (const auto& v : verts)
        if (&v != apex) CHECK(are_adjacent(pyr, *apex, v));
}

TEST_CASE("simplicity detection") {
    CHECK(is_simple(simplex3()));
    CHECK(is_simple(fixtures::fix_cube(3)));
    CHECK_FALSE(is_simple(fixtures::fix_pyramid(4)));
}

TEST_CASE("restrict_face basics") {
    auto s = simplex3();
    CHECK(restrict_face(s, {}).a == s.a);
    auto seg = restrict_face(s, {2});
    CHECK(seg.n() == 2);
    CHECK(enumerate_vertices(seg).size() == 2);
}

TEST_CASE("perturb_to_simple fixes the pyramid and keeps simple systems") {
    auto s = simplex3();
    auto same = perturb_to_simple(s, 5);
    CHECK(same.b == s.b); // eps = 0 accepted first

    auto pyr = fixtures::fix_pyramid(4);
    auto fixed = perturb_to_simple(pyr, 5);
    CHECK(is_simple(fixed));
    CHECK(fixed.a == pyr.a);
    // the degenerate apex splits
    CHECK(enumerate_vertices(fixed).size() >= enumerate_vertices(pyr).size());

    auto oct = perturb_to_simple(fixtures::fix_pyramid(8), 5);
    CHECK(is_simple(oct));
    CHECK(enumerate_vertices(oct).size() >= 8);

    System infeasible(Matrix{{R(1), R(1)}}, {R(-1)}, "none");
    CHECK_THROWS(perturb_to_simple(infeasible, 5));
}

TEST_CASE("perturbation is deterministic in the seed") {
    auto pyr = fixtures::fix_pyramid(4);
    auto a = perturb_to_simple(pyr, 9);
    auto b = perturb_to_simple(pyr, 9);
    CHECK(a.b == b.b);
}

TEST_CASE("distances satisfy the triangle inequality on sampled triples") {
    auto cube = fixtures::fix_cube(3);
    auto g = build_graph(cube);
    SplitMix64 rng(31);
    for (int t = 0; t < 60; ++t) {
        std::size_t i = rng.below(g.verts.size());
        std::size_t j = rng.below(g.verts.size());
        std::size_t k = rng.below(g.verts.size());
        if (i == j || j == k || i == k) continue;
        auto dij = *distance(g, i, j), djk = *distance(g, j, k), dik = *distance(g, i, k);
        CHECK(dik <= dij + djk);
    }
}

TEST_CASE("every enumerated vertex is feasible and basic") {
    SplitMix64 rng(41);
    for (int t = 0; t < 20; ++t) {
        std::size_t m = 1 + rng.below(2), n = 3 + rng.below(3);
        Matrix a(m, n);
        for (std::size_t j = 0; j < n; ++j) a.at(0, j) = Rational(rng.range(1, 3));
        for (std::size_t i = 1; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j) a.at(i, j) = Rational(rng.range(-3, 3));
        Vec x0(n);
        for (auto& e : x0) e = Rational(rng.range(0, 2));
        System s(a, mul(a, x0), "rnd");
        for (const auto& v : enumerate_vertices(s)) {
            CHECK(is_feasible_point(s, v.coords));
            CHECK(is_vertex_point(s, v.coords));
            CHECK(v.support == support_of(v.coords));
        }
    }
}

TEST_CASE("simple polytopes have exactly n - rank neighbors per vertex") {
    for (const System& s : {fixtures::fix_cube(3), simplex3()}) {
        Graph g = build_graph(s);
        std::size_t dim = s.n() - rank(s.a);
        for (std::size_t i = 0; i < g.verts.size(); ++i) CHECK(g.adj[i].size() == dim);
    }
    // degenerate vertices keep at least one neighbor per incident edge
    auto pyr = fixtures::fix_pyramid(8);
    Graph g = build_graph(pyr);
    for (std::size_t i = 0; i < g.verts.size(); ++i) CHECK(g.adj[i].size() >= 1);
}

TEST_CASE("product identity against the oracle") {
    SplitMix64 rng(53);
    for (int t = 0; t < 8; ++t) {
        auto block = [&](std::size_t n) {
            Matrix a(1, n);
            for (std::size_t j = 0; j < n; ++j) a.at(0, j) = Rational(rng.range(1, 3));
            Vec x0(n);
            for (auto& e : x0) e = Rational(rng.range(0, 2));
            return System(a, mul(a, x0), "b");
        };
        System p = block(3), q = block(3 + rng.below(2));
        if (enumerate_vertices(p).empty() || enumerate_vertices(q).empty()) continue;
        auto prod = block_diagonal(p, q);
        CHECK(oracle::diameter(prod).value ==
              oracle::diameter(p).value + oracle::diameter(q).value);
    }
}

TEST_CASE("bfs paths are deterministic and shortest") {
    auto cube = fixtures::fix_cube(3);
    auto g = build_graph(cube);
    for (std::size_t i = 0; i < g.verts.size(); ++i)
        for (std::size_t j = 0; j < g.verts.size(); ++j) {
            auto p1 = bfs_path(g, i, j);
            auto p2 = bfs_path(g, i, j);
            CHECK(p1 == p2);
            CHECK(p1.size() == *distance(g, i, j) + 1);
        }
}
