#include "polysum/twosum.hpp"

#include "polysum/errors.hpp"
#include "polysum/fixtures.hpp"
#include "polysum/oracle.hpp"

#include <doctest.h>

using namespace polysum;

namespace {

Rational R(long n) { return Rational(n); }

} // namespace

TEST_CASE("matrix 2-sum: direct substitution") {
    Matrix left{{R(2), R(3)}};              // A = [2], a = (3)
    Matrix right{{R(1), R(1)}, {R(0), R(1)}}; // b = (1,1), B = [0 1]
    auto res = matrix_two_sum(left, right);
    CHECK_FALSE(res.zero_coupling);
    CHECK(res.m == Matrix{{R(2), R(3), R(3)}, {R(0), R(0), R(1)}});
}

TEST_CASE("matrix 2-sum: zero coupling is flagged, not rejected") {
    Matrix left{{R(2), R(0)}};
    Matrix right{{R(1), R(1)}, {R(0), R(1)}};
    auto res = matrix_two_sum(left, right);
    CHECK(res.zero_coupling);
    CHECK(res.m == Matrix{{R(2), R(0), R(0)}, {R(0), R(0), R(1)}});
}

TEST_CASE("matrix 2-sum of glued incidence matrices") {
    auto [left, right] = fixtures::fix_g1g2();
    auto res = matrix_two_sum(left, right);
    CHECK_FALSE(res.zero_coupling);
    CHECK(res.m == fixtures::fix_g1g2_expected());
}

TEST_CASE("poly 2-sum produces the reduced segment instance") {
    auto [p, q] = fixtures::fix1_inputs();
    TwoSum t = poly_two_sum(p, q);
    TwoSum expect = fixtures::fix1();
    CHECK(t.a_block == expect.a_block);
    CHECK(t.a_row == expect.a_row);
    CHECK(t.b_row == expect.b_row);
    CHECK(t.b_block == expect.b_block);
    CHECK(t.c_a == expect.c_a);
    CHECK(t.c_shared == expect.c_shared);
    CHECK(t.c_b == expect.c_b);
    CHECK(t.split_ca == expect.split_ca);
    CHECK(t.split_cb == expect.split_cb);
}

TEST_CASE("poly 2-sum rejects zero distinguished data") {
    System p(Matrix{{R(1), R(0)}}, {R(1)}, "p");
    System q(Matrix{{R(1), R(0)}, {R(1), R(1)}}, {R(0), R(2)}, "q");
    CHECK_THROWS_AS(poly_two_sum(p, q), ContractError);
    System p2(Matrix{{R(1), R(1)}}, {R(1)}, "p");
    System q2(Matrix{{R(0), R(0)}, {R(1), R(1)}}, {R(0), R(2)}, "q");
    CHECK_THROWS_AS(poly_two_sum(p2, q2), ContractError);
}

TEST_CASE("feasibility rule: (x,0) in P and y in Q give (x,y) in the sum") {
    auto [p, q] = fixtures::fix1_inputs();
    TwoSum t = poly_two_sum(p, q);
    System sum = t.assembled();
    // (1,0,0) in P with the distinguished coordinate 0, and (0,2) in Q
    CHECK(is_feasible_point(p, {R(1), R(0), R(0)}));
    CHECK(is_feasible_point(q, {R(0), R(2)}));
    CHECK(is_feasible_point(sum, {R(1), R(0), R(0), R(2)}));
}

TEST_CASE("fix1 has exactly the two expected vertices") {
    System sum = fixtures::fix1().assembled();
    auto verts = enumerate_vertices(sum);
    REQUIRE(verts.size() == 2);
    CHECK(verts[0].coords == Vec{R(0), R(1), R(1), R(1)});
    CHECK(verts[1].coords == Vec{R(1), R(0), R(0), R(2)});
    CHECK(are_adjacent(sum, verts[0], verts[1]));

    // support (1,0,0,2) has size 2 < rank 3: the instance is degenerate.
    CHECK(rank(sum.a) == 3);
    CHECK_FALSE(is_simple(sum));
}

TEST_CASE("decompose reproduces the stored split and round-trips") {
    TwoSum t = fixtures::fix1();
    auto [p, q] = decompose(t);
    // P = {x1+x2=1; x1+s=1}, Q = {y1=0; y1+y2=2}
    CHECK(p.a == Matrix{{R(1), R(1), R(0)}, {R(1), R(0), R(1)}});
    CHECK(p.b == Vec{R(1), R(1)});
    CHECK(q.a == Matrix{{R(1), R(0)}, {R(1), R(1)}});
    CHECK(q.b == Vec{R(0), R(2)});

    TwoSum back = poly_two_sum(p, q);
    CHECK(back.a_block == t.a_block);
    CHECK(back.a_row == t.a_row);
    CHECK(back.b_row == t.b_row);
    CHECK(back.b_block == t.b_block);
    CHECK(back.c_a == t.c_a);
    CHECK(back.c_shared == t.c_shared);
    CHECK(back.c_b == t.c_b);
    CHECK(back.split_ca == t.split_ca);
    CHECK(back.split_cb == t.split_cb);
}

TEST_CASE("split variation changes summands but not the sum") {
    TwoSum t = fixtures::fix1();
    TwoSum other = t;
    other.split_ca = Rational(1, 2);
    other.split_cb = Rational(1, 2);
    auto [p1, q1] = decompose(t);
    auto [p2, q2] = decompose(other);
    CHECK_FALSE(p1.b == p2.b);
    TwoSum back = poly_two_sum(p2, q2);
    CHECK(back.c_shared == t.c_shared);
    CHECK(back.assembled().b == t.assembled().b);
}

TEST_CASE("views: P_A, Q_B and the adjusted systems") {
    TwoSum t = fixtures::fix1();
    System pa = t.pa();
    CHECK(pa.a == Matrix{{R(1), R(1)}});
    CHECK(enumerate_vertices(pa).size() == 2);
    System qb = t.qb();
    CHECK(qb.a == Matrix{{R(1), R(1)}});
    CHECK(qb.b == Vec{R(2)});

    // any feasible (x,y): x in P(y) and y in Q(x)
    System sum = t.assembled();
    for (const auto& v : enumerate_vertices(sum)) {
        Vec x = t.xpart(v.coords), y = t.ypart(v.coords);
        CHECK(is_feasible_point(t.p_of(y), x));
        CHECK(is_feasible_point(t.q_of(x), y));
    }

    // Q((0,1)) = {y1 = 1; y1 + y2 = 2} has the unique point (1,1)
    System qx = t.q_of({R(0), R(1)});
    auto qverts = enumerate_vertices(qx);
    REQUIRE(qverts.size() == 1);
    CHECK(qverts[0].coords == Vec{R(1), R(1)});
}

TEST_CASE("classification of the fix1 vertices") {
    TwoSum t = fixtures::fix1();
    CHECK(classify(t, Vertex(Vec{R(0), R(1), R(1), R(1)})) == Category::XVertex);
    // both projections are vertices; the x test fires first
    CHECK(classify(t, Vertex(Vec{R(1), R(0), R(0), R(2)})) == Category::XVertex);
}

TEST_CASE("single-point P_A makes every vertex an x-vertex") {
    TwoSum t;
    t.a_block = Matrix{{R(1), R(0)}, {R(0), R(1)}};
    t.a_row = {R(1), R(1)};
    t.b_row = {R(1), R(0)};
    t.b_block = Matrix{{R(1), R(1)}};
    t.c_a = {R(1), R(1)};
    t.c_b = {R(2)};
    t.c_shared = R(2) + R(1); // a.x0 = 2, pick y0 = (1,1): b.y0 = 1
    t.split_ca = t.c_shared;
    t.split_cb = R(0);
    t.validate();
    System sum = t.assembled();
    for (const auto& v : enumerate_vertices(sum))
        CHECK(classify(t, v) == Category::XVertex);
}

TEST_CASE("band of the fix1 edge") {
    TwoSum t = fixtures::fix1();
    BandInterval band = band_x(t, {R(1), R(1)});
    CHECK(band.lo == R(-1));
    CHECK(band.hi == R(1));
    CHECK(band.support == std::vector<std::size_t>{0, 1});
    // endpoints attained by feasible points of the restricted face
    CHECK(is_feasible_point(t.qb(), band.z_at_lo));
    CHECK(is_feasible_point(t.qb(), band.z_at_hi));
    CHECK(t.c_shared - dot(t.b_row, band.z_at_lo) == band.lo);
    CHECK(t.c_shared - dot(t.b_row, band.z_at_hi) == band.hi);
}

TEST_CASE("single-column support gives a point band") {
    TwoSum t = fixtures::fix1();
    BandInterval band = band_x(t, {R(0), R(2)});
    CHECK(band.lo == band.hi);
    CHECK(band.lo == R(1)); // c - b.(0,2) = 1 - 0
}

TEST_CASE("band rejects infeasible y") {
    TwoSum t = fixtures::fix1();
    CHECK_THROWS_AS(band_x(t, {R(1), R(2)}), ContractError);
}

TEST_CASE("lift_step on fix1: the full edge lifts") {
    TwoSum t = fixtures::fix1();
    Vertex at(Vec{R(0), R(1), R(1), R(1)});
    LiftOutcome out = lift_step(t, at, {R(1), R(0)});
    CHECK(out.lifted());
    CHECK(out.vertex.coords == Vec{R(1), R(0), R(0), R(2)});
}

TEST_CASE("lift_step rejects bad targets") {
    TwoSum t = fixtures::fix1();
    Vertex at(Vec{R(0), R(1), R(1), R(1)});
    CHECK_THROWS_AS(lift_step(t, at, {R(0), R(1)}), ContractError); // not adjacent (same point)
    CHECK_THROWS_AS(lift_step(t, at, {R(2), R(0)}), ContractError); // not a P_A vertex
}

TEST_CASE("lift_walk over fix1") {
    TwoSum t = fixtures::fix1();
    Vertex at(Vec{R(0), R(1), R(1), R(1)});
    SUBCASE("empty path") {
        auto res = lift_walk(t, at, {});
        CHECK(res.completed);
        CHECK(res.walk.length() == 0);
    }
    SUBCASE("full path") {
        auto res = lift_walk(t, at, {{R(0), R(1)}, {R(1), R(0)}});
        CHECK(res.completed);
        CHECK(res.walk.length() == 1);
        CHECK(res.walk.verts.back().coords == Vec{R(1), R(0), R(0), R(2)});
    }
    SUBCASE("path must start at the origin") {
        CHECK_THROWS_AS(lift_walk(t, at, {{R(1), R(0)}, {R(0), R(1)}}), ContractError);
    }
}

TEST_CASE("terminated lift lands on the band boundary") {
    // P_A a segment with a length-2 skeleton so that a lift can fail:
    // A x = (x1 + x2 + x3 = 2), a = (1, 0, 0); Q_B = {y1 + y2 = 2}, b = (1, 0).
    TwoSum t;
    t.a_block = Matrix{{R(1), R(1), R(1)}};
    t.a_row = {R(2), R(0), R(1)};
    t.b_row = {R(1), R(0)};
    t.b_block = Matrix{{R(1), R(1)}};
    t.c_a = {R(2)};
    t.c_b = {R(2)};
    t.c_shared = R(2); // x0 = (0,2,0), y0 = (1,1): a.x0 = 0 + b.y0 = 1 -> pick c = 1? keep 2: x0=(0,1,1): A x0 = 2, a.x0 = 1; y0=(1,1): 1+1 = 2
    t.split_ca = t.c_shared;
    t.split_cb = R(0);
    t.validate();
    System sum = t.assembled();
    auto verts = enumerate_vertices(sum);
    REQUIRE(!verts.empty());

    // find an x-vertex with a P_A neighbor whose shared value escapes the band
    bool saw_termination = false;
    Graph pa_graph = build_graph(t.pa());
    for (const auto& v : verts) {
        if (classify(t, v) != Category::XVertex) continue;
        Vec x = t.xpart(v.coords);
        BandInterval band = band_x(t, t.ypart(v.coords));
        std::size_t xi = pa_graph.index_of(Vertex(x));
        for (auto nb : pa_graph.adj[xi]) {
            Vec tx = pa_graph.verts[nb].coords;
            LiftOutcome out = lift_step(t, v, tx);
            if (out.lifted()) continue;
            saw_termination = true;
            Vec xc = t.xpart(out.vertex.coords);
            Vec yt = t.ypart(out.vertex.coords);
            CHECK((yt == band.z_at_lo || yt == band.z_at_hi));
            CHECK(dot(t.a_row, xc) + dot(t.b_row, yt) == t.c_shared);
            CHECK(oracle::vertex_point(sum, out.vertex.coords));
        }
    }
    CHECK(saw_termination);
}

TEST_CASE("appending a unit column relaxes one equality") {
    System p(Matrix{{R(1), R(1)}}, {R(1)}, "seg");
    System ext = append_unit_column(p, 0);
    CHECK(ext.n() == 3);
    CHECK(ext.a.at(0, 2) == R(1));
    // restricting the new column to zero recovers p
    CHECK(restrict_face(ext, {2}).a == p.a);

    // cube fixture built by repeated appends matches [I | I]
    auto cube = fixtures::fix_cube(2);
    CHECK(cube.a == Matrix::identity(2).hstack(Matrix::identity(2)));
}

TEST_CASE("prepending form: [1 1] sum with M") {
    // 2-sum of [1 1] with any matrix M prepends a unit column to M.
    Matrix left{{R(1), R(1)}};
    Matrix right{{R(1), R(2), R(3)}, {R(4), R(5), R(6)}};
    auto res = matrix_two_sum(left, right);
    CHECK(res.m.rows() == 2);
    CHECK(res.m.cols() == 4);
    CHECK(res.m.at(0, 0) == R(1));
    CHECK(res.m.at(1, 0) == R(0));
    // remaining columns are [b; B] = the right matrix itself
    for (std::size_t j = 0; j < 3; ++j) {
        CHECK(res.m.at(0, j + 1) == right.at(0, j));
        CHECK(res.m.at(1, j + 1) == right.at(1, j));
    }
}

TEST_CASE("mirrored instance swaps the sides consistently") {
    TwoSum t = fixtures::fix1();
    TwoSum m = t.mirrored();
    System msum = m.assembled();
    for (const auto& v : enumerate_vertices(t.assembled()))
        CHECK(is_feasible_point(msum, t.mirror_point(v.coords)));
    CHECK(enumerate_vertices(msum).size() == 2);
}
