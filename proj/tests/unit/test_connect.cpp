#include "polysum/errors.hpp"
#include "polysum/fixtures.hpp"
#include "polysum/generator.hpp"
#include "polysum/oracle.hpp"
#include "polysum/twosum.hpp"

#include <doctest.h>

#include <map>

using namespace polysum;

namespace {

Rational R(long n) { return Rational(n); }

TwoSum gen_two_sum(std::uint64_t seed, bool both_cats = false) {
    GenConfig cfg;
    cfg.seed = seed;
    cfg.kind = InstanceKind::TwoSumKind;
    cfg.require_simple = true;
    cfg.require_both_categories = both_cats;
    cfg.n_p = {3, 5};
    cfg.n_q = {3, 5};
    return *generate(cfg).two_sum;
}

} // namespace

TEST_CASE("connect_same_x walks stay within the face diameter") {
    for (std::uint64_t seed : {1u, 2u, 3u, 4u, 5u}) {
        TwoSum t = gen_two_sum(seed);
        TwoSumCtx ctx(t);
        std::map<std::string, std::size_t> diam;
        for (std::size_t i = 0; i < ctx.graph.verts.size(); ++i) {
            if (ctx.cats[i] != Category::XVertex) continue;
            for (std::size_t j = i + 1; j < ctx.graph.verts.size(); ++j) {
                if (ctx.cats[j] != Category::XVertex) continue;
                Vec xu = t.xpart(ctx.graph.verts[i].coords);
                if (!(xu == t.xpart(ctx.graph.verts[j].coords))) continue;
                Walk w = connect_same_x(t, ctx.graph.verts[i], ctx.graph.verts[j]);
                CHECK(oracle::check_walk(ctx.sys, w).ok);
                CHECK(w.verts.front() == ctx.graph.verts[i]);
                CHECK(w.verts.back() == ctx.graph.verts[j]);
                std::string key = dot(t.a_row, xu).str();
                if (!diam.count(key)) diam[key] = oracle::diameter(t.q_of(xu)).value;
                CHECK(w.length() <= diam[key]);
            }
        }
    }
}

TEST_CASE("connect_same_x contract checks") {
    TwoSum t = fixtures::fix1();
    Vertex u(Vec{R(0), R(1), R(1), R(1)});
    Vertex v(Vec{R(1), R(0), R(0), R(2)});
    CHECK_THROWS_AS(connect_same_x(t, u, v), ContractError);
    CHECK(connect_same_x(t, u, u).length() == 0);
}

TEST_CASE("escape_y_vertex reaches an x-vertex within budget") {
    std::size_t instances_with_y = 0;
    for (std::uint64_t seed = 10; seed < 40 && instances_with_y < 5; ++seed) {
        TwoSum t = gen_two_sum(seed, true);
        TwoSumCtx ctx(t);
        if (!ctx.has_category(Category::YVertex)) continue;
        ++instances_with_y;
        std::size_t dqb = oracle::diameter(ctx.qb_sys).value;
        for (std::size_t i = 0; i < ctx.graph.verts.size(); ++i) {
            if (ctx.cats[i] != Category::YVertex) continue;
            EscapeResult esc = escape_y_vertex(ctx, ctx.graph.verts[i]);
            CHECK(oracle::check_walk(ctx.sys, esc.walk).ok);
            CHECK(classify(t, esc.endpoint) == Category::XVertex);
            std::size_t bound = esc.terminated_early
                                    ? dqb
                                    : dqb + 1 +
                                          (esc.same_y_face
                                               ? oracle::diameter(t.p_of(*esc.same_y_face)).value
                                               : 0);
            CHECK(esc.walk.length() <= bound);
        }
    }
    CHECK(instances_with_y == 5);
}

TEST_CASE("escape_y_vertex errors on single-category instances") {
    // P_A fixed to one point makes every vertex an x-vertex.
    TwoSum t;
    t.a_block = Matrix{{R(1), R(0)}, {R(0), R(1)}};
    t.a_row = {R(1), R(1)};
    t.b_row = {R(1), R(0)};
    t.b_block = Matrix{{R(1), R(1)}};
    t.c_a = {R(1), R(1)};
    t.c_b = {R(2)};
    t.c_shared = R(3);
    t.split_ca = t.c_shared;
    t.split_cb = R(0);
    TwoSumCtx ctx(t);
    REQUIRE(!ctx.graph.verts.empty());
    CHECK_THROWS_AS(escape_y_vertex(ctx, ctx.graph.verts[0]), Error);
}

TEST_CASE("connect_in_band: fix1 endpoints and budget sweep") {
    TwoSum t = fixtures::fix1();
    TwoSumCtx ctx(t);
    Vertex u(Vec{R(0), R(1), R(1), R(1)});
    Vertex v(Vec{R(1), R(0), R(0), R(2)});
    Walk w = connect_in_band(ctx, u, v);
    CHECK(w.length() == 1);
    CHECK(w.verts.back() == v);

    for (std::uint64_t seed : {6u, 7u, 8u, 9u, 12u}) {
        TwoSum inst = gen_two_sum(seed);
        TwoSumCtx c2(inst);
        for (std::size_t i = 0; i < c2.graph.verts.size(); ++i) {
            if (c2.cats[i] != Category::XVertex) continue;
            BandInterval band = band_x(inst, inst.ypart(c2.graph.verts[i].coords));
            for (std::size_t j = 0; j < c2.graph.verts.size(); ++j) {
                if (i == j || c2.cats[j] != Category::XVertex) continue;
                Vec xv = inst.xpart(c2.graph.verts[j].coords);
                if (!band.contains(dot(inst.a_row, xv))) continue;
                ConnectTrace tr;
                Walk walk = connect_in_band(c2, c2.graph.verts[i], c2.graph.verts[j], &tr);
                auto chk = oracle::check_walk(c2.sys, walk);
                CHECK(chk.ok);
                CHECK(walk.verts.front() == c2.graph.verts[i]);
                CHECK(walk.verts.back() == c2.graph.verts[j]);
                std::size_t jump_face = 0, same_face = 0;
                for (const auto& y : tr.jump_faces_y)
                    jump_face = std::max(jump_face, oracle::diameter(inst.p_of(y)).value);
                for (const auto& x : tr.same_x_faces_x)
                    same_face = std::max(same_face, oracle::diameter(inst.q_of(x)).value);
                CHECK(walk.length() <= tr.pa_path_len + 2 * jump_face + same_face + 2);
            }
        }
    }
}

TEST_CASE("connect_in_band rejects out-of-band targets") {
    for (std::uint64_t seed = 20; seed < 60; ++seed) {
        TwoSum inst = gen_two_sum(seed);
        TwoSumCtx ctx(inst);
        for (std::size_t i = 0; i < ctx.graph.verts.size(); ++i) {
            if (ctx.cats[i] != Category::XVertex) continue;
            BandInterval band = band_x(inst, inst.ypart(ctx.graph.verts[i].coords));
            for (std::size_t j = 0; j < ctx.graph.verts.size(); ++j) {
                if (i == j || ctx.cats[j] != Category::XVertex) continue;
                Vec xv = inst.xpart(ctx.graph.verts[j].coords);
                if (band.contains(dot(inst.a_row, xv))) continue;
                CHECK_THROWS_AS(
                    connect_in_band(ctx, ctx.graph.verts[i], ctx.graph.verts[j], nullptr),
                    ContractError);
                return;
            }
        }
    }
    FAIL("no out-of-band pair found across seeds");
}

TEST_CASE("connect: identical endpoints give an empty walk") {
    TwoSum t = fixtures::fix1();
    TwoSumCtx ctx(t);
    Walk w = connect(ctx, ctx.graph.verts[0], ctx.graph.verts[0]);
    CHECK(w.length() == 0);
}

TEST_CASE("connect: fix1 pair walks along the only edge") {
    TwoSum t = fixtures::fix1();
    TwoSumCtx ctx(t);
    Walk w = connect(ctx, ctx.graph.verts[0], ctx.graph.verts[1]);
    CHECK(w.length() == 1);
    CHECK(oracle::check_walk(ctx.sys, w).ok);
}

TEST_CASE("connect: all pairs on a batch of simple instances") {
    for (std::uint64_t seed = 100; seed < 120; ++seed) {
        TwoSum inst = gen_two_sum(seed);
        TwoSumCtx ctx(inst);
        TwoSumBounds bounds = instance_bounds(ctx);
        std::size_t cap = bounds.connect_bound();
        for (std::size_t i = 0; i < ctx.graph.verts.size(); ++i)
            for (std::size_t j = i + 1; j < ctx.graph.verts.size(); ++j) {
                Walk w = connect(ctx, ctx.graph.verts[i], ctx.graph.verts[j]);
                auto chk = oracle::check_walk(ctx.sys, w);
                INFO("seed ", seed, " pair ", i, ",", j, ": ", chk.reason);
                CHECK(chk.ok);
                CHECK(w.verts.front() == ctx.graph.verts[i]);
                CHECK(w.verts.back() == ctx.graph.verts[j]);
                CHECK(w.length() <= cap);
            }
    }
}

TEST_CASE("connect budget log uses only the wire vocabulary") {
    TwoSum inst = gen_two_sum(42, true);
    TwoSumCtx ctx(inst);
    for (std::size_t i = 0; i < ctx.graph.verts.size(); ++i)
        for (std::size_t j = i + 1; j < ctx.graph.verts.size(); ++j) {
            Walk w = connect(ctx, ctx.graph.verts[i], ctx.graph.verts[j]);
            for (const auto& tag : w.tags) {
                std::string rule = rule_name(tag.rule);
                CHECK((rule == "lift" || rule == "jump" || rule == "same_x" || rule == "escape"));
                CHECK((tag.lemma == "1.1" || tag.lemma == "2.1" || tag.lemma == "2.2" ||
                       tag.lemma == "2.3"));
            }
        }
}

TEST_CASE("connect_unit on generated unit-column instances") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        GenConfig cfg;
        cfg.seed = seed;
        cfg.kind = InstanceKind::UnitColumn;
        cfg.require_simple = true;
        cfg.require_both_categories = true;
        GeneratedInstance gi = generate(cfg);
        const System& ext = *gi.system;
        std::size_t last = ext.n() - 1;

        std::vector<std::size_t> keep;
        for (std::size_t i = 0; i < ext.m(); ++i)
            if (i != gi.unit_row) keep.push_back(i);
        Vec pb;
        for (auto i : keep) pb.push_back(ext.b[i]);
        System pa(ext.a.select_rows(keep).drop_cols({last}), pb, "P_A");
        System face = restrict_face(ext, {last});
        std::size_t d_pa = oracle::diameter(pa).value;
        std::size_t d_p = oracle::enumerate_points(face).empty()
                              ? 0
                              : oracle::diameter(face).value;

        Graph g = build_graph(ext);
        for (std::size_t i = 0; i < g.verts.size(); ++i)
            for (std::size_t j = i + 1; j < g.verts.size(); ++j) {
                Walk w = connect_unit(ext, g.verts[i], g.verts[j]);
                auto chk = oracle::check_walk(ext, w);
                INFO("seed ", seed, ": ", chk.reason);
                CHECK(chk.ok);
                CHECK(w.verts.front() == g.verts[i]);
                CHECK(w.verts.back() == g.verts[j]);
                CHECK(w.length() <= d_pa + d_p + 2);
            }
    }
}

TEST_CASE("connect_unit: pure-lift paths track the slack") {
    // {x1 + x2 = 2; x1 <= 3} relaxed: the slack never pins the walk.
    System base(Matrix{{R(1), R(1)}, {R(1), R(0)}}, {R(2), R(3)}, "p");
    System ext = append_unit_column(base, 1);
    Graph g = build_graph(ext);
    REQUIRE(g.verts.size() == 2);
    Walk w = connect_unit(ext, g.verts[0], g.verts[1]);
    CHECK(w.length() == 1);
    CHECK(oracle::check_walk(ext, w).ok);
}

TEST_CASE("instance bounds match their oracle counterparts") {
    for (std::uint64_t seed : {200u, 201u, 202u}) {
        TwoSum inst = gen_two_sum(seed);
        TwoSumCtx ctx(inst);
        TwoSumBounds b = instance_bounds(ctx);
        CHECK(b.d_pa == oracle::diameter(ctx.pa_sys).value);
        CHECK(b.d_qb == oracle::diameter(ctx.qb_sys).value);
    }
}
