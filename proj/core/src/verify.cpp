#include "polysum/verify.hpp"

#include "polysum/errors.hpp"
#include "polysum/oracle.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

namespace polysum {

namespace {

// Deterministic decimal string of len/bound with 4 digits.
std::string ratio_string(std::size_t len, std::size_t bound) {
    if (bound == 0) return len == 0 ? "0.0000" : "inf";
    unsigned long long scaled = 10000ULL * len / bound;
    std::ostringstream os;
    os << scaled / 10000 << '.';
    unsigned long long frac = scaled % 10000;
    os << frac / 1000 << (frac / 100) % 10 << (frac / 10) % 10 << frac % 10;
    return os.str();
}

bool ratio_less(const std::string& a, const std::string& b) {
    if (a == b) return false;
    if (a == "inf") return false;
    if (b == "inf") return true;
    auto cut = [](const std::string& s) {
        auto dot = s.find('.');
        return std::pair<long long, long long>{std::stoll(s.substr(0, dot)),
                                               std::stoll(s.substr(dot + 1))};
    };
    return cut(a) < cut(b);
}

Json walk_witness(const Json& instance, const Vertex& u, const Vertex& v, const Walk& w,
                  const std::string& reason) {
    return Json{{"instance", instance},
                {"from", to_json(u.coords)},
                {"to", to_json(v.coords)},
                {"walk", to_json(w)},
                {"reason", reason}};
}

// conv(x, x') membership: consistent interpolation parameter in [0, 1].
bool on_segment(const Vec& a, const Vec& b, const Vec& p) {
    std::optional<Rational> t;
    for (std::size_t i = 0; i < a.size(); ++i) {
        Rational d = b[i] - a[i];
        if (d.is_zero()) {
            if (p[i] != a[i]) return false;
            continue;
        }
        Rational ti = (p[i] - a[i]) / d;
        if (t && *t != ti) return false;
        t = ti;
    }
    if (!t) return p == a;
    return Rational(0) <= *t && *t <= Rational(1);
}

} // namespace

void CheckRecord::observe(std::size_t len, std::size_t bound) {
    std::string r = ratio_string(len, bound);
    if (ratio.empty() || ratio_less(ratio, r)) {
        ratio = r;
        max_len = len;
        max_bound = bound;
    }
}

bool Report::all_pass() const {
    return std::all_of(records.begin(), records.end(),
                       [](const CheckRecord& r) { return r.pass; });
}

bool check_selected(const std::vector<std::string>& sel, const std::string& id) {
    for (const auto& s : sel)
        if (s == "all" || s == id) return true;
    return false;
}

namespace {

// ---- two-sum suites -------------------------------------------------

struct OracleView {
    std::vector<Vec> verts;
    bool adj(const Vec& u, const Vec& v, const System& s) const {
        return oracle::adjacent(s, u, v);
    }
};

std::size_t oracle_diam(const System& s, std::size_t cap) {
    auto t = oracle::diameter(s, cap);
    if (!t.connected) throw IntegrityError("oracle: disconnected skeleton");
    return t.value;
}

void run_lift_suite(const TwoSumCtx& ctx, const Json& ijson, std::size_t cap,
                    CheckRecord* iff_rec, CheckRecord* shape_rec) {
    const TwoSum& T = ctx.inst;
    auto opoints = oracle::enumerate_points(ctx.sys, cap);
    for (std::size_t vi = 0; vi < ctx.graph.verts.size(); ++vi) {
        if (ctx.cats[vi] != Category::XVertex) continue;
        const Vertex& v = ctx.graph.verts[vi];
        Vec x = T.xpart(v.coords), y = T.ypart(v.coords);
        auto ys = support_of(y);
        BandInterval band = band_x(T, y);
        std::size_t xi = ctx.pa_graph.index_of(Vertex(x));
        for (auto nb : ctx.pa_graph.adj[xi]) {
            const Vec& tx = ctx.pa_graph.verts[nb].coords;
            LiftOutcome out = lift_step(T, v, tx);
            bool in_band = band.contains(dot(T.a_row, tx));
            bool oracle_adj = false;
            for (const auto& w : opoints) {
                if (!(T.xpart(w) == tx)) continue;
                auto ws = support_of(T.ypart(w));
                if (!std::includes(ys.begin(), ys.end(), ws.begin(), ws.end())) continue;
                if (oracle::adjacent(ctx.sys, v.coords, w)) {
                    oracle_adj = true;
                    break;
                }
            }
            if (iff_rec) {
                ++iff_rec->cases;
                if (out.lifted() != in_band || out.lifted() != oracle_adj)
                    iff_rec->fail(Json{{"instance", ijson},
                                       {"at", to_json(v.coords)},
                                       {"target", to_json(tx)},
                                       {"lifted", out.lifted()},
                                       {"in_band", in_band},
                                       {"oracle_adjacent", oracle_adj}},
                                  "lift/band/adjacency disagreement");
                if (out.lifted() && !oracle::vertex_point(ctx.sys, out.vertex.coords))
                    iff_rec->fail(Json{{"instance", ijson},
                                       {"at", to_json(v.coords)},
                                       {"target", to_json(tx)},
                                       {"lifted_point", to_json(out.vertex.coords)}},
                                  "lifted point is not a vertex");
            }
            if (shape_rec && !out.lifted()) {
                ++shape_rec->cases;
                Vec xc = T.xpart(out.vertex.coords);
                Vec yt = T.ypart(out.vertex.coords);
                bool seg = on_segment(x, tx, xc);
                bool endpoint = yt == band.z_at_lo || yt == band.z_at_hi;
                bool balance = dot(T.a_row, xc) + dot(T.b_row, yt) == T.c_shared;
                bool vert = oracle::vertex_point(ctx.sys, out.vertex.coords);
                if (!(seg && endpoint && balance && vert))
                    shape_rec->fail(Json{{"instance", ijson},
                                         {"at", to_json(v.coords)},
                                         {"target", to_json(tx)},
                                         {"terminal", to_json(out.vertex.coords)},
                                         {"on_segment", seg},
                                         {"edge_endpoint", endpoint},
                                         {"shared_balance", balance},
                                         {"is_vertex", vert}},
                                    "termination shape violated");
            }
        }
    }
}

void run_same_x_suite(const TwoSumCtx& ctx, const Json& ijson, std::size_t cap,
                      CheckRecord& rec) {
    const TwoSum& T = ctx.inst;
    std::map<std::string, std::size_t> qx_diam;
    for (std::size_t i = 0; i < ctx.graph.verts.size(); ++i) {
        if (ctx.cats[i] != Category::XVertex) continue;
        for (std::size_t j = i + 1; j < ctx.graph.verts.size(); ++j) {
            if (ctx.cats[j] != Category::XVertex) continue;
            const Vertex& u = ctx.graph.verts[i];
            const Vertex& v = ctx.graph.verts[j];
            Vec xu = T.xpart(u.coords);
            if (!(xu == T.xpart(v.coords))) continue;
            ++rec.cases;
            Walk w = connect_same_x(T, u, v, cap);
            auto chk = oracle::check_walk(ctx.sys, w);
            if (!chk.ok || !(w.verts.front() == u) || !(w.verts.back() == v)) {
                rec.fail(walk_witness(ijson, u, v, w, chk.reason), "invalid same-x walk");
                continue;
            }
            std::string key = dot(T.a_row, xu).str();
            if (!qx_diam.count(key)) qx_diam[key] = oracle_diam(T.q_of(xu), cap);
            std::size_t bound = qx_diam[key];
            rec.observe(w.length(), bound);
            if (w.length() > bound)
                rec.fail(walk_witness(ijson, u, v, w, "length exceeds face diameter"),
                         "same-x budget exceeded");
        }
    }
}

void run_escape_suite(const TwoSumCtx& ctx, const Json& ijson, std::size_t cap,
                      CheckRecord& rec) {
    const TwoSum& T = ctx.inst;
    if (!ctx.has_category(Category::XVertex) || !ctx.has_category(Category::YVertex)) {
        rec.detail = "single-category instance; vacuous";
        return;
    }
    std::size_t dqb = oracle_diam(ctx.qb_sys, cap);
    for (std::size_t i = 0; i < ctx.graph.verts.size(); ++i) {
        if (ctx.cats[i] != Category::YVertex) continue;
        const Vertex& u = ctx.graph.verts[i];
        ++rec.cases;
        EscapeResult esc = escape_y_vertex(ctx, u);
        auto chk = oracle::check_walk(ctx.sys, esc.walk);
        bool ends_x = classify(T, esc.endpoint) == Category::XVertex;
        if (!chk.ok || !(esc.walk.verts.front() == u) ||
            !(esc.walk.verts.back() == esc.endpoint) || !ends_x) {
            rec.fail(walk_witness(ijson, u, esc.endpoint, esc.walk, chk.reason),
                     "invalid escape walk");
            continue;
        }
        std::size_t bound;
        if (esc.terminated_early) {
            bound = dqb;
        } else {
            std::size_t face = esc.same_y_face ? oracle_diam(T.p_of(*esc.same_y_face), cap) : 0;
            bound = dqb + face + 1;
        }
        rec.observe(esc.walk.length(), bound);
        if (esc.walk.length() > bound)
            rec.fail(walk_witness(ijson, u, esc.endpoint, esc.walk, "budget exceeded"),
                     "escape budget exceeded");
    }
}

void run_in_band_suite(const TwoSumCtx& ctx, const Json& ijson, std::size_t cap,
                       CheckRecord& rec) {
    const TwoSum& T = ctx.inst;
    for (std::size_t i = 0; i < ctx.graph.verts.size(); ++i) {
        if (ctx.cats[i] != Category::XVertex) continue;
        const Vertex& u = ctx.graph.verts[i];
        BandInterval bu = band_x(T, T.ypart(u.coords));
        for (std::size_t j = 0; j < ctx.graph.verts.size(); ++j) {
            if (i == j || ctx.cats[j] != Category::XVertex) continue;
            const Vertex& v = ctx.graph.verts[j];
            if (!bu.contains(dot(T.a_row, T.xpart(v.coords)))) continue;
            ++rec.cases;
            ConnectTrace tr;
            Walk w = connect_in_band(ctx, u, v, &tr);
            auto chk = oracle::check_walk(ctx.sys, w);
            if (!chk.ok || !(w.verts.front() == u) || !(w.verts.back() == v)) {
                rec.fail(walk_witness(ijson, u, v, w, chk.reason), "invalid in-band walk");
                continue;
            }
            std::size_t jump_face = 0, samex_face = 0;
            for (const auto& y : tr.jump_faces_y)
                jump_face = std::max(jump_face, oracle_diam(T.p_of(y), cap));
            for (const auto& x : tr.same_x_faces_x)
                samex_face = std::max(samex_face, oracle_diam(T.q_of(x), cap));
            std::size_t bound = tr.pa_path_len + 2 * jump_face + samex_face + 2;
            rec.observe(w.length(), bound);
            if (w.length() > bound)
                rec.fail(walk_witness(ijson, u, v, w, "budget exceeded"),
                         "in-band budget exceeded");
        }
    }
}

struct OracleBounds {
    std::size_t d_pa = 0, d_qb = 0, d_abar = 0, d_bbar = 0;

    std::size_t theorem_bound() const {
        return d_pa * (1 + d_abar) + d_qb * (1 + d_bbar) +
               std::min(d_abar + d_qb + 1, d_pa + d_bbar + 1);
    }
};

OracleBounds oracle_bounds(const TwoSumCtx& ctx, std::size_t cap) {
    const TwoSum& T = ctx.inst;
    OracleBounds b;
    b.d_pa = oracle_diam(ctx.pa_sys, cap);
    b.d_qb = oracle_diam(ctx.qb_sys, cap);
    std::map<std::string, std::size_t> seen_y, seen_x;
    for (const auto& v : ctx.graph.verts) {
        Vec y = T.ypart(v.coords);
        std::string ky = dot(T.b_row, y).str();
        if (!seen_y.count(ky)) seen_y[ky] = oracle_diam(T.p_of(y), cap);
        Vec x = T.xpart(v.coords);
        std::string kx = dot(T.a_row, x).str();
        if (!seen_x.count(kx)) seen_x[kx] = oracle_diam(T.q_of(x), cap);
    }
    for (auto& [_, d] : seen_y) b.d_abar = std::max(b.d_abar, d);
    for (auto& [_, d] : seen_x) b.d_bbar = std::max(b.d_bbar, d);
    return b;
}

void run_connect_suite(const TwoSumCtx& ctx, const Json& ijson, std::size_t cap,
                       CheckRecord& rec) {
    OracleBounds b = oracle_bounds(ctx, cap);
    std::size_t bound = b.theorem_bound();
    auto table = oracle::diameter(ctx.sys, cap);
    if (table.verts.size() != ctx.graph.verts.size())
        throw IntegrityError("connect suite: oracle and fast enumerations disagree");
    std::string stretch; // worst walk length / BFS-shortest across pairs
    for (std::size_t i = 0; i < ctx.graph.verts.size(); ++i)
        for (std::size_t j = i + 1; j < ctx.graph.verts.size(); ++j) {
            const Vertex& u = ctx.graph.verts[i];
            const Vertex& v = ctx.graph.verts[j];
            ++rec.cases;
            Walk w = connect(ctx, u, v);
            auto chk = oracle::check_walk(ctx.sys, w);
            if (!chk.ok || !(w.verts.front() == u) || !(w.verts.back() == v)) {
                rec.fail(walk_witness(ijson, u, v, w, chk.reason), "invalid connect walk");
                continue;
            }
            rec.observe(w.length(), bound);
            if (w.length() > bound)
                rec.fail(walk_witness(ijson, u, v, w, "length exceeds the instance bound"),
                         "connect budget exceeded");
            // the enumerations agree and are sorted identically
            std::string s = ratio_string(w.length(), table.dist[i][j]);
            if (stretch.empty() || ratio_less(stretch, s)) stretch = s;
        }
    if (rec.pass && !stretch.empty()) rec.detail = "max stretch over shortest " + stretch;
}

// ---- unit-column suite ----------------------------------------------

void run_unit_suite(const System& ext, const Json& ijson, std::size_t cap, CheckRecord& rec) {
    std::size_t last = ext.n() - 1;
    std::size_t r0 = 0;
    for (std::size_t i = 0; i < ext.m(); ++i)
        if (!ext.a.at(i, last).is_zero()) r0 = i;
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < ext.m(); ++i)
        if (i != r0) keep.push_back(i);
    Vec pb;
    for (auto i : keep) pb.push_back(ext.b[i]);
    System pa_sys(ext.a.select_rows(keep).drop_cols({last}), pb, "P_A");
    System face = restrict_face(ext, {last});

    std::size_t d_pa = oracle_diam(pa_sys, cap);
    std::size_t d_p = 0;
    {
        auto fv = oracle::enumerate_points(face, cap);
        if (!fv.empty()) d_p = oracle_diam(face, cap);
    }
    std::size_t bound = d_pa + d_p + 2;

    Graph g = build_graph(ext, cap);
    for (std::size_t i = 0; i < g.verts.size(); ++i)
        for (std::size_t j = i + 1; j < g.verts.size(); ++j) {
            ++rec.cases;
            Walk w = connect_unit(ext, g.verts[i], g.verts[j], cap);
            auto chk = oracle::check_walk(ext, w);
            if (!chk.ok || !(w.verts.front() == g.verts[i]) || !(w.verts.back() == g.verts[j])) {
                rec.fail(walk_witness(ijson, g.verts[i], g.verts[j], w, chk.reason),
                         "invalid unit-column walk");
                continue;
            }
            rec.observe(w.length(), bound);
            if (w.length() > bound)
                rec.fail(walk_witness(ijson, g.verts[i], g.verts[j], w, "budget exceeded"),
                         "unit-column budget exceeded");
        }
}

// ---- three-sum suites -----------------------------------------------

void run_lift3_suite(const ThreeSum& inst, const System& sys, const Json& ijson,
                     std::size_t cap, CheckRecord& rec) {
    auto verts = enumerate_vertices(sys, cap);
    auto opoints = oracle::enumerate_points(sys, cap);
    Graph pa_graph = build_graph(inst.pa(), cap);
    for (const auto& v : verts) {
        if (classify3(inst, v) != Category3::XVertex) continue;
        Vec x = inst.xpart(v.coords), y = inst.ypart(v.coords);
        auto ys = support_of(y);
        BandPolygon poly = band_x3(inst, y);
        std::size_t xi = pa_graph.index_of(Vertex(x));
        for (auto nb : pa_graph.adj[xi]) {
            const Vec& tx = pa_graph.verts[nb].coords;
            ++rec.cases;
            Lift3Outcome out = lift_step3(inst, v, tx, cap);
            bool in_poly = poly.contains({dot(inst.a1_row, tx), dot(inst.a2_row, tx)});
            bool oracle_adj = false;
            for (const auto& w : opoints) {
                if (!(inst.xpart(w) == tx)) continue;
                auto ws = support_of(inst.ypart(w));
                if (!std::includes(ys.begin(), ys.end(), ws.begin(), ws.end())) continue;
                if (oracle::adjacent(sys, v.coords, w)) {
                    oracle_adj = true;
                    break;
                }
            }
            bool ok = out.liftable == in_poly && out.liftable == oracle_adj;
            if (ok && out.liftable) ok = oracle::vertex_point(sys, out.vertex.coords);
            if (!ok)
                rec.fail(Json{{"instance", ijson},
                              {"at", to_json(v.coords)},
                              {"target", to_json(tx)},
                              {"liftable", out.liftable},
                              {"in_polygon", in_poly},
                              {"oracle_adjacent", oracle_adj}},
                         "3-sum lift/band/adjacency disagreement");
        }
    }
}

void run_same_x3_suite(const ThreeSum& inst, const System& sys, const Json& ijson,
                       std::size_t cap, CheckRecord& rec) {
    auto verts = enumerate_vertices(sys, cap);
    std::map<std::string, std::size_t> qx_diam;
    for (std::size_t i = 0; i < verts.size(); ++i) {
        if (classify3(inst, verts[i]) != Category3::XVertex) continue;
        for (std::size_t j = i + 1; j < verts.size(); ++j) {
            if (classify3(inst, verts[j]) != Category3::XVertex) continue;
            Vec xu = inst.xpart(verts[i].coords);
            if (!(xu == inst.xpart(verts[j].coords))) continue;
            ++rec.cases;
            Walk w = connect_same_x3(inst, verts[i], verts[j], cap);
            auto chk = oracle::check_walk(sys, w);
            if (!chk.ok || !(w.verts.front() == verts[i]) || !(w.verts.back() == verts[j])) {
                rec.fail(walk_witness(ijson, verts[i], verts[j], w, chk.reason),
                         "invalid 3-sum same-x walk");
                continue;
            }
            std::string key = dot(inst.a1_row, xu).str() + "|" + dot(inst.a2_row, xu).str();
            if (!qx_diam.count(key)) qx_diam[key] = oracle_diam(inst.q_of(xu), cap);
            rec.observe(w.length(), qx_diam[key]);
            if (w.length() > qx_diam[key])
                rec.fail(walk_witness(ijson, verts[i], verts[j], w, "budget exceeded"),
                         "3-sum same-x budget exceeded");
        }
    }
}

void run_band_polygon_suite(const ThreeSum& inst, const System& sys, const Json& ijson,
                            std::size_t cap, CheckRecord& rec) {
    auto verts = enumerate_vertices(sys, cap);
    std::map<std::string, bool> seen;
    for (const auto& v : verts) {
        if (classify3(inst, v) != Category3::XVertex) continue;
        Vec y = inst.ypart(v.coords);
        auto supp = support_of(y);
        std::string key;
        for (auto s : supp) key += std::to_string(s) + ",";
        if (seen.count(key)) continue;
        seen[key] = true;
        ++rec.cases;
        BandPolygon poly = band_x3(inst, y);
        // oracle side: project the restricted face's vertices
        System fsys(inst.b_block.select_cols(supp), inst.c_b, "face");
        auto fverts = oracle::enumerate_points(fsys, cap);
        Vec b1s, b2s;
        for (auto jx : supp) {
            b1s.push_back(inst.b1_row[jx]);
            b2s.push_back(inst.b2_row[jx]);
        }
        std::vector<Point2> projected;
        for (const auto& z : fverts)
            projected.emplace_back(inst.c1_shared - dot(b1s, z), inst.c2_shared - dot(b2s, z));
        bool ok = true;
        for (const auto& p : projected)
            if (!poly.contains(p)) ok = false;
        for (const auto& hv : poly.vertices)
            if (std::find(projected.begin(), projected.end(), hv) == projected.end()) ok = false;
        if (poly.vertices.size() >= 3) {
            for (std::size_t t = 0; t < poly.vertices.size(); ++t)
                if (orient2d(poly.vertices[t], poly.vertices[(t + 1) % poly.vertices.size()],
                             poly.vertices[(t + 2) % poly.vertices.size()]) <= 0)
                    ok = false;
        } else if (poly.vertices.size() == 2 && poly.vertices[0] == poly.vertices[1]) {
            ok = false;
        }
        if (!ok)
            rec.fail(Json{{"instance", ijson},
                          {"support", Json(supp)},
                          {"polygon", to_json(poly)},
                          {"projected_count", projected.size()}},
                     "band polygon differs from the projected face hull");
    }
}

// ---- product suite --------------------------------------------------

std::vector<std::vector<std::size_t>> column_components(const System& s) {
    // union-find over columns; rows link every pair of their columns
    std::vector<std::size_t> parent(s.n());
    for (std::size_t j = 0; j < s.n(); ++j) parent[j] = j;
    std::function<std::size_t(std::size_t)> find = [&](std::size_t a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    for (std::size_t i = 0; i < s.m(); ++i) {
        std::size_t first = s.n();
        for (std::size_t j = 0; j < s.n(); ++j) {
            if (s.a.at(i, j).is_zero()) continue;
            if (first == s.n())
                first = j;
            else
                parent[find(j)] = find(first);
        }
    }
    std::map<std::size_t, std::vector<std::size_t>> groups;
    for (std::size_t j = 0; j < s.n(); ++j) groups[find(j)].push_back(j);
    std::vector<std::vector<std::size_t>> out;
    for (auto& [_, g] : groups) out.push_back(std::move(g));
    return out;
}

void run_product_suite(const System& s, const Json& ijson, std::size_t cap, CheckRecord& rec) {
    auto comps = column_components(s);
    if (comps.size() < 2) {
        rec.detail = "not block-diagonal; vacuous";
        return;
    }
    ++rec.cases;
    std::size_t total = oracle_diam(s, cap);
    std::size_t sum = 0;
    for (const auto& cols : comps) {
        std::vector<std::size_t> rows;
        for (std::size_t i = 0; i < s.m(); ++i) {
            bool touches = false;
            for (auto j : cols)
                if (!s.a.at(i, j).is_zero()) touches = true;
            if (touches) rows.push_back(i);
        }
        Matrix sub = s.a.select_rows(rows).select_cols(cols);
        Vec sb;
        for (auto i : rows) sb.push_back(s.b[i]);
        sum += oracle_diam(System(sub, sb, "block"), cap);
    }
    rec.max_len = total;
    rec.max_bound = sum;
    rec.ratio = ratio_string(total, sum);
    if (total != sum)
        rec.fail(Json{{"instance", ijson}, {"total", total}, {"block_sum", sum}},
                 "product diameter differs from the block sum");
}

} // namespace

Report verify_two_sum(const TwoSum& inst, const std::vector<std::string>& checks,
                      std::size_t cap) {
    Report rep;
    Json ijson = to_json(inst);
    rep.instance_hash = instance_hash(ijson);
    rep.kind = "two_sum";
    TwoSumCtx ctx(inst, cap);

    CheckRecord iff{"L1.1-iff", "1.1"};
    CheckRecord shape{"L1.2-shape", "1.1"};
    bool want_iff = check_selected(checks, iff.check_id);
    bool want_shape = check_selected(checks, shape.check_id);
    if (want_iff || want_shape)
        run_lift_suite(ctx, ijson, cap, want_iff ? &iff : nullptr,
                       want_shape ? &shape : nullptr);
    if (want_iff) rep.records.push_back(std::move(iff));
    if (want_shape) rep.records.push_back(std::move(shape));

    if (check_selected(checks, "L2.1")) {
        CheckRecord rec{"L2.1", "2.1"};
        run_same_x_suite(ctx, ijson, cap, rec);
        rep.records.push_back(std::move(rec));
    }
    if (check_selected(checks, "L2.2")) {
        CheckRecord rec{"L2.2", "2.2"};
        run_escape_suite(ctx, ijson, cap, rec);
        rep.records.push_back(std::move(rec));
    }
    if (check_selected(checks, "L2.3")) {
        CheckRecord rec{"L2.3", "2.3"};
        run_in_band_suite(ctx, ijson, cap, rec);
        rep.records.push_back(std::move(rec));
    }
    if (check_selected(checks, "T2.1")) {
        CheckRecord rec{"T2.1", "2.3"};
        run_connect_suite(ctx, ijson, cap, rec);
        rep.records.push_back(std::move(rec));
    }
    return rep;
}

Report verify_unit(const System& p_abar, const std::vector<std::string>& checks,
                   std::size_t cap) {
    Report rep;
    Json ijson = to_json(p_abar);
    rep.instance_hash = instance_hash(ijson);
    rep.kind = "unit_column";
    if (check_selected(checks, "U2.1")) {
        CheckRecord rec{"U2.1", "2.3"};
        run_unit_suite(p_abar, ijson, cap, rec);
        rep.records.push_back(std::move(rec));
    }
    return rep;
}

Report verify_three_sum(const ThreeSum& inst, const std::vector<std::string>& checks,
                        std::size_t cap) {
    Report rep;
    Json ijson = to_json(inst);
    rep.instance_hash = instance_hash(ijson);
    rep.kind = "three_sum";
    System sys = inst.assembled();
    if (check_selected(checks, "L3.1")) {
        CheckRecord rec{"L3.1", "1.1"};
        run_lift3_suite(inst, sys, ijson, cap, rec);
        rep.records.push_back(std::move(rec));
    }
    if (check_selected(checks, "L3.3")) {
        CheckRecord rec{"L3.3", "2.1"};
        run_same_x3_suite(inst, sys, ijson, cap, rec);
        rep.records.push_back(std::move(rec));
    }
    if (check_selected(checks, "band-polygon")) {
        CheckRecord rec{"band-polygon", "1.1"};
        run_band_polygon_suite(inst, sys, ijson, cap, rec);
        rep.records.push_back(std::move(rec));
    }
    return rep;
}

Report verify_system(const System& s, const std::vector<std::string>& checks, std::size_t cap) {
    Report rep;
    Json ijson = to_json(s);
    rep.instance_hash = instance_hash(ijson);
    rep.kind = "system";
    if (check_selected(checks, "product-identity")) {
        CheckRecord rec{"product-identity", "2.1"};
        run_product_suite(s, ijson, cap, rec);
        rep.records.push_back(std::move(rec));
    }
    return rep;
}

Report verify_walk(const WalkDocument& doc, std::size_t cap) {
    (void)cap;
    Report rep;
    rep.instance_hash = instance_hash(doc.instance);
    rep.kind = "walk";
    CheckRecord rec{"walk-validity", "1.1"};
    rec.cases = 1;
    System sys;
    switch (detect_kind(doc.instance)) {
        case FileKind::TwoSumFile: sys = twosum_from_json(doc.instance).assembled(); break;
        case FileKind::ThreeSumFile: sys = threesum_from_json(doc.instance).assembled(); break;
        case FileKind::SystemFile: sys = system_from_json(doc.instance); break;
        default: throw ParseError("walk document embeds an unsupported instance");
    }
    auto chk = oracle::check_walk(sys, doc.walk);
    if (!chk.ok)
        rec.fail(Json{{"instance", doc.instance},
                      {"walk", to_json(doc.walk)},
                      {"bad_index", chk.bad_index}},
                 chk.reason);
    rec.max_len = doc.walk.length();
    rep.records.push_back(std::move(rec));
    return rep;
}

Report verify_file(const Json& j, const std::vector<std::string>& checks, std::size_t cap) {
    switch (detect_kind(j)) {
        case FileKind::WalkFile: return verify_walk(walk_document_from_json(j), cap);
        case FileKind::TwoSumFile: return verify_two_sum(twosum_from_json(j), checks, cap);
        case FileKind::ThreeSumFile: return verify_three_sum(threesum_from_json(j), checks, cap);
        case FileKind::SystemFile: {
            System s = system_from_json(j);
            // a trailing unit column marks a unit-column instance
            if (s.n() >= 1) {
                Vec col = s.a.col(s.n() - 1);
                std::size_t nz = 0;
                bool unit = true;
                for (const auto& e : col) {
                    if (e.is_zero()) continue;
                    ++nz;
                    if (e != Rational(1)) unit = false;
                }
                if (unit && nz == 1) {
                    auto rep = verify_unit(s, checks, cap);
                    if (!rep.records.empty()) return rep;
                }
            }
            return verify_system(s, checks, cap);
        }
    }
    throw ParseError("unrecognized file schema");
}

std::size_t Campaign::failures() const {
    std::size_t n = 0;
    for (const auto& r : reports)
        for (const auto& c : r.records)
            if (!c.pass) ++n;
    return n;
}

bool Campaign::all_pass(const std::string& check_id) const {
    bool seen = false;
    for (const auto& r : reports)
        for (const auto& c : r.records)
            if (c.check_id == check_id) {
                seen = true;
                if (!c.pass) return false;
            }
    return seen;
}

std::string Campaign::jsonl() const {
    std::string out;
    for (const auto& r : reports)
        for (const auto& c : r.records) {
            Json line{{"instance", r.instance_hash},
                      {"kind", r.kind},
                      {"seed", r.seed},
                      {"check", c.check_id},
                      {"lemma", c.lemma},
                      {"pass", c.pass},
                      {"cases", c.cases},
                      {"detail", c.detail},
                      {"witness", c.pass ? Json() : c.witness}};
            if (c.max_len) line["walk_length"] = *c.max_len;
            if (c.max_bound) line["bound"] = *c.max_bound;
            if (!c.ratio.empty()) line["ratio"] = c.ratio;
            out += line.dump();
            out += '\n';
        }
    return out;
}

std::string Campaign::csv() const {
    std::string out = "instance,check,pass,walk_length,bound,ratio\n";
    for (const auto& r : reports)
        for (const auto& c : r.records) {
            out += r.instance_hash + "," + c.check_id + "," + (c.pass ? "1" : "0") + ",";
            out += (c.max_len ? std::to_string(*c.max_len) : "") + ",";
            out += (c.max_bound ? std::to_string(*c.max_bound) : "") + ",";
            out += c.ratio + "\n";
        }
    return out;
}

Campaign run_campaign(const CampaignConfig& cfg) {
    struct Job {
        InstanceKind kind;
        std::uint64_t seed;
    };
    std::vector<Job> jobs;
    SplitMix64 rng(cfg.seed);
    for (std::size_t i = 0; i < cfg.two_sum_count; ++i)
        jobs.push_back({InstanceKind::TwoSumKind, rng.next()});
    for (std::size_t i = 0; i < cfg.three_sum_count; ++i)
        jobs.push_back({InstanceKind::ThreeSumKind, rng.next()});
    for (std::size_t i = 0; i < cfg.unit_count; ++i)
        jobs.push_back({InstanceKind::UnitColumn, rng.next()});
    for (std::size_t i = 0; i < cfg.product_count; ++i)
        jobs.push_back({InstanceKind::Product, rng.next()});

    Campaign camp;
    camp.reports.resize(jobs.size());
    std::size_t workers = cfg.jobs ? cfg.jobs : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min(workers, jobs.size());
    std::mutex next_mu;
    std::size_t next = 0;
    std::vector<std::string> errors;

    auto work = [&]() {
        for (;;) {
            std::size_t mine;
            {
                std::lock_guard<std::mutex> lk(next_mu);
                if (next >= jobs.size()) return;
                mine = next++;
            }
            const Job& job = jobs[mine];
            GenConfig gc;
            gc.seed = job.seed;
            gc.kind = job.kind;
            gc.cap = cfg.cap;
            gc.require_simple = true;
            gc.m_p = {1, 2};
            gc.n_p = {3, 5};
            gc.m_q = {1, 2};
            gc.n_q = {3, 5};
            try {
                GeneratedInstance gi = generate(gc);
                Report rep;
                switch (job.kind) {
                    case InstanceKind::TwoSumKind:
                        rep = verify_two_sum(*gi.two_sum, {"all"}, cfg.cap);
                        break;
                    case InstanceKind::ThreeSumKind:
                        rep = verify_three_sum(*gi.three_sum, {"all"}, cfg.cap);
                        break;
                    case InstanceKind::UnitColumn:
                        rep = verify_unit(*gi.system, {"all"}, cfg.cap);
                        break;
                    case InstanceKind::Product:
                        rep = verify_system(*gi.system, {"all"}, cfg.cap);
                        break;
                }
                rep.seed = job.seed;
                camp.reports[mine] = std::move(rep);
            } catch (const std::exception& e) {
                Report rep;
                rep.kind = kind_name(job.kind);
                rep.seed = job.seed;
                rep.instance_hash = "error";
                CheckRecord rec{"generation", ""};
                rec.witness = Json{{"error", e.what()}};
                rec.detail = e.what();
                rec.pass = false;
                rep.records.push_back(std::move(rec));
                camp.reports[mine] = std::move(rep);
            }
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t + 1 < workers; ++t) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();

    std::sort(camp.reports.begin(), camp.reports.end(), [](const Report& a, const Report& b) {
        if (a.instance_hash != b.instance_hash) return a.instance_hash < b.instance_hash;
        if (a.kind != b.kind) return a.kind < b.kind;
        return a.seed < b.seed;
    });
    return camp;
}

} // namespace polysum
