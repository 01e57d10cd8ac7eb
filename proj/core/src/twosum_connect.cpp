#include "polysum/errors.hpp"
#include "polysum/twosum.hpp"
#include "twosum_internal.hpp"

#include <algorithm>
#include <map>

namespace polysum {

using detail::face_point_at_value;
using detail::lift_step_banded;
using detail::point_between;

TwoSumCtx::TwoSumCtx(TwoSum instance, std::size_t cap_, bool build_mirror)
    : inst(std::move(instance)), cap(cap_) {
    inst.validate();
    sys = inst.assembled();
    graph = build_graph(sys, cap);
    cats.reserve(graph.verts.size());
    for (const auto& v : graph.verts) cats.push_back(classify(inst, v));
    pa_sys = inst.pa();
    qb_sys = inst.qb();
    pa_graph = build_graph(pa_sys, cap);
    qb_graph = build_graph(qb_sys, cap);
    if (build_mirror)
        mirror = std::make_shared<const TwoSumCtx>(inst.mirrored(), cap, false);
}

bool TwoSumCtx::has_category(Category c) const {
    return std::find(cats.begin(), cats.end(), c) != cats.end();
}

Category TwoSumCtx::category_of(const Vertex& v) const {
    return cats[graph.index_of(v)];
}

namespace {

Walk single(const Vertex& v) {
    Walk w;
    w.verts.push_back(v);
    return w;
}

// Walk between two vertices that share their y part (a Q_B vertex),
// realized as a BFS path inside the slice face P(y).
Walk same_y_walk(const TwoSum& inst, const Vertex& from, const Vertex& to, std::size_t cap,
                 ConnectTrace* trace) {
    Vec y = inst.ypart(from.coords);
    if (!(y == inst.ypart(to.coords)))
        throw IntegrityError("same_y_walk: y parts differ");
    Walk w = single(from);
    if (from == to) return w;
    System pofy = inst.p_of(y);
    Graph g = build_graph(pofy, cap);
    auto path = bfs_path(g, g.index_of(Vertex(inst.xpart(from.coords))),
                         g.index_of(Vertex(inst.xpart(to.coords))));
    if (path.empty()) throw IntegrityError("same_y_walk: slice face is disconnected");
    for (std::size_t k = 1; k < path.size(); ++k)
        w.push(Vertex(inst.join(g.verts[path[k]].coords, y)), {StepRule::Jump, "2.1"});
    if (trace) trace->jump_faces_y.push_back(y);
    return w;
}

// Lifts path[0..stop] from `start` (an x-vertex at path[0]), resolving
// band violations by a jump inside the slice face to the farthest
// re-entry edge. At most one violation episode per band side when the
// y support stays fixed, which is the simple-instance invariant.
Walk in_band_advance(const TwoSumCtx& ctx, const Vertex& start, const std::vector<Vec>& path,
                     std::size_t stop, ConnectTrace* trace) {
    const TwoSum& T = ctx.inst;
    Walk w = single(start);
    if (stop == 0) return w;
    Vertex cur = start;
    BandInterval band = band_x(T, T.ypart(start.coords));
    auto aval = [&](std::size_t i) { return dot(T.a_row, path[i]); };
    auto rebuild_band = [&](const Vertex& v) {
        if (support_of(T.ypart(v.coords)) != band.support)
            band = band_x(T, T.ypart(v.coords));
    };
    std::size_t pos = 0;
    std::size_t guard = 0, guard_cap = 4 * (path.size() + 4);
    while (pos < stop) {
        if (++guard > guard_cap) throw IntegrityError("in_band_advance: no progress");
        LiftOutcome out = lift_step_banded(T, cur, path[pos + 1], band);
        if (out.lifted()) {
            w.push(out.vertex, {StepRule::Lift, "1.1"});
            cur = out.vertex;
            ++pos;
            rebuild_band(cur);
            continue;
        }
        if (pos + 1 >= stop)
            throw IntegrityError("in_band_advance: final path vertex left the band");
        w.push(out.vertex, {StepRule::Lift, "1.1"});
        bool above = out.side == LiftOutcome::Side::AboveHi;
        Rational boundary = above ? band.hi : band.lo;
        // Farthest index still beyond the violated boundary.
        std::size_t i = pos + 1;
        for (std::size_t t = pos + 1; t < stop; ++t) {
            Rational val = aval(t);
            if (above ? val > boundary : val < boundary) i = t;
        }
        Vec xre = point_between(path[i], path[i + 1], aval(i), aval(i + 1), boundary);
        Vertex reentry(T.join(xre, out.terminal_y));
        if (!(reentry == out.vertex)) {
            w.append(same_y_walk(T, out.vertex, reentry, ctx.cap, trace));
        }
        cur = reentry;
        Rational anext = aval(i + 1);
        if (band.contains(anext)) {
            // The y edge is swept only until x reaches the vertex.
            Vec yint = face_point_at_value(T, band, anext);
            cur = Vertex(T.join(path[i + 1], yint));
            w.push(cur, {StepRule::Lift, "2.3"});
            pos = i + 1;
            rebuild_band(cur);
            continue;
        }
        // anext lies beyond the opposite boundary: the y edge is swept
        // fully and a second episode starts on the other side.
        Rational other = above ? band.lo : band.hi;
        Vec xw = point_between(path[i], path[i + 1], aval(i), anext, other);
        Vec yother = above ? band.z_at_lo : band.z_at_hi;
        cur = Vertex(T.join(xw, yother));
        w.push(cur, {StepRule::Lift, "2.3"});
        std::size_t l = i + 1;
        for (std::size_t t = i + 1; t < stop; ++t) {
            Rational val = aval(t);
            if (above ? val < other : val > other) l = t;
        }
        Vec xre2 = point_between(path[l], path[l + 1], aval(l), aval(l + 1), other);
        Vertex reentry2(T.join(xre2, yother));
        if (!(reentry2 == cur)) {
            w.append(same_y_walk(T, cur, reentry2, ctx.cap, trace));
            cur = reentry2;
        }
        Rational al1 = aval(l + 1);
        if (!band.contains(al1))
            throw IntegrityError("in_band_advance: re-entry value outside the band");
        Vec yint = face_point_at_value(T, band, al1);
        cur = Vertex(T.join(path[l + 1], yint));
        w.push(cur, {StepRule::Lift, "2.3"});
        pos = l + 1;
        rebuild_band(cur);
    }
    return w;
}

// Walks from `u` along `path` until the band is left through the
// `want_high` boundary, pushing through opposite-side violations with
// jump episodes. The path's final value must lie beyond that boundary,
// which forces the exit to happen. Returns the boundary y-vertex and
// the path edge index it sits on.
struct BandExit {
    Walk walk;
    Vertex terminal;   ///< (crossing, band-endpoint vertex of Q_B)
    std::size_t edge;  ///< path edge (edge, edge+1) carrying the crossing
};

BandExit band_exit(const TwoSumCtx& ctx, const Vertex& start, const std::vector<Vec>& path,
                   bool want_high, ConnectTrace* trace) {
    const TwoSum& T = ctx.inst;
    BandExit out;
    out.walk = single(start);
    Vertex cur = start;
    BandInterval band = band_x(T, T.ypart(start.coords));
    auto aval = [&](std::size_t i) { return dot(T.a_row, path[i]); };
    std::size_t k = path.size() - 1;
    {
        Rational last = aval(k);
        bool beyond = want_high ? last > band.hi : last < band.lo;
        if (!beyond) throw IntegrityError("band_exit: path does not leave the band");
    }
    auto wanted = [&](LiftOutcome::Side s) {
        return want_high ? s == LiftOutcome::Side::AboveHi : s == LiftOutcome::Side::BelowLo;
    };
    std::size_t pos = 0;
    std::size_t guard = 0, guard_cap = 4 * (path.size() + 4);
    while (true) {
        if (++guard > guard_cap) throw IntegrityError("band_exit: no progress");
        if (pos >= k) throw IntegrityError("band_exit: ran off the path without exiting");
        LiftOutcome o = lift_step_banded(T, cur, path[pos + 1], band);
        if (o.lifted()) {
            out.walk.push(o.vertex, {StepRule::Lift, "1.1"});
            cur = o.vertex;
            ++pos;
            continue;
        }
        out.walk.push(o.vertex, {StepRule::Lift, "1.1"});
        if (wanted(o.side)) {
            out.terminal = o.vertex;
            out.edge = pos;
            return out;
        }
        // Opposite-side episode: jump to the farthest crossing and sweep
        // the y edge back; the sweep either re-enters the band at a path
        // vertex or runs out through the wanted boundary.
        Rational boundary = want_high ? band.lo : band.hi;
        std::size_t i = pos + 1;
        for (std::size_t t = pos + 1; t < k; ++t) {
            Rational val = aval(t);
            if (want_high ? val < boundary : val > boundary) i = t;
        }
        Vec xre = point_between(path[i], path[i + 1], aval(i), aval(i + 1), boundary);
        Vertex reentry(T.join(xre, T.ypart(o.vertex.coords)));
        if (!(reentry == o.vertex))
            out.walk.append(same_y_walk(T, o.vertex, reentry, ctx.cap, trace));
        cur = reentry;
        Rational anext = aval(i + 1);
        if (band.contains(anext)) {
            Vec yint = face_point_at_value(T, band, anext);
            cur = Vertex(T.join(path[i + 1], yint));
            out.walk.push(cur, {StepRule::Lift, "2.3"});
            pos = i + 1;
            continue;
        }
        // anext lies beyond the wanted boundary: the sweep exits there.
        Rational wantb = want_high ? band.hi : band.lo;
        Vec xw = point_between(path[i], path[i + 1], aval(i), anext, wantb);
        Vec yend = want_high ? band.z_at_hi : band.z_at_lo;
        cur = Vertex(T.join(xw, yend));
        out.walk.push(cur, {StepRule::Lift, "2.3"});
        out.terminal = cur;
        out.edge = i;
        return out;
    }
}

std::vector<Vec> path_points(const Graph& g, const std::vector<std::size_t>& idx) {
    std::vector<Vec> pts;
    pts.reserve(idx.size());
    for (auto i : idx) pts.push_back(g.verts[i].coords);
    return pts;
}

std::vector<Vec> pa_path(const TwoSumCtx& ctx, const Vec& from, const Vec& to) {
    auto idx = bfs_path(ctx.pa_graph, ctx.pa_graph.index_of(Vertex(from)),
                        ctx.pa_graph.index_of(Vertex(to)));
    if (idx.empty()) throw IntegrityError("connect: P_A skeleton is disconnected");
    return path_points(ctx.pa_graph, idx);
}

} // namespace

Walk connect_same_x(const TwoSum& inst, const Vertex& u, const Vertex& v, std::size_t cap,
                    ConnectTrace* trace) {
    Vec xu = inst.xpart(u.coords);
    if (!(xu == inst.xpart(v.coords)))
        throw ContractError("connect_same_x: x projections differ");
    Walk w = single(u);
    if (u == v) return w;
    System qx = inst.q_of(xu);
    Graph g = build_graph(qx, cap);
    auto path = bfs_path(g, g.index_of(Vertex(inst.ypart(u.coords))),
                         g.index_of(Vertex(inst.ypart(v.coords))));
    if (path.empty()) throw IntegrityError("connect_same_x: Q(x) face is disconnected");
    for (std::size_t k = 1; k < path.size(); ++k)
        w.push(Vertex(inst.join(xu, g.verts[path[k]].coords)), {StepRule::SameX, "2.1"});
    if (trace) trace->same_x_faces_x.push_back(xu);
    return w;
}

EscapeResult escape_y_vertex(const TwoSumCtx& ctx, const Vertex& u) {
    const TwoSum& T = ctx.inst;
    if (!ctx.has_category(Category::XVertex) || !ctx.has_category(Category::YVertex))
        throw Error("escape_y_vertex: single-category instance");
    std::size_t ui = ctx.graph.index_of(u);
    if (ctx.cats[ui] != Category::YVertex)
        throw ContractError("escape_y_vertex: origin is not a y-vertex");

    Walk w = single(u);
    for (auto nb : ctx.graph.adj[ui])
        if (ctx.cats[nb] == Category::XVertex) {
            w.push(ctx.graph.verts[nb], {StepRule::Escape, "2.2"});
            return EscapeResult{w, ctx.graph.verts[nb], false, std::nullopt};
        }

    // Opposite-category adjacent pair with the smallest indices.
    std::optional<std::pair<std::size_t, std::size_t>> pq; // (y side, x side)
    for (const auto& e : ctx.graph.edges) {
        if (ctx.cats[e.first] == Category::YVertex && ctx.cats[e.second] == Category::XVertex) {
            pq = {e.first, e.second};
            break;
        }
        if (ctx.cats[e.first] == Category::XVertex && ctx.cats[e.second] == Category::YVertex) {
            pq = {e.second, e.first};
            break;
        }
    }
    if (!pq) throw IntegrityError("escape_y_vertex: no opposite-category edge found");
    Vertex p = ctx.graph.verts[pq->first];
    Vertex q = ctx.graph.verts[pq->second];

    Vec yu = T.ypart(u.coords), yp = T.ypart(p.coords);
    auto qidx = bfs_path(ctx.qb_graph, ctx.qb_graph.index_of(Vertex(yu)),
                         ctx.qb_graph.index_of(Vertex(yp)));
    if (qidx.empty()) throw IntegrityError("escape_y_vertex: Q_B skeleton is disconnected");
    auto qpath = path_points(ctx.qb_graph, qidx);

    TwoSum M = T.mirrored();
    Vertex cur = u;
    for (std::size_t i = 0; i + 1 < qpath.size(); ++i) {
        Vertex mcur(T.mirror_point(cur.coords));
        BandInterval mband = band_x(M, M.ypart(mcur.coords));
        LiftOutcome mout = lift_step_banded(M, mcur, qpath[i + 1], mband);
        Vertex next(M.mirror_point(mout.vertex.coords));
        w.push(next, {StepRule::Escape, "2.2"});
        if (!mout.lifted()) {
            // The first failed step already lands on an x-vertex.
            return EscapeResult{w, next, true, std::nullopt};
        }
        cur = next;
    }
    // Full lift reached (x^, y_p); close within P(y_p), then one edge.
    Vertex at_p(T.join(T.xpart(p.coords), yp));
    w.append(same_y_walk(T, cur, at_p, ctx.cap, nullptr));
    w.push(q, {StepRule::Escape, "2.2"});
    return EscapeResult{w, q, false, yp};
}

Walk connect_in_band(const TwoSumCtx& ctx, const Vertex& u, const Vertex& v,
                     ConnectTrace* trace) {
    const TwoSum& T = ctx.inst;
    if (u == v) return single(u);
    if (classify(T, u) != Category::XVertex || classify(T, v) != Category::XVertex)
        throw ContractError("connect_in_band: both endpoints must be x-vertices");
    Vec xu = T.xpart(u.coords), xv = T.xpart(v.coords);
    BandInterval bu = band_x(T, T.ypart(u.coords));
    if (!bu.contains(dot(T.a_row, xv)))
        throw ContractError("connect_in_band: target value outside the band");
    if (xu == xv) {
        Walk w = connect_same_x(T, u, v, ctx.cap, trace);
        return w;
    }
    auto path = pa_path(ctx, xu, xv);
    if (trace) trace->pa_path_len = std::max(trace->pa_path_len, path.size() - 1);
    Walk w = in_band_advance(ctx, u, path, path.size() - 1, trace);
    w.append(connect_same_x(T, w.verts.back(), v, ctx.cap, trace));
    return w;
}

namespace {

struct CorridorEnd {
    enum class Kind { AtTerminal, AtVertexInTargetBand };
    Kind kind;
    Walk walk;
    std::size_t x_index = 0; ///< path index, for AtVertexInTargetBand
};

// Interleaved double-path machine between two boundary y-vertices. The
// x part lives on the P_A path, the y part on the Q_B path; exactly one
// index advances per move, with jumps inside slice faces re-entering at
// the farthest crossing.
CorridorEnd corridor(const TwoSumCtx& ctx, const Vertex& t1, std::size_t edge_lo,
                     const Vertex& t2, const std::vector<Vec>& path,
                     const BandInterval& band_v, ConnectTrace* trace) {
    const TwoSum& T = ctx.inst;
    Vec e1 = T.ypart(t1.coords), e2 = T.ypart(t2.coords);
    auto zidx = bfs_path(ctx.qb_graph, ctx.qb_graph.index_of(Vertex(e1)),
                         ctx.qb_graph.index_of(Vertex(e2)));
    if (zidx.empty()) throw IntegrityError("corridor: Q_B skeleton is disconnected");
    auto zpath = path_points(ctx.qb_graph, zidx);
    std::size_t r = zpath.size() - 1;
    if (trace) trace->qb_path_len = std::max(trace->qb_path_len, r);

    auto aval = [&](std::size_t i) { return dot(T.a_row, path[i]); };
    auto bval = [&](std::size_t i) { return dot(T.b_row, zpath[i]); };
    const Rational c = T.c_shared;

    CorridorEnd end;
    end.walk = single(t1);
    Walk& w = end.walk;

    bool y_at_vertex = true;      // y part sits on a zpath vertex
    std::size_t te = edge_lo;     // x edge (te, te+1) when y_at_vertex
    std::size_t xe = 0;           // x path vertex index otherwise
    std::size_t zl = 0;           // z vertex index / z edge (zl, zl+1)
    Vertex cur = t1;

    std::size_t guard = 0, guard_cap = 6 * (path.size() + zpath.size() + 8);
    while (true) {
        if (++guard > guard_cap) {
            std::string msg = "corridor: no progress [x a-vals";
            for (std::size_t t = 0; t < path.size(); ++t) msg += " " + aval(t).str();
            msg += " | z b-vals";
            for (std::size_t t = 0; t <= r; ++t) msg += " " + bval(t).str();
            msg += " | band_v [" + band_v.lo.str() + "," + band_v.hi.str() + "] | at " +
                   (y_at_vertex ? "y-vertex te=" + std::to_string(te)
                                : "x-vertex xe=" + std::to_string(xe)) +
                   " zl=" + std::to_string(zl) + "]";
            throw IntegrityError(msg);
        }
        if (y_at_vertex) {
            if (zl == r) {
                w.append(same_y_walk(T, cur, t2, ctx.cap, trace));
                end.kind = CorridorEnd::Kind::AtTerminal;
                return end;
            }
            // Lift the z step over the x edge (te, te+1).
            Rational acur = dot(T.a_row, T.xpart(cur.coords));
            Rational beta = c - bval(zl + 1);
            Rational a0 = aval(te), a1 = aval(te + 1);
            Rational alo = std::min(a0, a1), ahi = std::max(a0, a1);
            if (beta == acur) {
                cur = Vertex(T.join(T.xpart(cur.coords), zpath[zl + 1]));
                w.push(cur, {StepRule::Lift, "1.1"});
                ++zl;
                continue;
            }
            if (alo == ahi)
                throw IntegrityError("corridor: constant shared value on an x edge");
            if (alo <= beta && beta <= ahi) {
                if (beta == a0 || beta == a1)
                    throw IntegrityError("corridor: degenerate coincidence at an x endpoint");
                Vec xq = point_between(path[te], path[te + 1], a0, a1, beta);
                cur = Vertex(T.join(xq, zpath[zl + 1]));
                w.push(cur, {StepRule::Lift, "1.1"});
                ++zl;
                continue;
            }
            // Exits at the x endpoint lying in the direction of motion.
            bool dirup = beta > acur;
            std::size_t endv = ((a0 > acur) == dirup) ? te : te + 1;
            Rational target_b = c - aval(endv);
            Vec yint = point_between(zpath[zl], zpath[zl + 1], bval(zl), bval(zl + 1), target_b);
            cur = Vertex(T.join(path[endv], yint));
            w.push(cur, {StepRule::Lift, "2.3"});
            y_at_vertex = false;
            xe = endv;
            continue;
        }

        // x at a path vertex, y interior of the z edge (zl, zl+1).
        if (band_v.contains(aval(xe))) {
            end.kind = CorridorEnd::Kind::AtVertexInTargetBand;
            end.x_index = xe;
            return end;
        }
        Vec yq = T.ypart(cur.coords);
        Rational byq = dot(T.b_row, yq);
        int dir = (bval(zl + 1) - byq).sign();
        if (dir == 0) throw IntegrityError("corridor: flat y interior point");
        std::size_t s = zl; // farthest z index strictly beyond byq
        bool found = false;
        for (std::size_t t = zl + 1; t <= r; ++t)
            if ((bval(t) - byq).sign() == dir) {
                s = t;
                found = true;
            }
        if (!found)
            throw IntegrityError("corridor: lost the y direction"); // unreachable: zl+1 qualifies
        if (s < r) {
            // Jump forward within Q(x) to the farthest crossing of the
            // current level; later z values stay on one side of it.
            if (bval(s + 1) == byq)
                throw IntegrityError("corridor: degenerate coincidence at a y endpoint");
            Vec ys = point_between(zpath[s], zpath[s + 1], bval(s), bval(s + 1), byq);
            Vertex jumped(T.join(path[xe], ys));
            if (!(jumped == cur)) {
                Walk jw = connect_same_x(T, cur, jumped, ctx.cap, nullptr);
                for (auto& tag : jw.tags) tag = {StepRule::Jump, "2.1"};
                w.append(jw);
                if (trace) trace->same_x_faces_x.push_back(T.xpart(cur.coords));
                cur = jumped;
            }
            zl = s;
        }
        // s == r: the terminal y vertex itself lies beyond the current
        // level, so no crossing exists; lift from where we stand.
        // Lift the x step over the z edge (s, s+1).
        if (xe + 1 >= path.size())
            throw IntegrityError("corridor: ran off the x path");
        Rational needed_b = c - aval(xe + 1);
        Rational b0 = bval(zl), b1 = bval(zl + 1);
        Rational blo = std::min(b0, b1), bhi = std::max(b0, b1);
        Rational bcur = byq;
        if (needed_b == bcur) {
            cur = Vertex(T.join(path[xe + 1], T.ypart(cur.coords)));
            w.push(cur, {StepRule::Lift, "1.1"});
            ++xe;
            continue;
        }
        if (blo <= needed_b && needed_b <= bhi) {
            if (needed_b == b0 || needed_b == b1)
                throw IntegrityError("corridor: degenerate coincidence at a y endpoint");
            Vec ynew = point_between(zpath[zl], zpath[zl + 1], b0, b1, needed_b);
            cur = Vertex(T.join(path[xe + 1], ynew));
            w.push(cur, {StepRule::Lift, "1.1"});
            ++xe;
            continue;
        }
        bool dirb = needed_b > bcur;
        std::size_t zend = ((b0 > bcur) == dirb) ? zl : zl + 1;
        Vec xint = point_between(path[xe], path[xe + 1], aval(xe), aval(xe + 1), c - bval(zend));
        cur = Vertex(T.join(xint, zpath[zend]));
        w.push(cur, {StepRule::Lift, "2.3"});
        y_at_vertex = true;
        te = xe;
        zl = zend;
    }
}

// General same-category connect for x-vertices whose shared values lie
// outside each other's bands; caller guarantees a.x_v > hi(Band(y_u))
// and a.x_u < lo(Band(y_v)). Both sides exit their bands through the
// boundary facing the other endpoint, and the boundary y-vertices are
// joined by the interleaved corridor.
Walk connect_general(const TwoSumCtx& ctx, const Vertex& u, const Vertex& v,
                     ConnectTrace* trace) {
    const TwoSum& T = ctx.inst;
    Vec xu = T.xpart(u.coords), xv = T.xpart(v.coords);
    BandInterval bv = band_x(T, T.ypart(v.coords));
    auto path = pa_path(ctx, xu, xv);
    std::size_t k = path.size() - 1;
    if (trace) trace->pa_path_len = std::max(trace->pa_path_len, k);
    auto aval = [&](std::size_t i) { return dot(T.a_row, path[i]); };

    BandExit up = band_exit(ctx, u, path, true, trace);
    Walk w = up.walk;

    std::vector<Vec> rpath(path.rbegin(), path.rend());
    BandExit down = band_exit(ctx, v, rpath, false, trace);

    auto finish_from = [&](Walk& head, const Vertex& at, std::size_t idx) {
        // `at` is an x-vertex at path[idx] whose value lies in v's band:
        // switch bands with a same-x walk, advance in-band to the end,
        // then close in Q(x_v).
        Vec yv_here = face_point_at_value(T, bv, aval(idx));
        Vertex switched(T.join(path[idx], yv_here));
        head.append(connect_same_x(T, at, switched, ctx.cap, trace));
        std::vector<Vec> tailpath(path.begin() + static_cast<long>(idx), path.end());
        head.append(in_band_advance(ctx, switched, tailpath, tailpath.size() - 1, trace));
        head.append(connect_same_x(T, head.verts.back(), v, ctx.cap, trace));
        return head;
    };

    CorridorEnd mid = corridor(ctx, up.terminal, up.edge, down.terminal, path, bv, trace);
    w.append(mid.walk);
    if (mid.kind == CorridorEnd::Kind::AtTerminal) {
        w.append(down.walk.reversed());
        return w;
    }
    return finish_from(w, w.verts.back(), mid.x_index);
}

Walk connect_xx(const TwoSumCtx& ctx, const Vertex& u, const Vertex& v, ConnectTrace* trace) {
    const TwoSum& T = ctx.inst;
    BandInterval bu = band_x(T, T.ypart(u.coords));
    BandInterval bv = band_x(T, T.ypart(v.coords));
    Rational av = dot(T.a_row, T.xpart(v.coords));
    Rational au = dot(T.a_row, T.xpart(u.coords));

    std::vector<std::pair<Walk, ConnectTrace>> cands;
    if (bu.contains(av)) {
        ConnectTrace tr;
        cands.emplace_back(connect_in_band(ctx, u, v, &tr), tr);
    }
    if (bv.contains(au)) {
        ConnectTrace tr;
        cands.emplace_back(connect_in_band(ctx, v, u, &tr).reversed(), tr);
    }
    if (cands.empty()) {
        ConnectTrace tr;
        Walk w = (av > bu.hi) ? connect_general(ctx, u, v, &tr)
                              : connect_general(ctx, v, u, &tr).reversed();
        cands.emplace_back(std::move(w), tr);
    }
    std::size_t best = 0;
    for (std::size_t t = 1; t < cands.size(); ++t)
        if (cands[t].first.length() < cands[best].first.length()) best = t;
    if (trace) *trace = cands[best].second;
    return cands[best].first;
}

Walk unmirror_walk(const TwoSum& mirror_inst, const Walk& w) {
    Walk out;
    out.verts.reserve(w.verts.size());
    for (const auto& v : w.verts) out.verts.push_back(Vertex(mirror_inst.mirror_point(v.coords)));
    out.tags = w.tags;
    return out;
}

} // namespace

Walk connect(const TwoSumCtx& ctx, const Vertex& u, const Vertex& v, ConnectTrace* trace) {
    const TwoSum& T = ctx.inst;
    ctx.graph.index_of(u);
    ctx.graph.index_of(v);
    if (u == v) return single(u);
    Category cu = ctx.category_of(u), cv = ctx.category_of(v);

    if (cu == Category::XVertex && cv == Category::XVertex) return connect_xx(ctx, u, v, trace);

    if (cu == Category::YVertex && cv == Category::YVertex) {
        if (!ctx.mirror) throw IntegrityError("connect: mirror context missing");
        ConnectTrace mtr;
        Walk mw = connect_xx(*ctx.mirror, Vertex(T.mirror_point(u.coords)),
                             Vertex(T.mirror_point(v.coords)), &mtr);
        if (trace) {
            // Mirrored faces swap roles.
            trace->pa_path_len = mtr.qb_path_len;
            trace->qb_path_len = mtr.pa_path_len;
            trace->jump_faces_y = {};
            trace->same_x_faces_x = {};
            for (auto& f : mtr.jump_faces_y) trace->same_x_faces_x.push_back(f);
            for (auto& f : mtr.same_x_faces_x) trace->jump_faces_y.push_back(f);
        }
        return unmirror_walk(ctx.mirror->inst, mw);
    }

    // Mixed pair: normalize the y-vertex by an escape walk; both the
    // direct escape and the mirrored one are valid, keep the shorter.
    const Vertex& yv = (cu == Category::YVertex) ? u : v;
    const Vertex& xv = (cu == Category::YVertex) ? v : u;

    std::vector<Walk> cands;
    {
        EscapeResult esc = escape_y_vertex(ctx, yv);
        ConnectTrace tr;
        Walk w = esc.walk;
        w.append(connect_xx(ctx, esc.endpoint, xv, &tr));
        cands.push_back(std::move(w));
    }
    if (ctx.mirror) {
        // In the mirror view the x-vertex becomes the y-vertex. The
        // resulting walk runs xv -> yv; reverse it so every candidate
        // runs yv -> xv.
        const TwoSumCtx& M = *ctx.mirror;
        Vertex mu(T.mirror_point(xv.coords));
        Vertex mv(T.mirror_point(yv.coords));
        if (M.category_of(mu) == Category::YVertex && M.category_of(mv) == Category::XVertex &&
            M.has_category(Category::XVertex) && M.has_category(Category::YVertex)) {
            EscapeResult esc = escape_y_vertex(M, mu);
            ConnectTrace tr;
            Walk w = esc.walk;
            w.append(connect_xx(M, esc.endpoint, mv, &tr));
            cands.push_back(unmirror_walk(M.inst, w).reversed());
        }
    }
    std::size_t best = 0;
    for (std::size_t t = 1; t < cands.size(); ++t)
        if (cands[t].length() < cands[best].length()) best = t;
    Walk w = cands[best];
    if (cu == Category::XVertex) w = w.reversed();
    return w;
}

Walk connect(const TwoSum& inst, const Vertex& u, const Vertex& v, std::size_t cap) {
    TwoSumCtx ctx(inst, cap);
    return connect(ctx, u, v, nullptr);
}

TwoSumBounds instance_bounds(const TwoSumCtx& ctx) {
    const TwoSum& T = ctx.inst;
    TwoSumBounds b;
    DiameterResult dpa = diameter(ctx.pa_graph);
    DiameterResult dqb = diameter(ctx.qb_graph);
    if (!dpa.connected || !dqb.connected)
        throw IntegrityError("instance_bounds: summand skeleton is disconnected");
    b.d_pa = dpa.value;
    b.d_qb = dqb.value;

    std::map<std::string, std::size_t> seen_y, seen_x;
    for (const auto& v : ctx.graph.verts) {
        Vec y = T.ypart(v.coords);
        std::string key = dot(T.b_row, y).str();
        if (!seen_y.count(key)) {
            DiameterResult d = diameter(build_graph(T.p_of(y), ctx.cap));
            if (!d.connected) throw IntegrityError("instance_bounds: P(y) face disconnected");
            seen_y[key] = d.value;
        }
        Vec x = T.xpart(v.coords);
        key = dot(T.a_row, x).str();
        if (!seen_x.count(key)) {
            DiameterResult d = diameter(build_graph(T.q_of(x), ctx.cap));
            if (!d.connected) throw IntegrityError("instance_bounds: Q(x) face disconnected");
            seen_x[key] = d.value;
        }
    }
    for (auto& [_, d] : seen_y) b.d_abar = std::max(b.d_abar, d);
    for (auto& [_, d] : seen_x) b.d_bbar = std::max(b.d_bbar, d);
    return b;
}

namespace {

// (x, s) vertices of a unit-column system project to x by dropping the
// slack coordinate.
Vec drop_last(const Vec& v) { return Vec(v.begin(), v.end() - 1); }

Vec with_slack(const Vec& x, const Rational& s) {
    Vec v = x;
    v.push_back(s);
    return v;
}

} // namespace

Walk connect_unit(const System& p_abar, const Vertex& u, const Vertex& v, std::size_t cap) {
    if (p_abar.n() == 0) throw ContractError("connect_unit: empty system");
    std::size_t last = p_abar.n() - 1;
    Vec ucol = p_abar.a.col(last);
    std::size_t r0 = p_abar.m();
    for (std::size_t i = 0; i < ucol.size(); ++i) {
        if (ucol[i].is_zero()) continue;
        if (r0 != p_abar.m() || ucol[i] != Rational(1))
            throw ContractError("connect_unit: last column is not a unit column");
        r0 = i;
    }
    if (r0 == p_abar.m()) throw ContractError("connect_unit: last column is zero");
    if (!is_vertex_point(p_abar, u.coords) || !is_vertex_point(p_abar, v.coords))
        throw ContractError("connect_unit: endpoints are not vertices");

    Walk w = single(u);
    if (u == v) return w;

    const Rational ca = p_abar.b[r0];
    Vec arow = p_abar.a.row(r0);
    arow.pop_back();
    auto adot = [&](const Vec& x) { return dot(arow, x); };

    System face = restrict_face(p_abar, {last}); // the tight face, s = 0
    auto face_walk = [&](const Vec& from_x, const Vec& to_x) {
        Walk fw = single(Vertex(with_slack(from_x, Rational(0))));
        if (from_x == to_x) return fw;
        Graph g = build_graph(face, cap);
        auto idx = bfs_path(g, g.index_of(Vertex(from_x)), g.index_of(Vertex(to_x)));
        if (idx.empty()) throw IntegrityError("connect_unit: tight face is disconnected");
        for (std::size_t t = 1; t < idx.size(); ++t)
            fw.push(Vertex(with_slack(g.verts[idx[t]].coords, Rational(0))),
                    {StepRule::Jump, "2.1"});
        return fw;
    };

    if (u.coords[last].is_zero() && v.coords[last].is_zero()) {
        w = face_walk(drop_last(u.coords), drop_last(v.coords));
        return w;
    }

    Graph full; // built lazily, only the mixed case needs it
    auto step_off_face = [&](const Vertex& at) -> Vertex {
        if (full.verts.empty()) full = build_graph(p_abar, cap);
        std::size_t ai = full.index_of(at);
        for (auto nb : full.adj[ai])
            if (!full.verts[nb].coords[last].is_zero()) return full.verts[nb];
        throw IntegrityError("connect_unit: no edge leaves the tight face");
    };

    Vertex uu = u, vv = v;
    Walk suffix; // reversed tail for a mixed v
    if (uu.coords[last].is_zero()) {
        Vertex next = step_off_face(uu);
        w.push(next, {StepRule::Escape, "2.2"});
        uu = next;
    }
    if (vv.coords[last].is_zero()) {
        Vertex next = step_off_face(vv);
        suffix = single(next);
        suffix.push(vv, {StepRule::Escape, "2.2"});
        vv = next;
    }
    if (uu == vv) {
        w.append(suffix);
        return w;
    }

    // Both slacks positive now: lift a path of the row-relaxed system,
    // with one jump across the tight face covering every violation.
    std::vector<std::size_t> drop_row{r0};
    std::vector<std::size_t> keep_rows;
    for (std::size_t i = 0; i < p_abar.m(); ++i)
        if (i != r0) keep_rows.push_back(i);
    Matrix pa_m = p_abar.a.select_rows(keep_rows).drop_cols({last});
    Vec pa_b;
    for (auto i : keep_rows) pa_b.push_back(p_abar.b[i]);
    System pa_sys(pa_m, pa_b, "P_A");

    Graph pg = build_graph(pa_sys, cap);
    auto idx = bfs_path(pg, pg.index_of(Vertex(drop_last(uu.coords))),
                        pg.index_of(Vertex(drop_last(vv.coords))));
    if (idx.empty()) throw IntegrityError("connect_unit: relaxed system is disconnected");
    auto path = path_points(pg, idx);
    auto aval = [&](std::size_t t) { return adot(path[t]); };

    std::size_t k = path.size() - 1;
    std::size_t t = 0;
    while (t < k) {
        if (aval(t + 1) <= ca) {
            w.push(Vertex(with_slack(path[t + 1], ca - aval(t + 1))), {StepRule::Lift, "1.1"});
            ++t;
            continue;
        }
        // First violation: cross onto the face, jump to the last
        // crossing, then step back off.
        Vec xi = point_between(path[t], path[t + 1], aval(t), aval(t + 1), ca);
        w.push(Vertex(with_slack(xi, Rational(0))), {StepRule::Lift, "1.1"});
        std::size_t j = t + 1;
        for (std::size_t q2 = t + 1; q2 < k; ++q2)
            if (aval(q2) > ca) j = q2;
        Vec xj = point_between(path[j], path[j + 1], aval(j), aval(j + 1), ca);
        Walk fw = face_walk(xi, xj);
        w.append(fw);
        w.push(Vertex(with_slack(path[j + 1], ca - aval(j + 1))), {StepRule::Lift, "2.3"});
        t = j + 1;
    }
    w.append(suffix);
    return w;
}

} // namespace polysum
