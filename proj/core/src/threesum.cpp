#include "polysum/threesum.hpp"

#include "polysum/errors.hpp"

#include <algorithm>

namespace polysum {

void ThreeSum::validate() const {
    if (a1_row.size() != a2_row.size() || b1_row.size() != b2_row.size())
        throw ContractError("3-sum: shared row length mismatch");
    if (a_block.rows() != c_a.size() || b_block.rows() != c_b.size())
        throw ContractError("3-sum: rhs length mismatch");
    Matrix shared(2, nx() + ny());
    for (std::size_t j = 0; j < nx(); ++j) {
        shared.at(0, j) = a1_row[j];
        shared.at(1, j) = a2_row[j];
    }
    for (std::size_t j = 0; j < ny(); ++j) {
        shared.at(0, nx() + j) = b1_row[j];
        shared.at(1, nx() + j) = b2_row[j];
    }
    if (rank(shared) != 2)
        throw ContractError("3-sum: shared rows are linearly dependent");
    if (split_ca1 + split_cb1 != c1_shared || split_ca2 + split_cb2 != c2_shared)
        throw ContractError("3-sum: splits do not sum to the shared rhs");
}

System ThreeSum::assembled() const {
    std::size_t ma = a_block.rows(), mb = b_block.rows();
    Matrix m(ma + 2 + mb, nx() + ny());
    for (std::size_t i = 0; i < ma; ++i)
        for (std::size_t j = 0; j < nx(); ++j) m.at(i, j) = a_block.at(i, j);
    for (std::size_t j = 0; j < nx(); ++j) {
        m.at(ma, j) = a1_row[j];
        m.at(ma + 1, j) = a2_row[j];
    }
    for (std::size_t j = 0; j < ny(); ++j) {
        m.at(ma, nx() + j) = b1_row[j];
        m.at(ma + 1, nx() + j) = b2_row[j];
    }
    for (std::size_t i = 0; i < mb; ++i)
        for (std::size_t j = 0; j < ny(); ++j) m.at(ma + 2 + i, nx() + j) = b_block.at(i, j);
    Vec rhs = c_a;
    rhs.push_back(c1_shared);
    rhs.push_back(c2_shared);
    rhs.insert(rhs.end(), c_b.begin(), c_b.end());
    return System(std::move(m), std::move(rhs), "3sum");
}

System ThreeSum::pa() const { return System(a_block, c_a, "P_A"); }
System ThreeSum::qb() const { return System(b_block, c_b, "Q_B"); }

System ThreeSum::q_of(const Vec& x) const {
    Matrix m(2 + b_block.rows(), ny());
    for (std::size_t j = 0; j < ny(); ++j) {
        m.at(0, j) = b1_row[j];
        m.at(1, j) = b2_row[j];
    }
    for (std::size_t i = 0; i < b_block.rows(); ++i)
        for (std::size_t j = 0; j < ny(); ++j) m.at(2 + i, j) = b_block.at(i, j);
    Vec rhs{c1_shared - dot(a1_row, x), c2_shared - dot(a2_row, x)};
    rhs.insert(rhs.end(), c_b.begin(), c_b.end());
    return System(std::move(m), std::move(rhs), "Q(x)");
}

System ThreeSum::p_of(const Vec& y) const {
    Matrix m(a_block.rows() + 2, nx());
    for (std::size_t i = 0; i < a_block.rows(); ++i)
        for (std::size_t j = 0; j < nx(); ++j) m.at(i, j) = a_block.at(i, j);
    for (std::size_t j = 0; j < nx(); ++j) {
        m.at(a_block.rows(), j) = a1_row[j];
        m.at(a_block.rows() + 1, j) = a2_row[j];
    }
    Vec rhs = c_a;
    rhs.push_back(c1_shared - dot(b1_row, y));
    rhs.push_back(c2_shared - dot(b2_row, y));
    return System(std::move(m), std::move(rhs), "P(y)");
}

Vec ThreeSum::xpart(const Vec& full) const {
    if (full.size() != nx() + ny()) throw ContractError("xpart: wrong point length");
    return Vec(full.begin(), full.begin() + static_cast<long>(nx()));
}

Vec ThreeSum::ypart(const Vec& full) const {
    if (full.size() != nx() + ny()) throw ContractError("ypart: wrong point length");
    return Vec(full.begin() + static_cast<long>(nx()), full.end());
}

Vec ThreeSum::join(const Vec& x, const Vec& y) const {
    Vec full = x;
    full.insert(full.end(), y.begin(), y.end());
    return full;
}

namespace {

struct LeftBlocks {
    Matrix a;
    Vec acol;  // duplicated distinguished column
    Vec crow;  // bottom row over the A columns
};

struct RightBlocks {
    Matrix b;
    Vec brow;  // top row over the B columns
    Vec dcol;  // duplicated distinguished column
};

LeftBlocks split_left(const Matrix& left) {
    if (left.rows() < 1 || left.cols() < 2)
        throw ContractError("matrix 3-sum: left block too small");
    std::size_t ma = left.rows() - 1, na = left.cols() - 2;
    for (std::size_t i = 0; i < ma; ++i)
        if (left.at(i, na) != left.at(i, na + 1))
            throw ContractError("matrix 3-sum: left distinguished columns differ");
    if (!left.at(ma, na).is_zero() || left.at(ma, na + 1) != Rational(1))
        throw ContractError("matrix 3-sum: left bottom row must end (0, 1)");
    LeftBlocks lb;
    lb.a = Matrix(ma, na);
    lb.acol.resize(ma);
    lb.crow.resize(na);
    for (std::size_t i = 0; i < ma; ++i) {
        for (std::size_t j = 0; j < na; ++j) lb.a.at(i, j) = left.at(i, j);
        lb.acol[i] = left.at(i, na);
    }
    for (std::size_t j = 0; j < na; ++j) lb.crow[j] = left.at(ma, j);
    return lb;
}

RightBlocks split_right(const Matrix& right) {
    if (right.rows() < 1 || right.cols() < 2)
        throw ContractError("matrix 3-sum: right block too small");
    std::size_t mb = right.rows() - 1, nb = right.cols() - 2;
    if (right.at(0, 0) != Rational(1) || !right.at(0, 1).is_zero())
        throw ContractError("matrix 3-sum: right top row must start (1, 0)");
    for (std::size_t i = 0; i < mb; ++i)
        if (right.at(i + 1, 0) != right.at(i + 1, 1))
            throw ContractError("matrix 3-sum: right distinguished columns differ");
    RightBlocks rb;
    rb.b = Matrix(mb, nb);
    rb.brow.resize(nb);
    rb.dcol.resize(mb);
    for (std::size_t i = 0; i < mb; ++i) {
        for (std::size_t j = 0; j < nb; ++j) rb.b.at(i, j) = right.at(i + 1, j + 2);
        rb.dcol[i] = right.at(i + 1, 0);
    }
    for (std::size_t j = 0; j < nb; ++j) rb.brow[j] = right.at(0, j + 2);
    return rb;
}

} // namespace

Matrix matrix_three_sum(const Matrix& left, const Matrix& right) {
    LeftBlocks lb = split_left(left);
    RightBlocks rb = split_right(right);
    std::size_t ma = lb.a.rows(), na = lb.a.cols();
    std::size_t mb = rb.b.rows(), nb = rb.b.cols();
    Matrix out(ma + mb, na + nb);
    for (std::size_t i = 0; i < ma; ++i) {
        for (std::size_t j = 0; j < na; ++j) out.at(i, j) = lb.a.at(i, j);
        for (std::size_t j = 0; j < nb; ++j) out.at(i, na + j) = lb.acol[i] * rb.brow[j];
    }
    for (std::size_t i = 0; i < mb; ++i) {
        for (std::size_t j = 0; j < na; ++j) out.at(ma + i, j) = rb.dcol[i] * lb.crow[j];
        for (std::size_t j = 0; j < nb; ++j) out.at(ma + i, na + j) = rb.b.at(i, j);
    }
    return out;
}

ThreeSum poly_three_sum(const System& p, const System& q) {
    LeftBlocks lb = split_left(p.a);
    RightBlocks rb = split_right(q.a);
    if (is_zero(lb.acol) || is_zero(rb.brow) || is_zero(lb.crow) || is_zero(rb.dcol))
        throw ContractError("poly 3-sum: distinguished data must be nonzero");
    std::size_t ma = lb.a.rows(), na = lb.a.cols();
    std::size_t mb = rb.b.rows(), nb = rb.b.cols();
    if (p.b.size() != ma + 1 || q.b.size() != mb + 1)
        throw ContractError("poly 3-sum: rhs shape mismatch");
    Rational ca = p.b[ma], cb = q.b[0];

    // Assembled Def-form blocks with rhs (c_A + a*cb, c_B + d*ca).
    Matrix top(ma, na);
    Vec trhs(ma);
    for (std::size_t i = 0; i < ma; ++i) {
        for (std::size_t j = 0; j < na; ++j) top.at(i, j) = lb.a.at(i, j);
        trhs[i] = p.b[i] + lb.acol[i] * cb;
    }
    Matrix bot(mb, nb);
    Vec brhs(mb);
    for (std::size_t i = 0; i < mb; ++i) {
        for (std::size_t j = 0; j < nb; ++j) bot.at(i, j) = rb.b.at(i, j);
        brhs[i] = q.b[i + 1] + rb.dcol[i] * ca;
    }

    // Eliminate the rank-1 couplings into one shared row per side.
    std::size_t pi = 0;
    while (pi < ma && lb.acol[pi].is_zero()) ++pi;
    if (pi == ma) throw ContractError("poly 3-sum: distinguished column is zero");
    for (std::size_t i = 0; i < ma; ++i) {
        if (i == pi || lb.acol[i].is_zero()) continue;
        Rational f = lb.acol[i] / lb.acol[pi];
        for (std::size_t j = 0; j < na; ++j) top.at(i, j) -= f * top.at(pi, j);
        trhs[i] -= f * trhs[pi];
    }
    std::size_t qi = 0;
    while (qi < mb && rb.dcol[qi].is_zero()) ++qi;
    if (qi == mb) throw ContractError("poly 3-sum: right distinguished column is zero");
    for (std::size_t i = 0; i < mb; ++i) {
        if (i == qi || rb.dcol[i].is_zero()) continue;
        Rational f = rb.dcol[i] / rb.dcol[qi];
        for (std::size_t j = 0; j < nb; ++j) bot.at(i, j) -= f * bot.at(qi, j);
        brhs[i] -= f * brhs[qi];
    }

    ThreeSum inst;
    Rational ainv = Rational(1) / lb.acol[pi];
    inst.a1_row = scale(ainv, top.row(pi));
    inst.b1_row = rb.brow;
    inst.c1_shared = ainv * trhs[pi];
    inst.split_cb1 = cb;
    inst.split_ca1 = inst.c1_shared - cb;

    Rational dinv = Rational(1) / rb.dcol[qi];
    inst.a2_row = lb.crow;
    inst.b2_row = scale(dinv, bot.row(qi));
    inst.c2_shared = dinv * brhs[qi];
    inst.split_ca2 = ca;
    inst.split_cb2 = inst.c2_shared - ca;

    std::vector<std::size_t> arows, brows;
    for (std::size_t i = 0; i < ma; ++i)
        if (i != pi) arows.push_back(i);
    for (std::size_t i = 0; i < mb; ++i)
        if (i != qi) brows.push_back(i);
    inst.a_block = top.select_rows(arows);
    if (inst.a_block.rows() == 0) inst.a_block = Matrix(0, na);
    inst.b_block = bot.select_rows(brows);
    if (inst.b_block.rows() == 0) inst.b_block = Matrix(0, nb);
    for (auto i : arows) inst.c_a.push_back(trhs[i]);
    for (auto i : brows) inst.c_b.push_back(brhs[i]);
    inst.validate();

    // The reduction used invertible row operations only; the assembled
    // Def-form system and the reduced form must have equal solution
    // sets, which for equal-rank augmented systems is row-space
    // equality.
    {
        Matrix orig(ma + mb, na + nb + 1);
        for (std::size_t i = 0; i < ma; ++i) {
            for (std::size_t j = 0; j < na; ++j) orig.at(i, j) = lb.a.at(i, j);
            for (std::size_t j = 0; j < nb; ++j) orig.at(i, na + j) = lb.acol[i] * rb.brow[j];
            orig.at(i, na + nb) = p.b[i] + lb.acol[i] * cb;
        }
        for (std::size_t i = 0; i < mb; ++i) {
            for (std::size_t j = 0; j < na; ++j) orig.at(ma + i, j) = rb.dcol[i] * lb.crow[j];
            for (std::size_t j = 0; j < nb; ++j) orig.at(ma + i, na + j) = rb.b.at(i, j);
            orig.at(ma + i, na + nb) = q.b[i + 1] + rb.dcol[i] * ca;
        }
        System red = inst.assembled();
        Matrix redaug(red.m(), red.n() + 1);
        for (std::size_t i = 0; i < red.m(); ++i) {
            for (std::size_t j = 0; j < red.n(); ++j) redaug.at(i, j) = red.a.at(i, j);
            redaug.at(i, red.n()) = red.b[i];
        }
        std::size_t r1 = rank(orig), r2 = rank(redaug);
        if (r1 != r2 || rank(orig.vstack(redaug)) != r1)
            throw IntegrityError("poly 3-sum: reduction changed the solution set");
    }
    return inst;
}

const char* category3_name(Category3 c) {
    switch (c) {
        case Category3::XVertex: return "x-vertex";
        case Category3::YVertex: return "y-vertex";
        case Category3::Mixed: return "mixed";
    }
    return "?";
}

Category3 classify3(const ThreeSum& inst, const Vertex& v) {
    Vec x = inst.xpart(v.coords), y = inst.ypart(v.coords);
    if (is_vertex_point(inst.pa(), x)) return Category3::XVertex;
    if (is_vertex_point(inst.qb(), y)) return Category3::YVertex;
    auto sx = support_of(x), sy = support_of(y);
    std::size_t nult_x = sx.size() - rank(inst.a_block.select_cols(sx));
    std::size_t nult_y = sy.size() - rank(inst.b_block.select_cols(sy));
    if (nult_x == 1 && nult_y == 1) return Category3::Mixed;
    throw IntegrityError("classify3: a projection lies on a face of dimension >= 2");
}

int orient2d(const Point2& p, const Point2& q, const Point2& r) {
    Rational det = (q.first - p.first) * (r.second - p.second) -
                   (q.second - p.second) * (r.first - p.first);
    return det.sign();
}

std::vector<Point2> convex_hull_ccw(std::vector<Point2> pts) {
    std::sort(pts.begin(), pts.end(), [](const Point2& a, const Point2& b) {
        if (a.first != b.first) return a.first < b.first;
        return a.second < b.second;
    });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() <= 2) return pts;
    std::vector<Point2> hull;
    // lower then upper chain; strict left turns only, so no stored
    // collinear triples
    auto build = [&](auto begin, auto end) {
        std::size_t base = hull.size();
        for (auto it = begin; it != end; ++it) {
            while (hull.size() >= base + 2 &&
                   orient2d(hull[hull.size() - 2], hull[hull.size() - 1], *it) <= 0)
                hull.pop_back();
            hull.push_back(*it);
        }
    };
    build(pts.begin(), pts.end());
    hull.pop_back();
    std::size_t lower = hull.size();
    build(pts.rbegin(), pts.rend());
    hull.pop_back();
    if (hull.size() == lower) // all collinear: keep the two extremes
        return {pts.front(), pts.back()};
    return hull;
}

bool BandPolygon::contains(const Point2& p) const {
    if (vertices.empty()) return false;
    if (vertices.size() == 1) return vertices[0] == p;
    if (vertices.size() == 2) {
        if (orient2d(vertices[0], vertices[1], p) != 0) return false;
        auto [lox, hix] = std::minmax(vertices[0].first, vertices[1].first);
        auto [loy, hiy] = std::minmax(vertices[0].second, vertices[1].second);
        return lox <= p.first && p.first <= hix && loy <= p.second && p.second <= hiy;
    }
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        const Point2& a = vertices[i];
        const Point2& b = vertices[(i + 1) % vertices.size()];
        if (orient2d(a, b, p) < 0) return false;
    }
    return true;
}

BandPolygon band_x3(const ThreeSum& inst, const Vec& y) {
    if (!is_feasible_point(inst.qb(), y))
        throw ContractError("band_x3: y is not feasible for Q_B");
    auto supp = support_of(y);
    System face(inst.b_block.select_cols(supp), inst.c_b, "face");
    // faces of an admitted instance never refuse
    auto verts = enumerate_vertices(face, std::max(supp.size(), kDefaultEnumCap));
    if (verts.empty())
        throw IntegrityError("band_x3: restricted face has no vertices despite feasible y");
    Vec b1s, b2s;
    for (auto j : supp) {
        b1s.push_back(inst.b1_row[j]);
        b2s.push_back(inst.b2_row[j]);
    }
    std::vector<Point2> pts;
    pts.reserve(verts.size());
    for (const auto& v : verts)
        pts.emplace_back(inst.c1_shared - dot(b1s, v.coords),
                         inst.c2_shared - dot(b2s, v.coords));
    BandPolygon poly;
    poly.support = supp;
    poly.vertices = convex_hull_ccw(std::move(pts));
    return poly;
}

Lift3Outcome lift_step3(const ThreeSum& inst, const Vertex& at, const Vec& target_x,
                        std::size_t cap) {
    if (classify3(inst, at) != Category3::XVertex)
        throw ContractError("lift_step3: origin is not an x-vertex");
    System pa = inst.pa();
    Vec x = inst.xpart(at.coords);
    if (!is_vertex_point(pa, target_x) || x == target_x ||
        !are_adjacent(pa, Vertex(x), Vertex(target_x)))
        throw ContractError("lift_step3: target not adjacent to origin in P_A");

    Vec y = inst.ypart(at.coords);
    BandPolygon poly = band_x3(inst, y);
    Point2 pt{dot(inst.a1_row, target_x), dot(inst.a2_row, target_x)};
    Lift3Outcome out;
    if (!poly.contains(pt)) return out;

    // Unique in the simple case; otherwise the lexicographic-smallest
    // vertex of the pinned subface keeps the outcome deterministic.
    auto supp = support_of(y);
    Matrix sub = inst.b_block.select_cols(supp);
    Matrix pinned(sub.rows() + 2, supp.size());
    for (std::size_t i = 0; i < sub.rows(); ++i)
        for (std::size_t j = 0; j < supp.size(); ++j) pinned.at(i, j) = sub.at(i, j);
    for (std::size_t j = 0; j < supp.size(); ++j) {
        pinned.at(sub.rows(), j) = inst.b1_row[supp[j]];
        pinned.at(sub.rows() + 1, j) = inst.b2_row[supp[j]];
    }
    Vec rhs = inst.c_b;
    rhs.push_back(inst.c1_shared - pt.first);
    rhs.push_back(inst.c2_shared - pt.second);
    auto verts = enumerate_vertices(System(pinned, rhs, "pinned"),
                                    std::max({supp.size(), cap, kDefaultEnumCap}));
    if (verts.empty())
        throw IntegrityError("lift_step3: band membership without a feasible partner");
    Vec ystar = embed_face_point(verts.front().coords, supp, inst.ny());
    out.liftable = true;
    out.vertex = Vertex(inst.join(target_x, ystar));
    return out;
}

Walk connect_same_x3(const ThreeSum& inst, const Vertex& u, const Vertex& v, std::size_t cap) {
    Vec xu = inst.xpart(u.coords);
    if (!(xu == inst.xpart(v.coords)))
        throw ContractError("connect_same_x3: x projections differ");
    Walk w;
    w.verts.push_back(u);
    if (u == v) return w;
    System qx = inst.q_of(xu);
    Graph g = build_graph(qx, cap);
    auto path = bfs_path(g, g.index_of(Vertex(inst.ypart(u.coords))),
                         g.index_of(Vertex(inst.ypart(v.coords))));
    if (path.empty()) throw IntegrityError("connect_same_x3: Q(x) face is disconnected");
    for (std::size_t k = 1; k < path.size(); ++k)
        w.push(Vertex(inst.join(xu, g.verts[path[k]].coords)), {StepRule::SameX, "2.1"});
    return w;
}

} // namespace polysum
