#include "polysum/twosum.hpp"

#include "polysum/errors.hpp"
#include "twosum_internal.hpp"

#include <algorithm>

namespace polysum {

void TwoSum::validate() const {
    if (is_zero(a_row) || is_zero(b_row))
        throw ContractError("2-sum requires nonzero shared-row parts");
    if (a_block.cols() != nx() && a_block.rows() > 0)
        throw ContractError("2-sum: A column count does not match a_row");
    if (b_block.cols() != ny() && b_block.rows() > 0)
        throw ContractError("2-sum: B column count does not match b_row");
    if (a_block.rows() != c_a.size()) throw ContractError("2-sum: c_A length mismatch");
    if (b_block.rows() != c_b.size()) throw ContractError("2-sum: c_B length mismatch");
    if (split_ca + split_cb != c_shared)
        throw ContractError("2-sum: split does not sum to the shared rhs");
}

System TwoSum::assembled() const {
    std::size_t ma = a_block.rows(), mb = b_block.rows();
    Matrix m(ma + 1 + mb, nx() + ny());
    for (std::size_t i = 0; i < ma; ++i)
        for (std::size_t j = 0; j < nx(); ++j) m.at(i, j) = a_block.at(i, j);
    for (std::size_t j = 0; j < nx(); ++j) m.at(ma, j) = a_row[j];
    for (std::size_t j = 0; j < ny(); ++j) m.at(ma, nx() + j) = b_row[j];
    for (std::size_t i = 0; i < mb; ++i)
        for (std::size_t j = 0; j < ny(); ++j) m.at(ma + 1 + i, nx() + j) = b_block.at(i, j);
    Vec rhs = c_a;
    rhs.push_back(c_shared);
    rhs.insert(rhs.end(), c_b.begin(), c_b.end());
    return System(std::move(m), std::move(rhs), "2sum");
}

System TwoSum::pa() const { return System(a_block, c_a, "P_A"); }
System TwoSum::qb() const { return System(b_block, c_b, "Q_B"); }

System TwoSum::p_of(const Vec& y) const {
    Matrix m(a_block.rows() + 1, nx());
    for (std::size_t i = 0; i < a_block.rows(); ++i)
        for (std::size_t j = 0; j < nx(); ++j) m.at(i, j) = a_block.at(i, j);
    for (std::size_t j = 0; j < nx(); ++j) m.at(a_block.rows(), j) = a_row[j];
    Vec rhs = c_a;
    rhs.push_back(c_shared - dot(b_row, y));
    return System(std::move(m), std::move(rhs), "P(y)");
}

System TwoSum::q_of(const Vec& x) const {
    Matrix m(1 + b_block.rows(), ny());
    for (std::size_t j = 0; j < ny(); ++j) m.at(0, j) = b_row[j];
    for (std::size_t i = 0; i < b_block.rows(); ++i)
        for (std::size_t j = 0; j < ny(); ++j) m.at(1 + i, j) = b_block.at(i, j);
    Vec rhs{c_shared - dot(a_row, x)};
    rhs.insert(rhs.end(), c_b.begin(), c_b.end());
    return System(std::move(m), std::move(rhs), "Q(x)");
}

Vec TwoSum::xpart(const Vec& full) const {
    if (full.size() != nx() + ny()) throw ContractError("xpart: wrong point length");
    return Vec(full.begin(), full.begin() + static_cast<long>(nx()));
}

Vec TwoSum::ypart(const Vec& full) const {
    if (full.size() != nx() + ny()) throw ContractError("ypart: wrong point length");
    return Vec(full.begin() + static_cast<long>(nx()), full.end());
}

Vec TwoSum::join(const Vec& x, const Vec& y) const {
    if (x.size() != nx() || y.size() != ny()) throw ContractError("join: wrong part lengths");
    Vec full = x;
    full.insert(full.end(), y.begin(), y.end());
    return full;
}

TwoSum TwoSum::mirrored() const {
    return TwoSum{b_block, b_row, a_row, a_block, c_b, c_shared, c_a, split_cb, split_ca};
}

Vec TwoSum::mirror_point(const Vec& full) const {
    Vec m = ypart(full);
    Vec x = xpart(full);
    m.insert(m.end(), x.begin(), x.end());
    return m;
}

MatrixTwoSumResult matrix_two_sum(const Matrix& left, const Matrix& right) {
    if (left.cols() == 0) throw ContractError("matrix 2-sum: left has no distinguished column");
    if (right.rows() == 0) throw ContractError("matrix 2-sum: right has no distinguished row");
    std::size_t na = left.cols() - 1;
    Vec a = left.col(na);
    Vec b = right.row(0);
    MatrixTwoSumResult res;
    res.zero_coupling = is_zero(a) || is_zero(b);

    std::size_t mb = right.rows() - 1;
    Matrix out(left.rows() + mb, na + right.cols());
    for (std::size_t i = 0; i < left.rows(); ++i) {
        for (std::size_t j = 0; j < na; ++j) out.at(i, j) = left.at(i, j);
        for (std::size_t j = 0; j < right.cols(); ++j) out.at(i, na + j) = a[i] * b[j];
    }
    for (std::size_t i = 0; i < mb; ++i)
        for (std::size_t j = 0; j < right.cols(); ++j) out.at(left.rows() + i, na + j) = right.at(i + 1, j);
    res.m = std::move(out);
    return res;
}

TwoSum poly_two_sum(const System& p, const System& q) {
    if (p.n() == 0) throw ContractError("poly 2-sum: left summand has no columns");
    if (q.m() == 0) throw ContractError("poly 2-sum: right summand has no rows");
    std::size_t na = p.n() - 1;
    Vec a = p.a.col(na);
    Vec b = q.a.row(0);
    if (is_zero(a))
        throw ContractError("poly 2-sum: distinguished column is zero (assumed nonzero)");
    if (is_zero(b))
        throw ContractError("poly 2-sum: distinguished row is zero (assumed nonzero)");

    Rational cb = q.b[0];
    // Def-form top block: [A | a*b], rhs c_A + a*cb.
    std::size_t mt = p.m();
    Matrix top(mt, na);
    Vec trhs(mt);
    for (std::size_t i = 0; i < mt; ++i) {
        for (std::size_t j = 0; j < na; ++j) top.at(i, j) = p.a.at(i, j);
        trhs[i] = p.b[i] + a[i] * cb;
    }
    // Row-reduce the rank-1 coupling to a single shared row: pick the
    // first row with a_i != 0, clear a elsewhere, then normalize it.
    std::size_t piv = 0;
    while (a[piv].is_zero()) ++piv;
    for (std::size_t i = 0; i < mt; ++i) {
        if (i == piv || a[i].is_zero()) continue;
        Rational f = a[i] / a[piv];
        for (std::size_t j = 0; j < na; ++j) top.at(i, j) -= f * top.at(piv, j);
        trhs[i] -= f * trhs[piv];
    }
    Rational inv = Rational(1) / a[piv];

    TwoSum inst;
    inst.a_row = scale(inv, top.row(piv));
    inst.b_row = b;
    inst.c_shared = inv * trhs[piv];
    std::vector<std::size_t> rest;
    for (std::size_t i = 0; i < mt; ++i)
        if (i != piv) rest.push_back(i);
    inst.a_block = top.select_rows(rest);
    inst.c_a.reserve(rest.size());
    for (auto i : rest) inst.c_a.push_back(trhs[i]);
    if (inst.a_block.rows() == 0) inst.a_block = Matrix(0, na);

    std::vector<std::size_t> brows;
    for (std::size_t i = 1; i < q.m(); ++i) brows.push_back(i);
    inst.b_block = q.a.select_rows(brows);
    if (inst.b_block.rows() == 0) inst.b_block = Matrix(0, q.n());
    inst.c_b.assign(q.b.begin() + 1, q.b.end());

    inst.split_cb = cb;
    inst.split_ca = inst.c_shared - cb;
    inst.validate();
    return inst;
}

TwoSumSummands decompose(const TwoSum& inst) {
    std::size_t ma = inst.a_block.rows();
    Matrix pm(ma + 1, inst.nx() + 1);
    for (std::size_t i = 0; i < ma; ++i)
        for (std::size_t j = 0; j < inst.nx(); ++j) pm.at(i, j) = inst.a_block.at(i, j);
    for (std::size_t j = 0; j < inst.nx(); ++j) pm.at(ma, j) = inst.a_row[j];
    pm.at(ma, inst.nx()) = Rational(1);
    Vec prhs = inst.c_a;
    prhs.push_back(inst.split_ca);

    Matrix qm(1 + inst.b_block.rows(), inst.ny());
    for (std::size_t j = 0; j < inst.ny(); ++j) qm.at(0, j) = inst.b_row[j];
    for (std::size_t i = 0; i < inst.b_block.rows(); ++i)
        for (std::size_t j = 0; j < inst.ny(); ++j) qm.at(1 + i, j) = inst.b_block.at(i, j);
    Vec qrhs{inst.split_cb};
    qrhs.insert(qrhs.end(), inst.c_b.begin(), inst.c_b.end());

    return TwoSumSummands{System(std::move(pm), std::move(prhs), "P"),
                          System(std::move(qm), std::move(qrhs), "Q")};
}

Category classify(const TwoSum& inst, const Vertex& v) {
    Vec x = inst.xpart(v.coords);
    if (is_vertex_point(inst.pa(), x)) return Category::XVertex;
    Vec y = inst.ypart(v.coords);
    if (is_vertex_point(inst.qb(), y)) return Category::YVertex;
    throw IntegrityError("classify: neither projection is a vertex of its summand view");
}

namespace {

// Support-restricted face of Q_B as a small system over the support
// columns, plus the b values needed for band endpoints.
struct RestrictedFace {
    std::vector<std::size_t> support;
    System sys;                  ///< {z : B_S z = c_B, z >= 0} over |S| coords
    std::vector<Vertex> verts;   ///< its vertices (embedded coords are partial)
    Vec b_s;                     ///< b restricted to S
};

// Support-restricted faces are structurally bounded by an instance the
// caller already admitted, so their enumerations use their own column
// count as the cap and never refuse.
RestrictedFace restricted_face(const Matrix& b_block, const Vec& c_b, const Vec& b_row,
                               const Vec& y) {
    RestrictedFace f;
    f.support = support_of(y);
    f.sys = System(b_block.select_cols(f.support), c_b, "face");
    f.verts = enumerate_vertices(f.sys, std::max(f.support.size(), kDefaultEnumCap));
    f.b_s.reserve(f.support.size());
    for (auto j : f.support) f.b_s.push_back(b_row[j]);
    return f;
}

// Rays of the recession cone {w >= 0 : M w = 0}, one representative per
// extreme ray, found as vertices of the slice sum(w) = 1.
std::vector<Vec> recession_rays(const Matrix& m) {
    Matrix hom(m.rows() + 1, m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) hom.at(i, j) = m.at(i, j);
    for (std::size_t j = 0; j < m.cols(); ++j) hom.at(m.rows(), j) = Rational(1);
    Vec rhs(m.rows());
    rhs.push_back(Rational(1));
    std::vector<Vec> rays;
    for (const auto& v : enumerate_vertices(System(hom, rhs, "rays"),
                                            std::max(m.cols(), kDefaultEnumCap)))
        rays.push_back(v.coords);
    return rays;
}

} // namespace

BandInterval band_x(const TwoSum& inst, const Vec& y) {
    if (!is_feasible_point(inst.qb(), y))
        throw ContractError("band: y is not feasible for Q_B");
    RestrictedFace f = restricted_face(inst.b_block, inst.c_b, inst.b_row, y);
    if (f.verts.empty())
        throw IntegrityError("band: restricted face has no vertices despite feasible y");
    for (const auto& ray : recession_rays(f.sys.a))
        if (!dot(f.b_s, ray).is_zero())
            throw IntegrityError("band: restricted face is unbounded in the shared direction");

    const Vertex* at_min = &f.verts.front();
    const Vertex* at_max = &f.verts.front();
    Rational bmin = dot(f.b_s, at_min->coords), bmax = bmin;
    for (const auto& v : f.verts) {
        Rational bv = dot(f.b_s, v.coords);
        if (bv < bmin || (bv == bmin && lex_less(v, *at_min))) { bmin = bv; at_min = &v; }
        if (bv > bmax || (bv == bmax && lex_less(v, *at_max))) { bmax = bv; at_max = &v; }
    }
    BandInterval band;
    band.support = f.support;
    band.lo = inst.c_shared - bmax;
    band.hi = inst.c_shared - bmin;
    band.z_at_lo = embed_face_point(at_max->coords, f.support, inst.ny());
    band.z_at_hi = embed_face_point(at_min->coords, f.support, inst.ny());
    return band;
}

BandInterval band_y(const TwoSum& inst, const Vec& x) {
    return band_x(inst.mirrored(), x);
}

namespace detail {

Vec point_between(const Vec& p, const Vec& q, const Rational& fp, const Rational& fq,
                  const Rational& target) {
    if (target == fp) return p;
    Rational t = (target - fp) / (fq - fp);
    Vec r(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) r[i] = p[i] + t * (q[i] - p[i]);
    return r;
}

Vec face_point_at_value(const TwoSum& inst, const BandInterval& band,
                        const Rational& shared_value) {
    // shared_value = c - b.z  =>  b.z = c - shared_value
    Rational target = inst.c_shared - shared_value;
    Rational at_lo = dot(inst.b_row, band.z_at_lo); // max b.z
    Rational at_hi = dot(inst.b_row, band.z_at_hi); // min b.z
    if (target == at_hi) return band.z_at_hi;
    if (target == at_lo) return band.z_at_lo;
    if (at_lo == at_hi)
        throw IntegrityError("band: no point attains the requested shared value");
    return point_between(band.z_at_hi, band.z_at_lo, at_hi, at_lo, target);
}

// Unchecked lift against a precomputed band; `at` must be feasible with
// y support inside band.support.
LiftOutcome lift_step_banded(const TwoSum& inst, const Vertex& at, const Vec& target_x,
                             const BandInterval& band) {
    Vec x = inst.xpart(at.coords);
    Rational alpha = dot(inst.a_row, target_x);
    LiftOutcome out;
    if (band.contains(alpha)) {
        out.kind = LiftOutcome::Kind::Lifted;
        Vec y2 = face_point_at_value(inst, band, alpha);
        out.vertex = Vertex(inst.join(target_x, y2));
        return out;
    }
    out.kind = LiftOutcome::Kind::Terminated;
    Rational ax = dot(inst.a_row, x);
    Rational boundary;
    if (alpha > band.hi) {
        out.side = LiftOutcome::Side::AboveHi;
        boundary = band.hi;
        out.terminal_y = band.z_at_hi;
    } else {
        out.side = LiftOutcome::Side::BelowLo;
        boundary = band.lo;
        out.terminal_y = band.z_at_lo;
    }
    Vec xcross = point_between(x, target_x, ax, alpha, boundary);
    out.vertex = Vertex(inst.join(xcross, out.terminal_y));
    return out;
}

} // namespace detail

LiftOutcome lift_step(const TwoSum& inst, const Vertex& at, const Vec& target_x) {
    if (classify(inst, at) != Category::XVertex)
        throw ContractError("lift_step: origin is not an x-vertex");
    Vec x = inst.xpart(at.coords);
    System pa = inst.pa();
    if (!is_vertex_point(pa, target_x))
        throw ContractError("lift_step: target is not a vertex of P_A");
    if (x == target_x) throw ContractError("lift_step: target equals origin");
    if (!are_adjacent(pa, Vertex(x), Vertex(target_x)))
        throw ContractError("lift_step: target not adjacent to origin in P_A");
    BandInterval band = band_x(inst, inst.ypart(at.coords));
    return detail::lift_step_banded(inst, at, target_x, band);
}

LiftWalkResult lift_walk(const TwoSum& inst, const Vertex& at, const std::vector<Vec>& path) {
    LiftWalkResult res;
    res.walk.verts.push_back(at);
    if (path.empty()) return res;
    if (!(path.front() == inst.xpart(at.coords)))
        throw ContractError("lift_walk: path must start at the origin's x projection");
    Vertex cur = at;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        LiftOutcome out = lift_step(inst, cur, path[i + 1]);
        res.walk.push(out.vertex, {StepRule::Lift, "1.1"});
        if (!out.lifted()) {
            res.completed = false;
            res.stopped_at = i;
            res.termination = out;
            return res;
        }
        cur = out.vertex;
    }
    return res;
}

System append_unit_column(const System& p, std::size_t row) {
    if (row >= p.m()) throw ContractError("append_unit_column: row out of range");
    Matrix unit(p.m(), 1);
    unit.at(row, 0) = Rational(1);
    System out(p.a.hstack(unit), p.b, p.name.empty() ? "" : p.name + "+unit");
    return out;
}

} // namespace polysum
