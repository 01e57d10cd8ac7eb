#include "polysum/fixtures.hpp"

#include "polysum/errors.hpp"
#include "polysum/generator.hpp"

namespace polysum::fixtures {

TwoSum fix1() {
    TwoSum t;
    t.a_block = Matrix{{Rational(1), Rational(1)}};
    t.a_row = {Rational(1), Rational(0)};
    t.b_row = {Rational(1), Rational(0)};
    t.b_block = Matrix{{Rational(1), Rational(1)}};
    t.c_a = {Rational(1)};
    t.c_shared = Rational(1);
    t.c_b = {Rational(2)};
    t.split_ca = Rational(1);
    t.split_cb = Rational(0);
    t.validate();
    return t;
}

std::pair<System, System> fix1_inputs() {
    System p(Matrix{{Rational(1), Rational(1), Rational(0)},
                    {Rational(1), Rational(0), Rational(1)}},
             {Rational(1), Rational(1)}, "fix1-P");
    System q(Matrix{{Rational(1), Rational(0)}, {Rational(1), Rational(1)}},
             {Rational(0), Rational(2)}, "fix1-Q");
    return {p, q};
}

System fix_cube(std::size_t n) {
    System s(Matrix::identity(n), Vec(n, Rational(1)), "cube" + std::to_string(n));
    for (std::size_t i = 0; i < n; ++i) s = append_unit_column(s, i);
    s.name = "cube" + std::to_string(n);
    return s;
}

namespace {

std::vector<std::pair<long, long>> base_polygon(std::size_t ngon) {
    if (ngon == 4) return {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    if (ngon == 8) return {{2, 1}, {1, 2}, {-1, 2}, {-2, 1}, {-2, -1}, {-1, -2}, {1, -2}, {2, -1}};
    throw ContractError("pyramid fixture: ngon must be 4 or 8");
}

// Side facets of the pyramid with apex (3,3,2) over the polygon shifted
// into the positive quadrant; z >= 0 is supplied by the sign constraint
// so the base needs no row, which keeps base vertices nondegenerate.
System pyramid_halfspaces(std::size_t ngon) {
    auto poly = base_polygon(ngon);
    std::size_t m = poly.size();
    Matrix a(m, 3 + m);
    Vec b(m);
    for (std::size_t i = 0; i < m; ++i) {
        auto [wx, wy] = poly[i];
        auto [ux, uy] = poly[(i + 1) % m];
        Rational vx(wx + 3), vy(wy + 3);
        Rational dx = Rational(ux + 3) - vx, dy = Rational(uy + 3) - vy;
        Rational qx = Rational(3) - vx, qy = Rational(3) - vy;
        const Rational h(2);
        Rational nx = dy * h, ny = -(dx * h), nz = dx * qy - dy * qx;
        Rational rhs = nx * vx + ny * vy; // facet value at (v_i, 0)
        // orient outward: interior point (3, 3, 1/2) strictly below
        Rational inside = nx * Rational(3) + ny * Rational(3) + nz * Rational(1, 2);
        if (inside > rhs) {
            nx = -nx;
            ny = -ny;
            nz = -nz;
            rhs = -rhs;
        }
        a.at(i, 0) = nx;
        a.at(i, 1) = ny;
        a.at(i, 2) = nz;
        a.at(i, 3 + i) = Rational(1); // slack
        b[i] = rhs;
    }
    return System(std::move(a), std::move(b), "pyr" + std::to_string(ngon));
}

} // namespace

System fix_pyramid(std::size_t ngon) { return pyramid_halfspaces(ngon); }

System fix_pyramid_slice(std::size_t ngon) {
    System s = pyramid_halfspaces(ngon);
    Matrix cut(1, s.n());
    cut.at(0, 2) = Rational(1);
    Vec b = s.b;
    b.push_back(Rational(1));
    return System(s.a.vstack(cut), std::move(b), s.name + "-slice");
}

namespace {

// Node-arc incidence with +1 at the tail, -1 at the head; one node row
// deleted.
Matrix incidence(std::size_t nodes, const std::vector<std::pair<std::size_t, std::size_t>>& arcs,
                 const std::vector<std::size_t>& keep_rows) {
    Matrix m(keep_rows.size(), arcs.size());
    for (std::size_t j = 0; j < arcs.size(); ++j) {
        for (std::size_t r = 0; r < keep_rows.size(); ++r) {
            if (keep_rows[r] == arcs[j].first) m.at(r, j) = Rational(1);
            if (keep_rows[r] == arcs[j].second) m.at(r, j) = Rational(-1);
        }
    }
    (void)nodes;
    return m;
}

} // namespace

std::pair<Matrix, Matrix> fix_g1g2() {
    // 4-node graph, distinguished arc last; head node row deleted.
    Matrix left = incidence(4,
                            {{0, 1}, {1, 2}, {2, 0}, {0, 3}, {2, 3}},
                            {0, 1, 2});
    // 5-node graph (tail node first among the kept rows), arc first in
    // column order realized by the caller convention: distinguished row
    // is row 0 = the tail node of the shared arc.
    Matrix right = incidence(5,
                             {{4, 1}, {1, 2}, {2, 3}, {3, 1}, {3, 0}},
                             {0, 1, 2, 3});
    return {left, right};
}

Matrix fix_g1g2_expected() {
    // Glued 7-node graph: the shared arc is identified and deleted.
    return incidence(7,
                     {{0, 1}, {1, 2}, {2, 0}, {0, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 4}, {6, 2}},
                     {0, 1, 2, 4, 5, 6});
}

ThreeSum fix3() {
    GenConfig cfg;
    cfg.kind = InstanceKind::ThreeSumKind;
    cfg.seed = 7;
    cfg.m_p = {1, 1};
    cfg.n_p = {3, 4};
    cfg.m_q = {1, 1};
    cfg.n_q = {3, 4};
    cfg.require_simple = true;
    cfg.require_both_categories = true; // a mixed vertex must exist
    cfg.max_attempts = 5000;
    return *generate(cfg).three_sum;
}

} // namespace polysum::fixtures
