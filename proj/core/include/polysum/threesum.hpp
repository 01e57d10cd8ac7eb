#pragma once

#include "polysum/twosum.hpp"

namespace polysum {

/// A 3-sum polyhedron in reduced block form:
///
///   [ A   0  ] [x]   [ c_A ]
///   [ a1  b1 ] [y] = [ c1  ]     x, y >= 0
///   [ a2  b2 ]       [ c2  ]
///   [ 0   B  ]       [ c_B ]
///
/// with two shared rows (linearly independent) and a stored split of
/// each shared rhs.
struct ThreeSum {
    Matrix a_block;
    Vec a1_row, a2_row;
    Vec b1_row, b2_row;
    Matrix b_block;
    Vec c_a;
    Rational c1_shared, c2_shared;
    Vec c_b;
    Rational split_ca1, split_cb1;
    Rational split_ca2, split_cb2;

    void validate() const;

    std::size_t nx() const { return a1_row.size(); }
    std::size_t ny() const { return b1_row.size(); }

    System assembled() const;
    System pa() const;
    System qb() const;
    /// Both shared rows fixed by x: {y : b1.y = c1-a1.x, b2.y = c2-a2.x, By = c_B}.
    System q_of(const Vec& x) const;
    System p_of(const Vec& y) const;

    Vec xpart(const Vec& full) const;
    Vec ypart(const Vec& full) const;
    Vec join(const Vec& x, const Vec& y) const;
};

/// Block composition [[A, a*b], [d*c, B]]. `left` carries duplicated
/// distinguished last columns (a, a) over a bottom row ending (0, 1);
/// `right` carries duplicated first columns (d, d) under a top row
/// starting (1, 0). Shape violations raise ContractError.
Matrix matrix_three_sum(const Matrix& left, const Matrix& right);

/// Polyhedron-level 3-sum of systems in the shapes above; requires the
/// distinguished data nonzero (a, b, c, d all nonzero) and row-reduces
/// the result to the ThreeSum block form, recording the splits. The
/// reduction is validated to preserve the solution set exactly.
ThreeSum poly_three_sum(const System& p, const System& q);

enum class Category3 { XVertex, YVertex, Mixed };
const char* category3_name(Category3 c);

/// X if the x projection is a P_A vertex, else Y if the y projection is
/// a Q_B vertex, else Mixed after verifying both projections lie on
/// 1-dimensional minimal faces.
Category3 classify3(const ThreeSum& inst, const Vertex& v);

using Point2 = std::pair<Rational, Rational>;

/// Exact orientation sign of the triple (p, q, r): positive for a left
/// turn.
int orient2d(const Point2& p, const Point2& q, const Point2& r);

/// Convex hull in counterclockwise order with collinear points dropped;
/// degenerate hulls have one or two points.
std::vector<Point2> convex_hull_ccw(std::vector<Point2> pts);

/// Exact image {(c1 - b1.z, c2 - b2.z)} of the support-restricted face
/// of Q_B; a convex polygon stored counterclockwise.
struct BandPolygon {
    std::vector<Point2> vertices;
    std::vector<std::size_t> support;

    /// Closed containment decided by orientation predicates.
    bool contains(const Point2& p) const;
};

BandPolygon band_x3(const ThreeSum& inst, const Vec& y);

/// No terminal vertex is constructed for a failed 3-sum lift; the
/// outcome is just the liftability verdict plus the lifted vertex.
struct Lift3Outcome {
    bool liftable = false;
    Vertex vertex; ///< valid only when liftable
};

Lift3Outcome lift_step3(const ThreeSum& inst, const Vertex& at, const Vec& target_x,
                        std::size_t cap = kDefaultEnumCap);

/// Walk (x, y^i) along a shortest path in the doubly-adjusted face Q(x).
Walk connect_same_x3(const ThreeSum& inst, const Vertex& u, const Vertex& v,
                     std::size_t cap = kDefaultEnumCap);

} // namespace polysum
