#pragma once

#include "polysum/polyhedron.hpp"

#include <memory>
#include <optional>

namespace polysum {

/// A 2-sum polyhedron kept in reduced block form:
///
///   [ A  0 ] [x]   [ c_A ]
///   [ a  b ] [y] = [  c  ]      x, y >= 0
///   [ 0  B ]       [ c_B ]
///
/// with the shared right-hand side c = split_ca + split_cb. Every band,
/// lift, and connect operation works on this representation. The split
/// is a stored degree of freedom; all band values depend only on c.
struct TwoSum {
    Matrix a_block;   ///< A, m_A x n_x
    Vec a_row;        ///< shared row, x part; never zero
    Vec b_row;        ///< shared row, y part; never zero
    Matrix b_block;   ///< B, m_B x n_y
    Vec c_a;          ///< rhs of the A rows
    Rational c_shared;
    Vec c_b;          ///< rhs of the B rows
    Rational split_ca, split_cb; ///< split_ca + split_cb = c_shared

    void validate() const;

    std::size_t nx() const { return a_row.size(); }
    std::size_t ny() const { return b_row.size(); }

    System assembled() const;
    System pa() const; ///< {x : Ax = c_A, x >= 0}
    System qb() const; ///< {y : By = c_B, y >= 0}
    /// {x : Ax = c_A, a.x = c - b.y, x >= 0}
    System p_of(const Vec& y) const;
    /// {y : b.y = c - a.x, By = c_B, y >= 0}
    System q_of(const Vec& x) const;

    Vec xpart(const Vec& full) const;
    Vec ypart(const Vec& full) const;
    Vec join(const Vec& x, const Vec& y) const;

    /// The same polyhedron with the roles of the two sides swapped;
    /// vertices correspond under coordinate block swap.
    TwoSum mirrored() const;
    Vec mirror_point(const Vec& full) const;
};

struct MatrixTwoSumResult {
    Matrix m;
    /// Zero distinguished column or row: accepted here, with this flag
    /// raised; the polyhedron-level operation rejects instead.
    bool zero_coupling = false;
};

/// Block composition [[A, a*b], [0, B]] of `left` (distinguished last
/// column a) and `right` (distinguished first row b).
MatrixTwoSumResult matrix_two_sum(const Matrix& left, const Matrix& right);

/// Polyhedron-level 2-sum. `p`'s distinguished column is the last
/// column of its matrix; `q`'s distinguished row is the first row, so
/// q.b[0] is the shared-row rhs contribution. The Def-style block
/// system is built and then row-reduced to the TwoSum form; the split
/// is recorded from the reduction.
TwoSum poly_two_sum(const System& p, const System& q);

struct TwoSumSummands {
    System p; ///< [[A, 0], [a, 1]] (x, s) = (c_A, split_ca); slack column last
    System q; ///< [[b], [B]] y = (split_cb, c_B)
};

/// Standard-form summands whose 2-sum reproduces the instance (up to
/// row operations) via poly_two_sum.
TwoSumSummands decompose(const TwoSum& inst);

enum class Category { XVertex, YVertex };

/// XVertex iff the x projection is a vertex of P_A; tested first, so a
/// vertex whose both projections are vertices is an XVertex. Raises
/// IntegrityError when neither projection is a vertex of its side.
Category classify(const TwoSum& inst, const Vertex& v);

/// Closed interval of shared-row values c - b.z reachable over
/// {z : Bz = c_B, supp(z) within the given support, z >= 0}, with
/// attained witnesses for both endpoints.
struct BandInterval {
    Rational lo, hi;
    std::vector<std::size_t> support;
    Vec z_at_lo; ///< feasible z with c - b.z = lo (maximizes b.z)
    Vec z_at_hi; ///< feasible z with c - b.z = hi (minimizes b.z)

    bool contains(const Rational& v) const { return lo <= v && v <= hi; }
    bool is_point() const { return lo == hi; }
};

/// Band of shared-row values with the y support fixed. `y` must be
/// feasible for Q_B.
BandInterval band_x(const TwoSum& inst, const Vec& y);
/// Mirror band over the x side.
BandInterval band_y(const TwoSum& inst, const Vec& x);

struct LiftOutcome {
    enum class Kind { Lifted, Terminated };
    /// Which band boundary a terminated step ran into, in shared-value
    /// terms: AboveHi means the target value exceeded the band max.
    enum class Side { AboveHi, BelowLo };

    Kind kind;
    Vertex vertex;  ///< new point in the 2-sum (target lift or terminal)
    Side side = Side::AboveHi; ///< Terminated only
    Vec terminal_y; ///< Terminated only: the Q_B edge endpoint reached

    bool lifted() const { return kind == Kind::Lifted; }
};

/// Single-step lift of the move x -> target_x at the x-vertex `at`.
/// Lifts iff a.target_x lies in the band of at's y support; otherwise
/// terminates on the segment between the two x's at the violated band
/// boundary, with the y part snapping to the corresponding edge
/// endpoint vertex of Q_B.
LiftOutcome lift_step(const TwoSum& inst, const Vertex& at, const Vec& target_x);

struct LiftWalkResult {
    Walk walk;
    bool completed = true;
    std::size_t stopped_at = 0;              ///< step index of the failure
    std::optional<LiftOutcome> termination;  ///< set when not completed
};

/// Lifts a P_A walk step by step, stopping at the first termination.
LiftWalkResult lift_walk(const TwoSum& inst, const Vertex& at, const std::vector<Vec>& path);

/// Records which slice faces a constructive walk actually traversed,
/// so budget checks can measure the realized face diameters.
struct ConnectTrace {
    std::size_t pa_path_len = 0;
    std::size_t qb_path_len = 0;
    std::vector<Vec> jump_faces_y;   ///< y fixing each P(y) jump face
    std::vector<Vec> same_x_faces_x; ///< x fixing each Q(x) sub-walk face
};

/// Walk (x, y^0..y^k) along a shortest path between the y parts inside
/// Q(x); length is at most the diameter of that face.
Walk connect_same_x(const TwoSum& inst, const Vertex& u, const Vertex& v,
                    std::size_t cap = kDefaultEnumCap, ConnectTrace* trace = nullptr);

/// Precomputed instance views shared by the connect machinery. Build
/// once per instance; immutable afterwards and safe to share.
struct TwoSumCtx {
    TwoSum inst;
    System sys;        ///< assembled reduced system
    Graph graph;       ///< full 1-skeleton
    std::vector<Category> cats; ///< per graph vertex
    System pa_sys, qb_sys;
    Graph pa_graph, qb_graph;
    std::size_t cap;
    /// Side-swapped view used for y-side constructions; null inside the
    /// mirror itself.
    std::shared_ptr<const TwoSumCtx> mirror;

    explicit TwoSumCtx(TwoSum instance, std::size_t cap = kDefaultEnumCap,
                       bool build_mirror = true);

    bool has_category(Category c) const;
    Category category_of(const Vertex& v) const;
};

struct EscapeResult {
    Walk walk;
    Vertex endpoint;                ///< an x-vertex
    bool terminated_early = false;  ///< a failed lift ended the walk
    std::optional<Vec> same_y_face; ///< y of the P(y) face walked through, if any
};

/// Walk from a y-vertex to some x-vertex: lift a shortest Q_B path
/// toward the y side of an adjacent opposite-category pair; a failed
/// lift already ends at an x-vertex. Errors when the instance has only
/// one category.
EscapeResult escape_y_vertex(const TwoSumCtx& ctx, const Vertex& u);

/// Walk between x-vertices u, v with a.x_v inside the band of u. At
/// most one violation episode per band side, each resolved by a jump
/// inside the slice face to the farthest re-entry edge.
Walk connect_in_band(const TwoSumCtx& ctx, const Vertex& u, const Vertex& v,
                     ConnectTrace* trace = nullptr);

/// Full constructive walk between any two vertices: category
/// normalization, in-band shortcut, or the interleaved two-path lift
/// with jump re-entries. Every step is tagged with the rule that
/// produced it.
Walk connect(const TwoSumCtx& ctx, const Vertex& u, const Vertex& v,
             ConnectTrace* trace = nullptr);
Walk connect(const TwoSum& inst, const Vertex& u, const Vertex& v,
             std::size_t cap = kDefaultEnumCap);

/// Per-instance quantities instantiating the class diameters: face
/// diameters realized by supports of actual vertices.
struct TwoSumBounds {
    std::size_t d_pa = 0;
    std::size_t d_qb = 0;
    std::size_t d_abar = 0; ///< max diameter of P(y) over vertex y parts
    std::size_t d_bbar = 0; ///< max diameter of Q(x) over vertex x parts

    std::size_t connect_bound() const {
        return d_pa * (1 + d_abar) + d_qb * (1 + d_bbar) +
               std::min(d_abar + d_qb + 1, d_pa + d_bbar + 1);
    }
};

TwoSumBounds instance_bounds(const TwoSumCtx& ctx);

/// Appends the unit column e_row, i.e. relaxes that equality to <=.
System append_unit_column(const System& p, std::size_t row);

/// Walk in a unit-column system (last column must be a unit column).
/// Slack-zero pairs walk inside the tight face; slack-positive pairs
/// lift a path of the row-relaxed system with at most one jump across
/// the tight face; mixed pairs step off the face first.
Walk connect_unit(const System& p_abar, const Vertex& u, const Vertex& v,
                  std::size_t cap = kDefaultEnumCap);

} // namespace polysum
