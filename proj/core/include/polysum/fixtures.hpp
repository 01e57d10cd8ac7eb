#pragma once

#include "polysum/threesum.hpp"
#include "polysum/twosum.hpp"

namespace polysum::fixtures {

/// Segment 2-sum: {x1+x2=1; x1+y1=1; y1+y2=2} with split (1, 0).
TwoSum fix1();
/// The summand systems whose poly_two_sum gives fix1.
std::pair<System, System> fix1_inputs();

/// n-cube in slack form {x_i + s_i = 1}, built by appending one unit
/// column per row to the point system {x = 1}.
System fix_cube(std::size_t n);

/// Pyramid over a rational octagon (or square) in slack form; apex is a
/// degenerate vertex. ngon must be 4 or 8.
System fix_pyramid(std::size_t ngon);
/// The same pyramid cut at half height: a combinatorial ngon.
System fix_pyramid_slice(std::size_t ngon);

/// Incidence-matrix operands for the glued-graph matrix 2-sum example:
/// left = reduced incidence of a 4-node graph with the distinguished
/// edge column last, right = reduced incidence of a 5-node graph with
/// the distinguished node row first.
std::pair<Matrix, Matrix> fix_g1g2();
/// Independently built reduced incidence of the 7-node glued graph.
Matrix fix_g1g2_expected();

/// Seed-searched simple 3-sum with at least one mixed vertex.
ThreeSum fix3();

} // namespace polysum::fixtures
