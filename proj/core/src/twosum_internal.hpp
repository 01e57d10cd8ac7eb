#pragma once

#include "polysum/twosum.hpp"

namespace polysum::detail {

/// Point on conv(p, q) where the linear value moving from fp to fq
/// equals target; fp != fq unless target == fp (then p).
Vec point_between(const Vec& p, const Vec& q, const Rational& fp, const Rational& fq,
                  const Rational& target);

/// Point of the band's restricted face whose shared value c - b.z
/// equals shared_value; shared_value must lie in [band.lo, band.hi].
Vec face_point_at_value(const TwoSum& inst, const BandInterval& band,
                        const Rational& shared_value);

/// Lift against a precomputed band, skipping precondition checks.
LiftOutcome lift_step_banded(const TwoSum& inst, const Vertex& at, const Vec& target_x,
                             const BandInterval& band);

} // namespace polysum::detail
