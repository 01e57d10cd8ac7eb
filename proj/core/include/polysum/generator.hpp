#pragma once

#include "polysum/rng.hpp"
#include "polysum/threesum.hpp"
#include "polysum/twosum.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace polysum {

enum class InstanceKind { TwoSumKind, ThreeSumKind, UnitColumn, Product };

const char* kind_name(InstanceKind k);
std::optional<InstanceKind> kind_from_name(const std::string& name);

struct DimRange {
    std::size_t lo = 1, hi = 1;
};

/// Identical config (including seed) produces a bit-identical instance.
struct GenConfig {
    std::uint64_t seed = 0;
    InstanceKind kind = InstanceKind::TwoSumKind;
    DimRange m_p{1, 2}, n_p{3, 6};
    DimRange m_q{1, 2}, n_q{3, 6};
    long entry_bound = 3;
    bool require_simple = true;
    bool require_both_categories = false;
    std::size_t max_attempts = 600;
    std::size_t cap = kDefaultEnumCap;
};

struct GeneratedInstance {
    InstanceKind kind;
    std::optional<TwoSum> two_sum;
    std::optional<ThreeSum> three_sum;
    std::optional<System> system;       ///< unit: the extended system; product: blocks glued
    std::size_t unit_row = 0;           ///< row the unit column relaxes
    std::optional<System> block_p, block_q; ///< product factors
};

/// Rejection-samples random summands with feasibility arranged through
/// a random nonnegative point, until the require_* flags hold. Summand
/// systems carry a strictly positive first row, which keeps every face
/// bounded and every band endpoint attained. Errors after max_attempts
/// with attempt statistics in the message.
GeneratedInstance generate(const GenConfig& cfg);

} // namespace polysum
