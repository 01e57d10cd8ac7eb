#pragma once

#include "polysum/system.hpp"

#include <optional>
#include <string>

namespace polysum::oracle {

/// Brute-force reference implementations kept deliberately separate
/// from the polyhedron module: different elimination, different basis
/// scan, different graph search. Two implementations, one truth; every
/// walk and distance claimed by a construction is re-checked here.

inline constexpr std::size_t kOracleCap = 18;

bool feasible(const System& s, const Vec& x);
bool vertex_point(const System& s, const Vec& x);
bool adjacent(const System& s, const Vec& u, const Vec& v);

/// All basic feasible solutions, sorted lexicographically.
std::vector<Vec> enumerate_points(const System& s, std::size_t cap = kOracleCap);

struct DiameterTable {
    std::vector<Vec> verts;
    /// dist[i][j]; SIZE_MAX marks an unreachable pair
    std::vector<std::vector<std::size_t>> dist;
    std::size_t value = 0;
    bool connected = true;
};

DiameterTable diameter(const System& s, std::size_t cap = kOracleCap);

std::optional<std::size_t> distance(const System& s, const Vec& u, const Vec& v,
                                    std::size_t cap = kOracleCap);

/// Shortest walk as a vertex sequence; empty when unreachable.
std::vector<Vec> shortest_walk(const System& s, const Vec& u, const Vec& v,
                               std::size_t cap = kOracleCap);

struct WalkCheck {
    bool ok = true;
    std::string reason;
    std::size_t bad_index = 0;
};

/// Independent validity check of a claimed edge walk: every point must
/// be a vertex of `s` and consecutive points adjacent.
WalkCheck check_walk(const System& s, const Walk& w);

} // namespace polysum::oracle
