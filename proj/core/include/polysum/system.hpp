#pragma once

#include "polysum/matrix.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace polysum {

/// Standard-form system {x : Ax = b, x >= 0}. Rows are kept exactly as
/// given; redundancy removal is always an explicit operation.
struct System {
    Matrix a;
    Vec b;
    std::string name;

    System() = default;
    System(Matrix a_, Vec b_, std::string name_ = "");

    std::size_t m() const { return a.rows(); }
    std::size_t n() const { return a.cols(); }
};

/// Basic feasible solution: nonnegative, satisfies Ax = b exactly, and
/// the support columns of A are linearly independent.
struct Vertex {
    Vec coords;
    std::vector<std::size_t> support; ///< sorted indices of nonzero coords

    Vertex() = default;
    explicit Vertex(Vec c) : coords(std::move(c)), support(support_of(coords)) {}

    friend bool operator==(const Vertex& u, const Vertex& v) { return u.coords == v.coords; }
    friend bool operator!=(const Vertex& u, const Vertex& v) { return !(u == v); }
};

inline bool lex_less(const Vertex& u, const Vertex& v) { return lex_less(u.coords, v.coords); }

/// 1-skeleton over an enumerated vertex set. Vertices are indexed by
/// their position in the lexicographically sorted list.
struct Graph {
    std::vector<Vertex> verts;
    std::vector<std::pair<std::size_t, std::size_t>> edges; ///< i < j
    std::vector<std::vector<std::size_t>> adj;               ///< sorted neighbor lists

    std::size_t index_of(const Vertex& v) const; ///< throws ContractError when absent
    bool has_edge(std::size_t i, std::size_t j) const;
};

enum class StepRule { Lift, Jump, SameX, Escape };

const char* rule_name(StepRule r);   ///< "lift" | "jump" | "same_x" | "escape"

/// One edge of a walk together with the rule that produced it and the
/// wire tag of the distance argument it is charged to.
struct StepTag {
    StepRule rule;
    std::string lemma; ///< "1.1" | "2.1" | "2.2" | "2.3"
};

/// Edge walk: ordered vertices with one tag per step. A single-vertex
/// walk has length zero.
struct Walk {
    std::vector<Vertex> verts;
    std::vector<StepTag> tags;

    std::size_t length() const { return verts.empty() ? 0 : verts.size() - 1; }

    /// Appends a step to `v`; no-op when `v` equals the current endpoint.
    void push(const Vertex& v, StepTag tag);
    /// Concatenates `tail`, which must start at the current endpoint.
    void append(const Walk& tail);
    Walk reversed() const;
};

} // namespace polysum
