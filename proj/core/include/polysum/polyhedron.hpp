#pragma once

#include "polysum/system.hpp"

#include <cstdint>
#include <optional>

namespace polysum {

inline constexpr std::size_t kDefaultEnumCap = 18;

/// All basic feasible solutions of S, deduplicated by coordinates and
/// sorted lexicographically. Works by solving every column basis of
/// size rank(A); an infeasible system yields an empty list. Refuses to
/// run (CapError) when S has more than `cap` columns.
std::vector<Vertex> enumerate_vertices(const System& s, std::size_t cap = kDefaultEnumCap);

bool is_feasible_point(const System& s, const Vec& x);

/// Basic feasible solution test: feasible and support columns of A
/// linearly independent.
bool is_vertex_point(const System& s, const Vec& x);

/// Two distinct vertices are adjacent iff the columns indexed by the
/// union of their supports span a space with nullity exactly 1, i.e.
/// the minimal face containing both is an edge. Correct for degenerate
/// polyhedra as well.
bool are_adjacent(const System& s, const Vertex& u, const Vertex& v);

Graph build_graph(const System& s, std::size_t cap = kDefaultEnumCap);
Graph build_graph(const System& s, std::vector<Vertex> verts);

/// BFS distance in the 1-skeleton; nullopt when no walk exists.
std::optional<std::size_t> distance(const Graph& g, std::size_t from, std::size_t to);
std::optional<std::size_t> distance(const System& s, const Vertex& u, const Vertex& v,
                                    std::size_t cap = kDefaultEnumCap);

struct DiameterResult {
    std::size_t value = 0;
    bool connected = true; ///< false marks an infinite diameter; never clamped
};

/// Max over all vertex pairs of the BFS distance. Errors on an empty
/// vertex set.
DiameterResult diameter(const Graph& g);
DiameterResult diameter(const System& s, std::size_t cap = kDefaultEnumCap);

/// Shortest path as vertex indices, deterministic: BFS that scans
/// neighbors in lexicographic vertex order. Empty when unreachable.
std::vector<std::size_t> bfs_path(const Graph& g, std::size_t from, std::size_t to);

/// Every vertex support has size rank(A); degenerate basic feasible
/// solutions make this false.
bool is_simple(const System& s, std::size_t cap = kDefaultEnumCap);

/// Deletes the columns in zero_set, i.e. fixes those variables to 0.
System restrict_face(const System& s, const std::vector<std::size_t>& zero_set);

/// Column indices that survive restrict_face(s, zero_set), in order.
std::vector<std::size_t> kept_columns(std::size_t n, const std::vector<std::size_t>& zero_set);

/// Scatters a point of the restricted face back into n coordinates.
Vec embed_face_point(const Vec& face_point, const std::vector<std::size_t>& kept, std::size_t n);

struct PerturbOptions {
    std::size_t max_retries = 12;  ///< one fresh random direction per retry
    long den_bound = 9;            ///< denominators of direction entries
    std::size_t cap = kDefaultEnumCap;
};

/// Right-hand-side perturbation b + eps*r with eps = 1/2^(10k) and a
/// fresh random small-rational direction r per retry, accepting the
/// first simple and feasible result. eps = 0 is tried first, so an
/// already-simple system comes back unchanged. Deterministic in `seed`.
System perturb_to_simple(const System& s, std::uint64_t seed, PerturbOptions opts = {});

/// Block-diagonal composition; the vertex graph is the Cartesian
/// product of the summand graphs.
System block_diagonal(const System& p, const System& q);

} // namespace polysum
