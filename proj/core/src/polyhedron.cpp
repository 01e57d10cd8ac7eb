#include "polysum/polyhedron.hpp"

#include "polysum/errors.hpp"
#include "polysum/rng.hpp"

#include <algorithm>
#include <deque>

namespace polysum {

namespace {

// Lexicographically next k-combination of {0..n-1}; false when done.
bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
    std::size_t k = c.size();
    if (k == 0) return false;
    std::size_t i = k;
    while (i-- > 0) {
        if (c[i] + (k - i) < n) {
            ++c[i];
            for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
            return true;
        }
    }
    return false;
}

} // namespace

std::vector<Vertex> enumerate_vertices(const System& s, std::size_t cap) {
    if (s.n() > cap) throw CapError(cap, s.n());

    RrefResult ra = rref(s.a);
    std::size_t r = ra.rank;

    // rank([A|b]) > rank(A) means no solution at all.
    {
        Matrix aug(s.m(), s.n() + 1);
        for (std::size_t i = 0; i < s.m(); ++i) {
            for (std::size_t j = 0; j < s.n(); ++j) aug.at(i, j) = s.a.at(i, j);
            aug.at(i, s.n()) = s.b[i];
        }
        if (rank(aug) > r) return {};
    }
    if (r > s.n()) return {};

    std::vector<Vertex> out;
    std::vector<std::size_t> comb(r);
    for (std::size_t i = 0; i < r; ++i) comb[i] = i;
    bool more = r <= s.n();
    while (more) {
        Matrix basis = s.a.select_cols(comb);
        if (auto x = solve(basis, s.b)) {
            bool nonneg = std::all_of(x->begin(), x->end(),
                                      [](const Rational& v) { return v.sign() >= 0; });
            if (nonneg) {
                Vec full(s.n());
                for (std::size_t k = 0; k < comb.size(); ++k) full[comb[k]] = (*x)[k];
                out.emplace_back(std::move(full));
            }
        }
        more = next_combination(comb, s.n());
        if (r == 0) break; // the empty basis is the single candidate
    }

    std::sort(out.begin(), out.end(),
              [](const Vertex& u, const Vertex& v) { return lex_less(u, v); });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool is_feasible_point(const System& s, const Vec& x) {
    if (x.size() != s.n()) return false;
    for (const auto& v : x)
        if (v.sign() < 0) return false;
    return mul(s.a, x) == s.b;
}

bool is_vertex_point(const System& s, const Vec& x) {
    if (!is_feasible_point(s, x)) return false;
    auto supp = support_of(x);
    return rank(s.a.select_cols(supp)) == supp.size();
}

bool are_adjacent(const System& s, const Vertex& u, const Vertex& v) {
    if (u == v) throw ContractError("are_adjacent: identical vertices");
    std::vector<std::size_t> uni;
    std::set_union(u.support.begin(), u.support.end(), v.support.begin(), v.support.end(),
                   std::back_inserter(uni));
    Matrix sub = s.a.select_cols(uni);
    return uni.size() == rank(sub) + 1;
}

Graph build_graph(const System& s, std::vector<Vertex> verts) {
    Graph g;
    g.verts = std::move(verts);
    g.adj.assign(g.verts.size(), {});
    for (std::size_t i = 0; i < g.verts.size(); ++i)
        for (std::size_t j = i + 1; j < g.verts.size(); ++j)
            if (are_adjacent(s, g.verts[i], g.verts[j])) {
                g.edges.emplace_back(i, j);
                g.adj[i].push_back(j);
                g.adj[j].push_back(i);
            }
    return g;
}

Graph build_graph(const System& s, std::size_t cap) {
    return build_graph(s, enumerate_vertices(s, cap));
}

namespace {

std::vector<std::optional<std::size_t>> bfs_layers(const Graph& g, std::size_t from) {
    std::vector<std::optional<std::size_t>> dist(g.verts.size());
    std::deque<std::size_t> q{from};
    dist[from] = 0;
    while (!q.empty()) {
        std::size_t u = q.front();
        q.pop_front();
        for (auto w : g.adj[u])
            if (!dist[w]) {
                dist[w] = *dist[u] + 1;
                q.push_back(w);
            }
    }
    return dist;
}

} // namespace

std::optional<std::size_t> distance(const Graph& g, std::size_t from, std::size_t to) {
    if (from >= g.verts.size() || to >= g.verts.size())
        throw ContractError("distance: vertex index out of range");
    return bfs_layers(g, from)[to];
}

std::optional<std::size_t> distance(const System& s, const Vertex& u, const Vertex& v,
                                    std::size_t cap) {
    Graph g = build_graph(s, cap);
    return distance(g, g.index_of(u), g.index_of(v));
}

DiameterResult diameter(const Graph& g) {
    if (g.verts.empty()) throw ContractError("diameter: no vertices");
    DiameterResult res;
    for (std::size_t i = 0; i < g.verts.size(); ++i) {
        auto dist = bfs_layers(g, i);
        for (std::size_t j = 0; j < g.verts.size(); ++j) {
            if (!dist[j]) {
                res.connected = false;
                return res;
            }
            res.value = std::max(res.value, *dist[j]);
        }
    }
    return res;
}

DiameterResult diameter(const System& s, std::size_t cap) {
    return diameter(build_graph(s, cap));
}

std::vector<std::size_t> bfs_path(const Graph& g, std::size_t from, std::size_t to) {
    if (from >= g.verts.size() || to >= g.verts.size())
        throw ContractError("bfs_path: vertex index out of range");
    // Vertices are stored in lexicographic order, so scanning neighbor
    // lists in index order gives the lexicographic-smallest parents.
    std::vector<std::optional<std::size_t>> parent(g.verts.size());
    std::vector<bool> seen(g.verts.size(), false);
    std::deque<std::size_t> q{from};
    seen[from] = true;
    while (!q.empty() && !seen[to]) {
        std::size_t u = q.front();
        q.pop_front();
        for (auto w : g.adj[u])
            if (!seen[w]) {
                seen[w] = true;
                parent[w] = u;
                q.push_back(w);
            }
    }
    if (!seen[to]) return {};
    std::vector<std::size_t> path{to};
    std::size_t cur = to;
    while (cur != from) {
        cur = *parent[cur];
        path.push_back(cur);
    }
    std::reverse(path.begin(), path.end());
    return path;
}

bool is_simple(const System& s, std::size_t cap) {
    std::size_t r = rank(s.a);
    for (const auto& v : enumerate_vertices(s, cap))
        if (v.support.size() != r) return false;
    return true;
}

System restrict_face(const System& s, const std::vector<std::size_t>& zero_set) {
    System f(s.a.drop_cols(zero_set), s.b, s.name.empty() ? "" : s.name + "|face");
    return f;
}

std::vector<std::size_t> kept_columns(std::size_t n, const std::vector<std::size_t>& zero_set) {
    std::vector<bool> dropped(n, false);
    for (auto j : zero_set) dropped[j] = true;
    std::vector<std::size_t> keep;
    for (std::size_t j = 0; j < n; ++j)
        if (!dropped[j]) keep.push_back(j);
    return keep;
}

Vec embed_face_point(const Vec& face_point, const std::vector<std::size_t>& kept, std::size_t n) {
    if (face_point.size() != kept.size())
        throw ContractError("embed_face_point: size mismatch");
    Vec full(n);
    for (std::size_t k = 0; k < kept.size(); ++k) full[kept[k]] = face_point[k];
    return full;
}

System perturb_to_simple(const System& s, std::uint64_t seed, PerturbOptions opts) {
    SplitMix64 rng(seed);
    std::string tried = "";
    for (std::size_t attempt = 0; attempt <= opts.max_retries; ++attempt) {
        System cand = s;
        if (attempt > 0) {
            // eps = 1/2^(10*attempt); direction entries num/den with
            // num in [-3,3], den in [1,den_bound].
            mpz_class pow2(1);
            mpz_mul_2exp(pow2.get_mpz_t(), pow2.get_mpz_t(), 10 * attempt);
            Rational eps{mpq_class(1, pow2)};
            for (std::size_t i = 0; i < cand.b.size(); ++i) {
                long num = rng.range(-3, 3);
                long den = rng.range(1, opts.den_bound);
                cand.b[i] += eps * Rational(num, den);
            }
            tried += (tried.empty() ? "" : ", ") + std::string("1/2^") + std::to_string(10 * attempt);
        } else {
            tried = "0";
        }
        auto verts = enumerate_vertices(cand, opts.cap);
        if (verts.empty()) continue;
        std::size_t r = rank(cand.a);
        bool simple = std::all_of(verts.begin(), verts.end(),
                                  [r](const Vertex& v) { return v.support.size() == r; });
        if (simple) {
            if (attempt > 0 && !cand.name.empty()) cand.name += "~perturbed";
            return cand;
        }
    }
    throw Error("perturb_to_simple: retries exhausted; tried eps = " + tried);
}

System block_diagonal(const System& p, const System& q) {
    Matrix a(p.m() + q.m(), p.n() + q.n());
    for (std::size_t i = 0; i < p.m(); ++i)
        for (std::size_t j = 0; j < p.n(); ++j) a.at(i, j) = p.a.at(i, j);
    for (std::size_t i = 0; i < q.m(); ++i)
        for (std::size_t j = 0; j < q.n(); ++j) a.at(p.m() + i, p.n() + j) = q.a.at(i, j);
    Vec b = p.b;
    b.insert(b.end(), q.b.begin(), q.b.end());
    return System(std::move(a), std::move(b),
                  p.name.empty() && q.name.empty() ? "" : p.name + "*" + q.name);
}

} // namespace polysum
