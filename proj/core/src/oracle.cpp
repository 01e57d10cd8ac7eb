#include "polysum/oracle.hpp"

#include "polysum/errors.hpp"

#include <algorithm>
#include <queue>

// All elimination here is forward Gaussian with back substitution and
// bottom-up pivot search, on purpose unlike the Gauss-Jordan in the
// matrix module.

namespace polysum::oracle {

namespace {

using Grid = std::vector<Vec>; // row vectors

std::size_t elim_rank(Grid g) {
    std::size_t rows = g.size();
    std::size_t cols = rows ? g[0].size() : 0;
    std::size_t rk = 0;
    for (std::size_t c = 0; c < cols && rk < rows; ++c) {
        std::size_t piv = rows;
        for (std::size_t r = rows; r-- > rk;)
            if (!g[r][c].is_zero()) {
                piv = r;
                break;
            }
        if (piv == rows) continue;
        std::swap(g[piv], g[rk]);
        for (std::size_t r = rk + 1; r < rows; ++r) {
            if (g[r][c].is_zero()) continue;
            Rational f = g[r][c] / g[rk][c];
            for (std::size_t j = c; j < cols; ++j) g[r][j] -= f * g[rk][j];
        }
        ++rk;
    }
    return rk;
}

// Solve g * x = rhs for a full-column-rank grid; nullopt when
// inconsistent or rank-deficient.
std::optional<Vec> elim_solve(Grid g, Vec rhs) {
    std::size_t rows = g.size();
    std::size_t cols = rows ? g[0].size() : 0;
    std::vector<std::size_t> piv_col;
    std::size_t rk = 0;
    for (std::size_t c = 0; c < cols && rk < rows; ++c) {
        std::size_t piv = rows;
        for (std::size_t r = rows; r-- > rk;)
            if (!g[r][c].is_zero()) {
                piv = r;
                break;
            }
        if (piv == rows) continue;
        std::swap(g[piv], g[rk]);
        std::swap(rhs[piv], rhs[rk]);
        for (std::size_t r = rk + 1; r < rows; ++r) {
            if (g[r][c].is_zero()) continue;
            Rational f = g[r][c] / g[rk][c];
            for (std::size_t j = c; j < cols; ++j) g[r][j] -= f * g[rk][j];
            rhs[r] -= f * rhs[rk];
        }
        piv_col.push_back(c);
        ++rk;
    }
    if (rk < cols) return std::nullopt;
    for (std::size_t r = rk; r < rows; ++r)
        if (!rhs[r].is_zero()) return std::nullopt;
    Vec x(cols);
    for (std::size_t r = rk; r-- > 0;) {
        Rational acc = rhs[r];
        for (std::size_t j = piv_col[r] + 1; j < cols; ++j) acc -= g[r][j] * x[j];
        x[piv_col[r]] = acc / g[r][piv_col[r]];
    }
    return x;
}

Grid columns_grid(const System& s, const std::vector<std::size_t>& cols) {
    Grid g(s.m(), Vec(cols.size()));
    for (std::size_t i = 0; i < s.m(); ++i)
        for (std::size_t k = 0; k < cols.size(); ++k) g[i][k] = s.a.at(i, cols[k]);
    return g;
}

std::vector<std::size_t> nonzero_indices(const Vec& v) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!v[i].is_zero()) idx.push_back(i);
    return idx;
}

std::size_t system_rank(const System& s) {
    Grid g(s.m(), Vec(s.n()));
    for (std::size_t i = 0; i < s.m(); ++i)
        for (std::size_t j = 0; j < s.n(); ++j) g[i][j] = s.a.at(i, j);
    return elim_rank(std::move(g));
}

} // namespace

bool feasible(const System& s, const Vec& x) {
    if (x.size() != s.n()) return false;
    for (const auto& v : x)
        if (v.sign() < 0) return false;
    for (std::size_t i = 0; i < s.m(); ++i) {
        Rational acc;
        for (std::size_t j = 0; j < s.n(); ++j) acc += s.a.at(i, j) * x[j];
        if (acc != s.b[i]) return false;
    }
    return true;
}

bool vertex_point(const System& s, const Vec& x) {
    if (!feasible(s, x)) return false;
    auto supp = nonzero_indices(x);
    return elim_rank(columns_grid(s, supp)) == supp.size();
}

bool adjacent(const System& s, const Vec& u, const Vec& v) {
    if (u == v) return false;
    auto su = nonzero_indices(u), sv = nonzero_indices(v);
    std::vector<std::size_t> uni;
    std::set_union(su.begin(), su.end(), sv.begin(), sv.end(), std::back_inserter(uni));
    return uni.size() == elim_rank(columns_grid(s, uni)) + 1;
}

std::vector<Vec> enumerate_points(const System& s, std::size_t cap) {
    if (s.n() > cap) throw CapError(cap, s.n());
    std::size_t n = s.n();
    std::size_t r = system_rank(s);
    std::vector<Vec> out;

    if (r == 0) {
        Vec zero(n);
        if (feasible(s, zero)) out.push_back(zero);
        return out;
    }

    // Bitmask scan over column subsets of size rank.
    const std::uint32_t full = n >= 32 ? 0xFFFFFFFFu : ((1u << n) - 1);
    for (std::uint32_t mask = 0; mask <= full; ++mask) {
        if (static_cast<std::size_t>(__builtin_popcount(mask)) != r) continue;
        std::vector<std::size_t> cols;
        for (std::size_t j = 0; j < n; ++j)
            if (mask & (1u << j)) cols.push_back(j);
        auto sol = elim_solve(columns_grid(s, cols), s.b);
        if (!sol) continue;
        bool nonneg = std::all_of(sol->begin(), sol->end(),
                                  [](const Rational& q) { return q.sign() >= 0; });
        if (!nonneg) continue;
        Vec full_x(n);
        for (std::size_t k = 0; k < cols.size(); ++k) full_x[cols[k]] = (*sol)[k];
        out.push_back(std::move(full_x));
    }
    std::sort(out.begin(), out.end(), [](const Vec& a, const Vec& b) { return lex_less(a, b); });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

DiameterTable diameter(const System& s, std::size_t cap) {
    DiameterTable t;
    t.verts = enumerate_points(s, cap);
    if (t.verts.empty()) throw ContractError("oracle diameter: no vertices");
    std::size_t v = t.verts.size();
    std::vector<std::vector<std::size_t>> adj_lists(v);
    for (std::size_t i = 0; i < v; ++i)
        for (std::size_t j = i + 1; j < v; ++j)
            if (adjacent(s, t.verts[i], t.verts[j])) {
                adj_lists[i].push_back(j);
                adj_lists[j].push_back(i);
            }
    t.dist.assign(v, std::vector<std::size_t>(v, SIZE_MAX));
    for (std::size_t src = 0; src < v; ++src) {
        auto& d = t.dist[src];
        d[src] = 0;
        std::queue<std::size_t> q;
        q.push(src);
        while (!q.empty()) {
            std::size_t cur = q.front();
            q.pop();
            for (auto nb : adj_lists[cur])
                if (d[nb] == SIZE_MAX) {
                    d[nb] = d[cur] + 1;
                    q.push(nb);
                }
        }
        for (std::size_t j = 0; j < v; ++j) {
            if (d[j] == SIZE_MAX)
                t.connected = false;
            else
                t.value = std::max(t.value, d[j]);
        }
    }
    return t;
}

std::optional<std::size_t> distance(const System& s, const Vec& u, const Vec& v,
                                    std::size_t cap) {
    DiameterTable t = diameter(s, cap);
    std::size_t iu = SIZE_MAX, iv = SIZE_MAX;
    for (std::size_t i = 0; i < t.verts.size(); ++i) {
        if (t.verts[i] == u) iu = i;
        if (t.verts[i] == v) iv = i;
    }
    if (iu == SIZE_MAX || iv == SIZE_MAX)
        throw ContractError("oracle distance: endpoint is not a vertex");
    if (t.dist[iu][iv] == SIZE_MAX) return std::nullopt;
    return t.dist[iu][iv];
}

std::vector<Vec> shortest_walk(const System& s, const Vec& u, const Vec& v, std::size_t cap) {
    auto verts = enumerate_points(s, cap);
    std::size_t iu = SIZE_MAX, iv = SIZE_MAX;
    for (std::size_t i = 0; i < verts.size(); ++i) {
        if (verts[i] == u) iu = i;
        if (verts[i] == v) iv = i;
    }
    if (iu == SIZE_MAX || iv == SIZE_MAX)
        throw ContractError("oracle shortest_walk: endpoint is not a vertex");
    std::vector<std::size_t> parent(verts.size(), SIZE_MAX);
    std::vector<bool> seen(verts.size(), false);
    std::queue<std::size_t> q;
    q.push(iu);
    seen[iu] = true;
    while (!q.empty() && !seen[iv]) {
        std::size_t cur = q.front();
        q.pop();
        for (std::size_t nb = 0; nb < verts.size(); ++nb) {
            if (seen[nb] || nb == cur) continue;
            if (!adjacent(s, verts[cur], verts[nb])) continue;
            seen[nb] = true;
            parent[nb] = cur;
            q.push(nb);
        }
    }
    if (!seen[iv]) return {};
    std::vector<Vec> walk;
    for (std::size_t cur = iv; cur != SIZE_MAX; cur = parent[cur]) walk.push_back(verts[cur]);
    std::reverse(walk.begin(), walk.end());
    return walk;
}

WalkCheck check_walk(const System& s, const Walk& w) {
    WalkCheck c;
    if (w.verts.empty()) {
        c.ok = false;
        c.reason = "empty walk";
        return c;
    }
    for (std::size_t i = 0; i < w.verts.size(); ++i) {
        if (!vertex_point(s, w.verts[i].coords)) {
            c.ok = false;
            c.reason = "walk point is not a vertex of the system";
            c.bad_index = i;
            return c;
        }
    }
    for (std::size_t i = 0; i + 1 < w.verts.size(); ++i) {
        if (w.verts[i] == w.verts[i + 1]) {
            c.ok = false;
            c.reason = "repeated consecutive walk point";
            c.bad_index = i;
            return c;
        }
        if (!adjacent(s, w.verts[i].coords, w.verts[i + 1].coords)) {
            c.ok = false;
            c.reason = "consecutive walk points are not adjacent";
            c.bad_index = i;
            return c;
        }
    }
    return c;
}

} // namespace polysum::oracle
