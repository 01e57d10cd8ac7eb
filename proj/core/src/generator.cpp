#include "polysum/generator.hpp"

#include "polysum/errors.hpp"

#include <algorithm>

namespace polysum {

const char* kind_name(InstanceKind k) {
    switch (k) {
        case InstanceKind::TwoSumKind: return "two_sum";
        case InstanceKind::ThreeSumKind: return "three_sum";
        case InstanceKind::UnitColumn: return "unit_column";
        case InstanceKind::Product: return "product";
    }
    return "?";
}

std::optional<InstanceKind> kind_from_name(const std::string& name) {
    if (name == "two_sum") return InstanceKind::TwoSumKind;
    if (name == "three_sum") return InstanceKind::ThreeSumKind;
    if (name == "unit_column") return InstanceKind::UnitColumn;
    if (name == "product") return InstanceKind::Product;
    return std::nullopt;
}

namespace {

std::size_t pick(SplitMix64& rng, DimRange r) {
    if (r.lo > r.hi) throw ContractError("generator: empty dimension range");
    return r.lo + static_cast<std::size_t>(rng.below(r.hi - r.lo + 1));
}

Rational rnd_entry(SplitMix64& rng, long bound) {
    return Rational(rng.range(-bound, bound));
}

Rational rnd_pos(SplitMix64& rng, long bound) { return Rational(rng.range(1, bound)); }

// Random block with a strictly positive first row; the positive row
// bounds the orthant slice, so every system built on it is a polytope.
Matrix rnd_block(SplitMix64& rng, std::size_t m, std::size_t n, long bound) {
    Matrix a(m, n);
    for (std::size_t j = 0; j < n; ++j) a.at(0, j) = rnd_pos(rng, bound);
    for (std::size_t i = 1; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) a.at(i, j) = rnd_entry(rng, bound);
    return a;
}

Vec rnd_nonneg_point(SplitMix64& rng, std::size_t n, long hi = 2) {
    Vec x(n);
    for (auto& v : x) v = Rational(rng.range(0, hi));
    return x;
}

Vec rnd_nonzero_row(SplitMix64& rng, std::size_t n, long bound) {
    for (;;) {
        Vec r(n);
        for (auto& v : r) v = rnd_entry(rng, bound);
        if (!is_zero(r)) return r;
    }
}

std::optional<TwoSum> try_two_sum(SplitMix64& rng, const GenConfig& cfg) {
    std::size_t mp = pick(rng, cfg.m_p), np = pick(rng, cfg.n_p);
    std::size_t mq = pick(rng, cfg.m_q), nq = pick(rng, cfg.n_q);
    TwoSum t;
    t.a_block = rnd_block(rng, mp, np, cfg.entry_bound);
    t.b_block = rnd_block(rng, mq, nq, cfg.entry_bound);
    t.a_row = rnd_nonzero_row(rng, np, cfg.entry_bound);
    t.b_row = rnd_nonzero_row(rng, nq, cfg.entry_bound);
    Vec x0 = rnd_nonneg_point(rng, np);
    Vec y0 = rnd_nonneg_point(rng, nq);
    t.c_a = mul(t.a_block, x0);
    t.c_b = mul(t.b_block, y0);
    t.c_shared = dot(t.a_row, x0) + dot(t.b_row, y0);
    t.split_ca = t.c_shared;
    t.split_cb = Rational(0);

    System sys = t.assembled();
    if (rank(sys.a) != mp + mq + 1) return std::nullopt; // redundant shared row
    auto verts = enumerate_vertices(sys, cfg.cap);
    if (verts.size() < 2) return std::nullopt;
    if (cfg.require_simple) {
        std::size_t r = mp + mq + 1;
        for (const auto& v : verts)
            if (v.support.size() != r) return std::nullopt;
    }
    if (cfg.require_both_categories) {
        bool has_x = false, has_y = false;
        for (const auto& v : verts) {
            try {
                (classify(t, v) == Category::XVertex ? has_x : has_y) = true;
            } catch (const IntegrityError&) {
                return std::nullopt;
            }
        }
        if (!has_x || !has_y) return std::nullopt;
    } else {
        // classification must at least be total
        for (const auto& v : verts) {
            try {
                classify(t, v);
            } catch (const IntegrityError&) {
                return std::nullopt;
            }
        }
    }
    return t;
}

std::optional<ThreeSum> try_three_sum(SplitMix64& rng, const GenConfig& cfg) {
    std::size_t mp = pick(rng, cfg.m_p), np = pick(rng, cfg.n_p);
    std::size_t mq = pick(rng, cfg.m_q), nq = pick(rng, cfg.n_q);
    ThreeSum t;
    t.a_block = rnd_block(rng, mp, np, cfg.entry_bound);
    t.b_block = rnd_block(rng, mq, nq, cfg.entry_bound);
    t.a1_row = rnd_nonzero_row(rng, np, cfg.entry_bound);
    t.a2_row = rnd_nonzero_row(rng, np, cfg.entry_bound);
    t.b1_row = rnd_nonzero_row(rng, nq, cfg.entry_bound);
    t.b2_row = rnd_nonzero_row(rng, nq, cfg.entry_bound);
    Vec x0 = rnd_nonneg_point(rng, np);
    Vec y0 = rnd_nonneg_point(rng, nq);
    t.c_a = mul(t.a_block, x0);
    t.c_b = mul(t.b_block, y0);
    t.c1_shared = dot(t.a1_row, x0) + dot(t.b1_row, y0);
    t.c2_shared = dot(t.a2_row, x0) + dot(t.b2_row, y0);
    t.split_ca1 = t.c1_shared;
    t.split_cb1 = Rational(0);
    t.split_ca2 = t.c2_shared;
    t.split_cb2 = Rational(0);
    try {
        t.validate();
    } catch (const ContractError&) {
        return std::nullopt; // dependent shared rows
    }
    System sys = t.assembled();
    if (rank(sys.a) != mp + mq + 2) return std::nullopt;
    auto verts = enumerate_vertices(sys, cfg.cap);
    if (verts.size() < 2) return std::nullopt;
    if (cfg.require_simple) {
        std::size_t r = mp + mq + 2;
        for (const auto& v : verts)
            if (v.support.size() != r) return std::nullopt;
    }
    bool has_mixed = false;
    for (const auto& v : verts) {
        try {
            if (classify3(t, v) == Category3::Mixed) has_mixed = true;
        } catch (const IntegrityError&) {
            return std::nullopt;
        }
    }
    if (cfg.require_both_categories && !has_mixed) return std::nullopt;
    return t;
}

std::optional<GeneratedInstance> try_unit(SplitMix64& rng, const GenConfig& cfg) {
    std::size_t m = pick(rng, cfg.m_p), n = pick(rng, cfg.n_p);
    Matrix a = rnd_block(rng, m, n, cfg.entry_bound);
    Vec arow = rnd_nonzero_row(rng, n, cfg.entry_bound);
    Vec x0 = rnd_nonneg_point(rng, n);
    Vec b = mul(a, x0);
    Rational ca = dot(arow, x0) + Rational(rng.range(0, 2));

    Matrix full(m + 1, n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) full.at(i, j) = a.at(i, j);
    for (std::size_t j = 0; j < n; ++j) full.at(m, j) = arow[j];
    Vec rhs = b;
    rhs.push_back(ca);
    System base(full, rhs, "unit_base");
    if (rank(base.a) != m + 1) return std::nullopt;
    System ext = append_unit_column(base, m);
    auto verts = enumerate_vertices(ext, cfg.cap);
    if (verts.size() < 2) return std::nullopt;
    if (cfg.require_simple) {
        std::size_t r = rank(ext.a);
        for (const auto& v : verts)
            if (v.support.size() != r) return std::nullopt;
    }
    if (cfg.require_both_categories) {
        bool tight = false, slack = false;
        for (const auto& v : verts)
            (v.coords.back().is_zero() ? tight : slack) = true;
        if (!tight || !slack) return std::nullopt;
    }
    GeneratedInstance g;
    g.kind = InstanceKind::UnitColumn;
    g.system = ext;
    g.unit_row = m;
    return g;
}

std::optional<GeneratedInstance> try_product(SplitMix64& rng, const GenConfig& cfg) {
    auto block = [&](DimRange mr, DimRange nr) -> std::optional<System> {
        std::size_t m = pick(rng, mr), n = pick(rng, nr);
        Matrix a = rnd_block(rng, m, n, cfg.entry_bound);
        Vec x0 = rnd_nonneg_point(rng, n);
        System s(a, mul(a, x0), "block");
        if (enumerate_vertices(s, cfg.cap).empty()) return std::nullopt;
        return s;
    };
    auto p = block(cfg.m_p, cfg.n_p);
    auto q = block(cfg.m_q, cfg.n_q);
    if (!p || !q) return std::nullopt;
    GeneratedInstance g;
    g.kind = InstanceKind::Product;
    g.block_p = *p;
    g.block_q = *q;
    g.system = block_diagonal(*p, *q);
    g.system->name = "product";
    return g;
}

} // namespace

GeneratedInstance generate(const GenConfig& cfg) {
    SplitMix64 rng(cfg.seed);
    for (std::size_t attempt = 1; attempt <= cfg.max_attempts; ++attempt) {
        switch (cfg.kind) {
            case InstanceKind::TwoSumKind: {
                if (auto t = try_two_sum(rng, cfg)) {
                    GeneratedInstance g;
                    g.kind = cfg.kind;
                    g.two_sum = std::move(*t);
                    return g;
                }
                break;
            }
            case InstanceKind::ThreeSumKind: {
                if (auto t = try_three_sum(rng, cfg)) {
                    GeneratedInstance g;
                    g.kind = cfg.kind;
                    g.three_sum = std::move(*t);
                    return g;
                }
                break;
            }
            case InstanceKind::UnitColumn: {
                if (auto g = try_unit(rng, cfg)) return *g;
                break;
            }
            case InstanceKind::Product: {
                if (auto g = try_product(rng, cfg)) return *g;
                break;
            }
        }
    }
    throw Error(std::string("generate: attempt cap exhausted for kind ") + kind_name(cfg.kind) +
                " after " + std::to_string(cfg.max_attempts) + " attempts (seed " +
                std::to_string(cfg.seed) + ")");
}

} // namespace polysum
