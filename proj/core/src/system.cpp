#include "polysum/system.hpp"

#include "polysum/errors.hpp"

#include <algorithm>

namespace polysum {

System::System(Matrix a_, Vec b_, std::string name_)
    : a(std::move(a_)), b(std::move(b_)), name(std::move(name_)) {
    if (a.rows() != b.size())
        throw ContractError("system: rhs length " + std::to_string(b.size()) +
                            " does not match row count " + std::to_string(a.rows()));
}

std::size_t Graph::index_of(const Vertex& v) const {
    for (std::size_t i = 0; i < verts.size(); ++i)
        if (verts[i] == v) return i;
    throw ContractError("vertex not present in graph");
}

bool Graph::has_edge(std::size_t i, std::size_t j) const {
    if (i == j) return false;
    if (i > j) std::swap(i, j);
    return std::binary_search(edges.begin(), edges.end(), std::make_pair(i, j));
}

const char* rule_name(StepRule r) {
    switch (r) {
        case StepRule::Lift: return "lift";
        case StepRule::Jump: return "jump";
        case StepRule::SameX: return "same_x";
        case StepRule::Escape: return "escape";
    }
    return "?";
}

void Walk::push(const Vertex& v, StepTag tag) {
    if (verts.empty()) throw ContractError("walk: push on empty walk");
    if (verts.back() == v) return;
    verts.push_back(v);
    tags.push_back(std::move(tag));
}

void Walk::append(const Walk& tail) {
    if (tail.verts.empty()) return;
    if (verts.empty()) {
        *this = tail;
        return;
    }
    if (!(verts.back() == tail.verts.front()))
        throw ContractError("walk: append endpoint mismatch");
    for (std::size_t i = 1; i < tail.verts.size(); ++i) push(tail.verts[i], tail.tags[i - 1]);
}

Walk Walk::reversed() const {
    Walk w;
    w.verts.assign(verts.rbegin(), verts.rend());
    w.tags.assign(tags.rbegin(), tags.rend());
    return w;
}

} // namespace polysum
