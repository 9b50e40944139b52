#include "deadend/candidates.hpp"

#include <algorithm>
#include <iterator>
#include <optional>
#include <string>

namespace deadend {

CandidateSets label_filter(const LabeledGraph& q, const LabeledGraph& g) {
    CandidateSets c;
    c.sets.resize(q.vertex_count());
    for (Vertex u = 0; u < q.vertex_count(); ++u) {
        const auto want = q.label(u);
        for (Vertex v = 0; v < g.vertex_count(); ++v) {
            if (g.label(v) == want) c[u].push_back(v);
        }
    }
    return c;
}

void intersect_sorted(std::span<const Vertex> a, std::span<const Vertex> b, std::vector<Vertex>& out) {
    out.clear();
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
}

CandidateSets refine(const CandidateSets& c, const PartialEmbedding& m, const LabeledGraph& q,
                     const LabeledGraph& g) {
    CandidateSets out;
    out.sets.resize(c.size());
    std::vector<Vertex> scratch;
    for (Vertex u = 0; u < c.size(); ++u) {
        if (u < m.depth()) {
            out[u] = {m.at(u)};
            continue;
        }
        out[u] = c[u];
        for (auto w : q.neighbors(u)) {
            if (w >= m.depth()) continue;
            intersect_sorted(out[u], g.neighbors(m.at(w)), scratch);
            out[u].swap(scratch);
        }
    }
    return out;
}

MatchingOrder choose_order(const LabeledGraph& q, const CandidateSets& c) {
    const auto n = q.vertex_count();
    if (n == 0) throw QueryError("query graph has no vertices");
    if (n > kMaxQueryVertices) {
        throw QueryError("query graph has " + std::to_string(n) + " vertices; at most " +
                         std::to_string(kMaxQueryVertices) + " are supported");
    }
    if (!q.is_connected()) throw QueryError("query graph is disconnected");

    MatchingOrder mo;
    mo.position.assign(n, n);
    std::vector<bool> frontier(n, false);

    auto better = [&](Vertex a, Vertex b) {
        return c[a].size() < c[b].size() || (c[a].size() == c[b].size() && a < b);
    };

    Vertex first = 0;
    for (Vertex u = 1; u < n; ++u)
        if (better(u, first)) first = u;

    auto take = [&](Vertex u) {
        mo.position[u] = mo.order.size();
        mo.order.push_back(u);
        for (auto w : q.neighbors(u))
            if (mo.position[w] == n) frontier[w] = true;
    };
    take(first);

    while (mo.order.size() < n) {
        std::optional<Vertex> pick;
        for (Vertex u = 0; u < n; ++u) {
            if (!frontier[u] || mo.position[u] != n) continue;
            if (!pick || better(u, *pick)) pick = u;
        }
        take(*pick);
    }
    return mo;
}

LabeledGraph renumber(const LabeledGraph& q, const MatchingOrder& order) {
    const auto n = q.vertex_count();
    std::vector<Label> labels(n);
    std::vector<std::uint64_t> ids(n);
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (std::size_t i = 0; i < n; ++i) {
        auto u = order.order[i];
        labels[i] = q.label(u);
        ids[i] = q.original_id(u);
        for (auto w : q.neighbors(u)) {
            auto j = order.position[w];
            if (i < j) edges.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(j));
        }
    }
    return LabeledGraph(std::move(labels), edges, std::move(ids));
}

CandidateSets permute(const CandidateSets& c, const MatchingOrder& order) {
    CandidateSets out;
    out.sets.reserve(c.size());
    for (auto u : order.order) out.sets.push_back(c[u]);
    return out;
}

}  // namespace deadend
