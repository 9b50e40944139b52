#pragma once

#include <stdexcept>
#include <vector>

#include "deadend/embedding.hpp"
#include "deadend/graph.hpp"

namespace deadend {

class QueryError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Per-query-vertex admissible data vertices, each set sorted ascending.
struct CandidateSets {
    std::vector<std::vector<Vertex>> sets;

    std::size_t size() const { return sets.size(); }
    const std::vector<Vertex>& operator[](std::size_t u) const { return sets[u]; }
    std::vector<Vertex>& operator[](std::size_t u) { return sets[u]; }

    friend bool operator==(const CandidateSets&, const CandidateSets&) = default;
};

/// Permutation of query vertices in the order the search assigns them.
struct MatchingOrder {
    std::vector<Vertex> order;          // order[i] = query vertex at position i
    std::vector<std::size_t> position;  // position[u] = index of u in order

    friend bool operator==(const MatchingOrder&, const MatchingOrder&) = default;
};

/// C[u] = { v : label(v) == label(u) }. Labels must come from one dictionary.
CandidateSets label_filter(const LabeledGraph& q, const LabeledGraph& g);

/// Edge-constraint refinement against a partial embedding, evaluated in full:
/// unmapped u keeps c[u] intersected with N(m[u']) for every mapped neighbor
/// u'; mapped u collapses to {m[u]}. `q`, `c` and `m` use search numbering.
CandidateSets refine(const CandidateSets& c, const PartialEmbedding& m, const LabeledGraph& q,
                     const LabeledGraph& g);

/// Greedy connected-prefix order: smallest candidate set first, then the
/// frontier vertex with the fewest candidates, ties to the smaller id.
/// Throws QueryError for empty or disconnected queries.
MatchingOrder choose_order(const LabeledGraph& q, const CandidateSets& c);

/// Query graph relabeled so that vertex i is order.order[i]. Original file
/// ids travel with the vertices.
LabeledGraph renumber(const LabeledGraph& q, const MatchingOrder& order);

/// Candidate sets re-indexed by position.
CandidateSets permute(const CandidateSets& c, const MatchingOrder& order);

/// Sorted-range intersection, appended into `out` (cleared first).
void intersect_sorted(std::span<const Vertex> a, std::span<const Vertex> b, std::vector<Vertex>& out);

}  // namespace deadend
