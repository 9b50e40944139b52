#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <vector>

#include "deadend/candidates.hpp"
#include "deadend/deadend_store.hpp"
#include "deadend/embedding.hpp"
#include "deadend/graph.hpp"
#include "deadend/vertex_set.hpp"

namespace deadend {

struct SearchStats {
    std::uint64_t recursions = 0;
    std::uint64_t prunes = 0;
    std::uint64_t records = 0;
    std::uint64_t overwrites = 0;
    std::uint64_t embeddings = 0;
    std::uint64_t wall_nanos = 0;
    bool timed_out = false;
    bool capped = false;  // stopped by SearchOptions::recursion_cap
};

/// Hooks into the guarded search. Positions and embeddings are in search
/// numbering; `m` is the current prefix at the time of the event.
class SearchObserver {
public:
    virtual ~SearchObserver() = default;

    /// A recursive call at `depth` >= 1 began and took embedding id `id`.
    virtual void on_enter(std::size_t depth, std::uint64_t id, const PartialEmbedding& m) {
        (void)depth, (void)id, (void)m;
    }
    virtual void on_report(const PartialEmbedding& m) { (void)m; }
    /// A pattern was stored at slot (pos, v); `mask` is the mask before the
    /// slot position was stripped, `m` has depth pos + 1.
    virtual void on_record(std::size_t pos, Vertex v, const DeadEndRecord& rec, const DeadEndMask& mask,
                           const PartialEmbedding& m) {
        (void)pos, (void)v, (void)rec, (void)mask, (void)m;
    }
    /// Extending `m` (depth pos) with (pos, v) was skipped by a table hit.
    virtual void on_prune(std::size_t pos, Vertex v, const DeadEndRecord& rec, const PartialEmbedding& m) {
        (void)pos, (void)v, (void)rec, (void)m;
    }
};

struct SearchOptions {
    /// Stop after this many embeddings; nullopt enumerates everything.
    std::optional<std::uint64_t> limit = 1000;
    std::optional<std::chrono::nanoseconds> timeout;
    std::optional<std::uint64_t> recursion_cap;
    SearchObserver* observer = nullptr;
    /// Guarded search only. Off keeps mask extraction and recording but skips
    /// the table lookup, which is the no-pruning ablation.
    bool pruning = true;
};

/// Complete embedding: embedding[u] is the data vertex of query vertex u
/// (query numbering as passed to the search).
using Embedding = std::vector<Vertex>;

struct SearchOutcome {
    std::vector<Embedding> embeddings;
    SearchStats stats;
};

/// Label-filtered candidates and the matching order for a query/data pair.
struct PreparedQuery {
    CandidateSets candidates;
    MatchingOrder order;
};

PreparedQuery prepare(const LabeledGraph& q, const LabeledGraph& g);

/// Plain backtracking: refine, iterate candidates of the next position in
/// ascending id, skip used vertices, recurse.
SearchOutcome naive_search(const LabeledGraph& q, const LabeledGraph& g, const CandidateSets& c,
                           const MatchingOrder& order, const SearchOptions& options = {});

/// Backtracking with dead-end mask extraction and table-based pruning.
/// Reports the same embedding sequence as naive_search.
SearchOutcome guarded_search(const LabeledGraph& q, const LabeledGraph& g, const CandidateSets& c,
                             const MatchingOrder& order, const SearchOptions& options = {});

/// Neighbors of `pos` among the mapped positions. `q` is in search numbering.
DeadEndMask mask_empty_candidate(std::size_t pos, const PartialEmbedding& m, const LabeledGraph& q);

/// {owner of v, next position} for an extension that would reuse `v`.
DeadEndMask mask_noninjective(const PartialEmbedding& m, Vertex v);

/// Converts the union of per-extension masks for position k = m.depth() into
/// a mask of `m`: adds N(k) and restricts to dom(m) when k is in the union.
DeadEndMask aggregate_masks(const DeadEndMask& gamma_star, std::size_t k, const LabeledGraph& q,
                            const PartialEmbedding& m);

/// Label, edge and injection constraints over a full assignment.
bool verify_embedding(const Embedding& m, const LabeledGraph& q, const LabeledGraph& g);

/// Neighbor set of every query vertex as a mask (search numbering).
std::vector<QueryVertexSet> neighbor_masks(const LabeledGraph& q);

}  // namespace deadend
