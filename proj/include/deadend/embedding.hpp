#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "deadend/graph.hpp"
#include "deadend/vertex_set.hpp"

namespace deadend {

/// Prefix of a matching order mapped onto data vertices.
///
/// Positions refer to the search numbering (position i is the i-th query
/// vertex in matching order). Tracks which position owns each data vertex
/// so the injection check and the collision lookup are O(1).
class PartialEmbedding {
public:
    PartialEmbedding(std::size_t query_size, std::size_t data_size)
        : mapped_(), owner_(data_size, kFree), query_size_(query_size) {
        mapped_.reserve(query_size);
    }

    std::size_t depth() const { return mapped_.size(); }
    std::size_t query_size() const { return query_size_; }
    bool complete() const { return mapped_.size() == query_size_; }

    Vertex at(std::size_t pos) const { return mapped_[pos]; }
    std::span<const Vertex> mapped() const { return mapped_; }

    bool is_used(Vertex v) const { return owner_[v] != kFree; }

    /// Position currently mapped onto `v`, if any.
    std::optional<std::size_t> owner(Vertex v) const {
        if (owner_[v] == kFree) return std::nullopt;
        return owner_[v];
    }

    QueryVertexSet domain() const { return QueryVertexSet::prefix(mapped_.size()); }

    /// Maps the next position onto `v`; `v` must be unused.
    void push(Vertex v) {
        owner_[v] = static_cast<std::uint32_t>(mapped_.size());
        mapped_.push_back(v);
    }

    void pop() {
        owner_[mapped_.back()] = kFree;
        mapped_.pop_back();
    }

private:
    static constexpr std::uint32_t kFree = std::numeric_limits<std::uint32_t>::max();

    std::vector<Vertex> mapped_;
    std::vector<std::uint32_t> owner_;
    std::size_t query_size_;
};

}  // namespace deadend
