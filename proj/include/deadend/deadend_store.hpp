#pragma once

#include <algorithm>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "deadend/graph.hpp"
#include "deadend/vertex_set.hpp"

namespace deadend {

/// Embedding ids of the prefixes on the active search path.
///
/// Every recursive call at depth >= 1 takes the next value of a monotone call
/// counter as the id of the prefix it was called with; ids[0] stays 0 for the
/// empty prefix. Only ids[0..current depth] are meaningful at any moment.
class EmbeddingIdTrack {
public:
    explicit EmbeddingIdTrack(std::size_t query_size) : ids_(query_size + 1, 0) {}

    void enter_call(std::size_t depth) { ids_[depth] = ++counter_; }

    std::uint64_t id(std::size_t depth) const { return ids_[depth]; }
    std::uint64_t counter() const { return counter_; }
    std::span<const std::uint64_t> ids() const { return ids_; }

    void reset() {
        std::fill(ids_.begin(), ids_.end(), 0);
        counter_ = 0;
    }

private:
    std::vector<std::uint64_t> ids_;
    std::uint64_t counter_ = 0;
};

/// One stored dead-end pattern: the id of the prefix it was taken from, the
/// length `mu` of that prefix, and the mask without the slot's own position.
struct DeadEndRecord {
    static constexpr std::uint64_t kEmpty = std::numeric_limits<std::uint64_t>::max();

    std::uint64_t phi = kEmpty;
    std::uint32_t mu = 0;
    DeadEndMask gamma;

    bool occupied() const { return phi != kEmpty; }
    friend bool operator==(const DeadEndRecord&, const DeadEndRecord&) = default;
};

/// Direct-addressed pattern table keyed by the last mapping (position, data vertex).
/// One record per slot; a later record replaces an earlier one.
class DeadEndTable {
public:
    DeadEndTable(std::size_t query_size, std::size_t data_size);

    /// Stores the pattern selected by `gamma` from the current prefix whose
    /// last mapping is (pos, v). Returns true when an occupied slot was overwritten.
    bool record(const EmbeddingIdTrack& track, std::size_t pos, Vertex v, DeadEndMask gamma);

    /// Checks the stored pattern for (pos, v) against the current prefix of
    /// length `pos`. On a hit returns the full mask (stored gamma plus `pos`).
    std::optional<DeadEndMask> match(const EmbeddingIdTrack& track, std::size_t pos, Vertex v) const {
        const auto& rec = slots_[pos * data_size_ + v];
        if (rec.phi != track.id(rec.mu)) return std::nullopt;
        auto full = rec.gamma;
        full.insert(pos);
        return full;
    }

    const DeadEndRecord& slot(std::size_t pos, Vertex v) const { return slots_[pos * data_size_ + v]; }

    std::size_t query_size() const { return query_size_; }
    std::size_t data_size() const { return data_size_; }
    std::size_t occupied() const;
    void clear();

    /// Lines `slot <k> <v> phi=<phi> mu=<mu> gamma=<k...>` for occupied slots,
    /// k as 1-based matching-order positions and v as the data graph's file ids.
    void dump(std::ostream& out, const LabeledGraph& data) const;

private:
    std::size_t query_size_;
    std::size_t data_size_;
    std::vector<DeadEndRecord> slots_;
};

/// Renders a record in the dump/trace syntax.
std::string format_slot(std::size_t pos, Vertex v, const DeadEndRecord& rec, const LabeledGraph& data);

}  // namespace deadend
