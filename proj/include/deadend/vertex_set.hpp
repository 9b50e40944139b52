#pragma once

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace deadend {

/// Upper bound on query size; masks are fixed-width so that a table slot and
/// every mask operation stay constant-size.
inline constexpr std::size_t kMaxQueryVertices = 128;

/// Set of query-vertex positions, used for dead-end masks and neighbor sets.
class QueryVertexSet {
public:
    static constexpr std::size_t kWords = kMaxQueryVertices / 64;

    constexpr QueryVertexSet() = default;
    QueryVertexSet(std::initializer_list<std::size_t> members) {
        for (auto m : members) insert(m);
    }

    /// Positions 0..length-1, i.e. the domain of a depth-`length` prefix.
    static QueryVertexSet prefix(std::size_t length) {
        QueryVertexSet s;
        for (std::size_t w = 0; w < kWords && length > 0; ++w) {
            if (length >= 64) {
                s.words_[w] = ~std::uint64_t{0};
                length -= 64;
            } else {
                s.words_[w] = (std::uint64_t{1} << length) - 1;
                length = 0;
            }
        }
        return s;
    }

    void insert(std::size_t pos) { words_[pos / 64] |= std::uint64_t{1} << (pos % 64); }
    void erase(std::size_t pos) { words_[pos / 64] &= ~(std::uint64_t{1} << (pos % 64)); }
    bool contains(std::size_t pos) const { return (words_[pos / 64] >> (pos % 64)) & 1U; }

    bool empty() const {
        for (auto w : words_)
            if (w != 0) return false;
        return true;
    }

    std::size_t size() const {
        std::size_t n = 0;
        for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
        return n;
    }

    /// Largest member; undefined on an empty set.
    std::size_t max() const {
        for (std::size_t w = kWords; w-- > 0;) {
            if (words_[w] != 0) return w * 64 + 63 - static_cast<std::size_t>(std::countl_zero(words_[w]));
        }
        return 0;
    }

    std::vector<std::size_t> members() const {
        std::vector<std::size_t> out;
        for (std::size_t w = 0; w < kWords; ++w) {
            auto bits = words_[w];
            while (bits != 0) {
                out.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
                bits &= bits - 1;
            }
        }
        return out;
    }

    QueryVertexSet& operator|=(const QueryVertexSet& o) {
        for (std::size_t w = 0; w < kWords; ++w) words_[w] |= o.words_[w];
        return *this;
    }
    QueryVertexSet& operator&=(const QueryVertexSet& o) {
        for (std::size_t w = 0; w < kWords; ++w) words_[w] &= o.words_[w];
        return *this;
    }
    friend QueryVertexSet operator|(QueryVertexSet a, const QueryVertexSet& b) { return a |= b; }
    friend QueryVertexSet operator&(QueryVertexSet a, const QueryVertexSet& b) { return a &= b; }
    friend bool operator==(const QueryVertexSet&, const QueryVertexSet&) = default;

private:
    std::array<std::uint64_t, kWords> words_{};
};

using DeadEndMask = QueryVertexSet;

}  // namespace deadend
