#include "deadend/deadend_store.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

namespace deadend {

DeadEndTable::DeadEndTable(std::size_t query_size, std::size_t data_size)
    : query_size_(query_size), data_size_(data_size), slots_(query_size * data_size) {}

bool DeadEndTable::record(const EmbeddingIdTrack& track, std::size_t pos, Vertex v, DeadEndMask gamma) {
    gamma.erase(pos);
    DeadEndRecord rec;
    rec.mu = gamma.empty() ? 0 : static_cast<std::uint32_t>(gamma.max() + 1);
    rec.phi = track.id(rec.mu);
    rec.gamma = gamma;

    auto& slot = slots_[pos * data_size_ + v];
    const bool overwrote = slot.occupied();
    slot = rec;
    return overwrote;
}

std::size_t DeadEndTable::occupied() const {
    return static_cast<std::size_t>(
        std::count_if(slots_.begin(), slots_.end(), [](const DeadEndRecord& r) { return r.occupied(); }));
}

void DeadEndTable::clear() { std::fill(slots_.begin(), slots_.end(), DeadEndRecord{}); }

std::string format_slot(std::size_t pos, Vertex v, const DeadEndRecord& rec, const LabeledGraph& data) {
    std::ostringstream out;
    out << "slot " << pos + 1 << ' ' << data.original_id(v) << " phi=" << rec.phi << " mu=" << rec.mu
        << " gamma=";
    bool first = true;
    for (auto m : rec.gamma.members()) {
        if (!first) out << ',';
        out << m + 1;
        first = false;
    }
    return out.str();
}

void DeadEndTable::dump(std::ostream& out, const LabeledGraph& data) const {
    for (std::size_t pos = 0; pos < query_size_; ++pos) {
        for (Vertex v = 0; v < data_size_; ++v) {
            const auto& rec = slot(pos, v);
            if (rec.occupied()) out << format_slot(pos, v, rec, data) << '\n';
        }
    }
}

}  // namespace deadend
