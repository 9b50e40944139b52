#include "deadend/search.hpp"

#include <span>
#include <stdexcept>
#include <string>

namespace deadend {

PreparedQuery prepare(const LabeledGraph& q, const LabeledGraph& g) {
    PreparedQuery p;
    p.candidates = label_filter(q, g);
    p.order = choose_order(q, p.candidates);
    return p;
}

std::vector<QueryVertexSet> neighbor_masks(const LabeledGraph& q) {
    std::vector<QueryVertexSet> out(q.vertex_count());
    for (Vertex u = 0; u < q.vertex_count(); ++u)
        for (auto w : q.neighbors(u)) out[u].insert(w);
    return out;
}

DeadEndMask mask_empty_candidate(std::size_t pos, const PartialEmbedding& m, const LabeledGraph& q) {
    DeadEndMask gamma;
    for (auto w : q.neighbors(static_cast<Vertex>(pos)))
        if (w < m.depth()) gamma.insert(w);
    return gamma;
}

DeadEndMask mask_noninjective(const PartialEmbedding& m, Vertex v) {
    auto owner = m.owner(v);
    if (!owner) throw std::logic_error("mask_noninjective: data vertex is not in use");
    return DeadEndMask{*owner, m.depth()};
}

DeadEndMask aggregate_masks(const DeadEndMask& gamma_star, std::size_t k, const LabeledGraph& q,
                            const PartialEmbedding& m) {
    if (!gamma_star.contains(k)) return gamma_star;
    auto gamma = gamma_star;
    for (auto w : q.neighbors(static_cast<Vertex>(k))) gamma.insert(w);
    return gamma & m.domain();
}

bool verify_embedding(const Embedding& m, const LabeledGraph& q, const LabeledGraph& g) {
    if (m.size() != q.vertex_count()) return false;
    for (Vertex u = 0; u < q.vertex_count(); ++u) {
        if (m[u] >= g.vertex_count()) return false;
        if (q.label(u) != g.label(m[u])) return false;
    }
    for (Vertex u = 0; u < q.vertex_count(); ++u) {
        for (auto w : q.neighbors(u))
            if (u < w && !g.has_edge(m[u], m[w])) return false;
        for (Vertex w = u + 1; w < q.vertex_count(); ++w)
            if (m[u] == m[w]) return false;
    }
    return true;
}

namespace {

/// State shared by both engines: the query in search numbering, per-depth
/// refined candidate views, the prefix, and stop conditions.
class SearchContext {
public:
    SearchContext(const LabeledGraph& q, const LabeledGraph& g, const CandidateSets& c,
                  const MatchingOrder& order, const SearchOptions& options)
        : g_(g),
          order_(order),
          options_(options),
          q_(renumber(q, order)),
          n_(q.vertex_count()),
          nbr_(neighbor_masks(q_)),
          m_(n_, g.vertex_count()),
          base_(permute(c, order)),
          views_(n_ + 1, std::vector<std::span<const Vertex>>(n_)),
          buffers_(n_ + 1, std::vector<std::vector<Vertex>>(n_)) {
        if (c.size() != n_ || order.order.size() != n_) {
            throw std::invalid_argument("candidate sets and matching order must cover every query vertex");
        }
        for (std::size_t p = 0; p < n_; ++p) views_[0][p] = base_[p];
        start_ = std::chrono::steady_clock::now();
        if (options.limit && *options.limit == 0) stopped_ = true;
    }

    std::size_t n_query() const { return n_; }

    /// Counts a call and checks the timeout and recursion cap.
    void count_call() {
        ++stats_.recursions;
        if (options_.recursion_cap && stats_.recursions > *options_.recursion_cap) {
            stats_.capped = true;
            stopped_ = true;
        }
        if (options_.timeout && (stats_.recursions & 0xFFF) == 0) {
            if (std::chrono::steady_clock::now() - start_ > *options_.timeout) {
                stats_.timed_out = true;
                stopped_ = true;
            }
        }
    }

    /// Refined candidates for depth k from depth k-1, touching only positions
    /// adjacent to the mapping added last.
    void refine_level(std::size_t k) {
        if (k == 0) return;
        const auto last = k - 1;
        const auto v = m_.at(last);
        for (std::size_t p = k; p < n_; ++p) {
            if (nbr_[last].contains(p)) {
                intersect_sorted(views_[k - 1][p], g_.neighbors(v), buffers_[k][p]);
                views_[k][p] = buffers_[k][p];
            } else {
                views_[k][p] = views_[k - 1][p];
            }
        }
    }

    void report() {
        Embedding e(n_);
        for (std::size_t p = 0; p < n_; ++p) e[order_.order[p]] = m_.at(p);
        embeddings_.push_back(std::move(e));
        ++stats_.embeddings;
        if (options_.limit && stats_.embeddings >= *options_.limit) stopped_ = true;
    }

    SearchOutcome finish() {
        stats_.wall_nanos = static_cast<std::uint64_t>(
            std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - start_)
                .count());
        return {std::move(embeddings_), stats_};
    }

    const LabeledGraph& g_;
    const MatchingOrder& order_;
    const SearchOptions& options_;
    LabeledGraph q_;
    std::size_t n_;
    std::vector<QueryVertexSet> nbr_;
    PartialEmbedding m_;
    CandidateSets base_;
    std::vector<std::vector<std::span<const Vertex>>> views_;
    std::vector<std::vector<std::vector<Vertex>>> buffers_;
    std::vector<Embedding> embeddings_;
    SearchStats stats_;
    bool stopped_ = false;
    std::chrono::steady_clock::time_point start_;
};

class NaiveEngine {
public:
    explicit NaiveEngine(SearchContext& ctx) : ctx_(ctx) {}

    void search(std::size_t k) {
        ctx_.count_call();
        if (ctx_.stopped_) return;
        if (k == ctx_.n_) {
            ctx_.report();
            return;
        }
        ctx_.refine_level(k);
        for (auto v : ctx_.views_[k][k]) {
            if (ctx_.m_.is_used(v)) continue;
            ctx_.m_.push(v);
            search(k + 1);
            ctx_.m_.pop();
            if (ctx_.stopped_) return;
        }
    }

private:
    SearchContext& ctx_;
};

class GuardedEngine {
public:
    explicit GuardedEngine(SearchContext& ctx)
        : ctx_(ctx), table_(ctx.n_, ctx.g_.vertex_count()), track_(ctx.n_), observer_(ctx.options_.observer) {}

    /// Returns a dead-end mask of the current prefix, or nullopt when the
    /// prefix is not known to be dead (it produced a report, or the search stopped).
    std::optional<DeadEndMask> search(std::size_t k) {
        ctx_.count_call();
        if (k > 0) {
            track_.enter_call(k);
            if (observer_) observer_->on_enter(k, track_.id(k), ctx_.m_);
        }
        if (ctx_.stopped_) return std::nullopt;
        if (k == ctx_.n_) {
            ctx_.report();
            if (observer_) observer_->on_report(ctx_.m_);
            return std::nullopt;
        }

        ctx_.refine_level(k);
        const auto reports_before = ctx_.stats_.embeddings;
        const auto& views = ctx_.views_[k];

        std::optional<std::size_t> empty_pos;
        for (std::size_t p = k; p < ctx_.n_; ++p) {
            if (views[p].empty()) {
                empty_pos = p;
                break;
            }
        }

        DeadEndMask gamma;
        if (empty_pos) {
            gamma = ctx_.nbr_[*empty_pos] & ctx_.m_.domain();
        } else {
            DeadEndMask star;
            for (auto v : views[k]) {
                if (auto owner = ctx_.m_.owner(v)) {
                    star.insert(*owner);
                    star.insert(k);
                } else if (auto hit = ctx_.options_.pruning ? table_.match(track_, k, v) : std::nullopt) {
                    ++ctx_.stats_.prunes;
                    if (observer_) observer_->on_prune(k, v, table_.slot(k, v), ctx_.m_);
                    star |= *hit;
                } else {
                    ctx_.m_.push(v);
                    auto child = search(k + 1);
                    ctx_.m_.pop();
                    if (ctx_.stopped_) return std::nullopt;
                    if (child) star |= *child;
                }
            }
            gamma = star.contains(k) ? (star | ctx_.nbr_[k]) & ctx_.m_.domain() : star;
        }

        if (ctx_.stats_.embeddings != reports_before) return std::nullopt;
        if (k > 0) {
            const auto last = k - 1;
            const auto v = ctx_.m_.at(last);
            if (table_.record(track_, last, v, gamma)) ++ctx_.stats_.overwrites;
            ++ctx_.stats_.records;
            if (observer_) observer_->on_record(last, v, table_.slot(last, v), gamma, ctx_.m_);
        }
        return gamma;
    }

private:
    SearchContext& ctx_;
    DeadEndTable table_;
    EmbeddingIdTrack track_;
    SearchObserver* observer_;
};

}  // namespace

SearchOutcome naive_search(const LabeledGraph& q, const LabeledGraph& g, const CandidateSets& c,
                           const MatchingOrder& order, const SearchOptions& options) {
    SearchContext ctx(q, g, c, order, options);
    NaiveEngine engine(ctx);
    engine.search(0);
    return ctx.finish();
}

SearchOutcome guarded_search(const LabeledGraph& q, const LabeledGraph& g, const CandidateSets& c,
                             const MatchingOrder& order, const SearchOptions& options) {
    SearchContext ctx(q, g, c, order, options);
    GuardedEngine engine(ctx);
    engine.search(0);
    return ctx.finish();
}

}  // namespace deadend
