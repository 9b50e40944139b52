#include "deadend/workload.hpp"

#include <algorithm>
#include <exception>
#include <limits>
#include <numeric>
#include <ostream>

#include <nlohmann/json.hpp>

namespace deadend {

std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
        const std::uint64_t r = rng();
        if (r >= threshold) return r % bound;
    }
}

LabeledGraph random_walk_query(const LabeledGraph& g, std::size_t n, std::uint64_t seed) {
    if (n == 0) throw WorkloadError("query size must be at least 1");
    if (n > g.vertex_count()) {
        throw WorkloadError("query size " + std::to_string(n) + " exceeds data graph size " +
                            std::to_string(g.vertex_count()));
    }

    std::vector<Vertex> starts;
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (n == 1 || g.degree(v) > 0) starts.push_back(v);
    if (starts.empty()) throw WorkloadError("data graph has no edges; cannot walk");

    Rng rng(seed);
    Vertex current = starts[uniform_below(rng, starts.size())];

    std::vector<Vertex> visited{current};
    std::vector<std::size_t> local(g.vertex_count(), std::numeric_limits<std::size_t>::max());
    local[current] = 0;

    const std::size_t budget = 1000 * n;
    for (std::size_t step = 0; visited.size() < n; ++step) {
        if (step == budget) {
            throw WorkloadError("random walk with seed " + std::to_string(seed) + " reached only " +
                                std::to_string(visited.size()) + " of " + std::to_string(n) +
                                " vertices in " + std::to_string(budget) + " steps; try a different seed");
        }
        auto adj = g.neighbors(current);
        current = adj[uniform_below(rng, adj.size())];
        if (local[current] == std::numeric_limits<std::size_t>::max()) {
            local[current] = visited.size();
            visited.push_back(current);
        }
    }

    std::vector<Label> labels;
    std::vector<std::uint64_t> ids;
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (std::size_t i = 0; i < visited.size(); ++i) {
        labels.push_back(g.label(visited[i]));
        ids.push_back(g.original_id(visited[i]));
        for (auto w : g.neighbors(visited[i])) {
            auto j = local[w];
            if (j != std::numeric_limits<std::size_t>::max() && i < j)
                edges.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(j));
        }
    }
    return LabeledGraph(std::move(labels), edges, std::move(ids));
}

std::string_view to_string(RunMode mode) {
    switch (mode) {
        case RunMode::naive: return "naive";
        case RunMode::guarded: return "guarded";
        case RunMode::both: return "both";
    }
    return "?";
}

RunMode parse_run_mode(std::string_view text) {
    if (text == "naive") return RunMode::naive;
    if (text == "guarded") return RunMode::guarded;
    if (text == "both") return RunMode::both;
    throw WorkloadError("unknown mode '" + std::string(text) + "' (expected naive, guarded or both)");
}

namespace {

struct QueryRun {
    std::vector<QueryResult> results;
    bool diverged = false;
    bool monotone = true;
    std::string error;
};

QueryRun run_one(const LabeledGraph& g, const QuerySpec& spec, std::size_t index, RunMode mode,
                 const RunOptions& options) {
    QueryRun run;
    const auto seed = spec.seed + index;
    const auto q = random_walk_query(g, spec.size, seed);
    const auto prepared = prepare(q, g);

    SearchOptions so;
    so.limit = options.limit;
    so.timeout = options.timeout;

    std::optional<SearchOutcome> naive;
    std::optional<SearchOutcome> guarded;
    if (mode != RunMode::guarded) {
        naive = naive_search(q, g, prepared.candidates, prepared.order, so);
        run.results.push_back({index, seed, RunMode::naive, naive->stats});
    }
    if (mode != RunMode::naive) {
        guarded = guarded_search(q, g, prepared.candidates, prepared.order, so);
        run.results.push_back({index, seed, RunMode::guarded, guarded->stats});
    }
    if (naive && guarded && !naive->stats.timed_out && !guarded->stats.timed_out) {
        run.diverged = naive->embeddings != guarded->embeddings;
        run.monotone = guarded->stats.recursions <= naive->stats.recursions;
    }
    return run;
}

double median(std::vector<std::uint64_t> xs) {
    if (xs.empty()) return 0.0;
    std::sort(xs.begin(), xs.end());
    const auto mid = xs.size() / 2;
    if (xs.size() % 2 == 1) return static_cast<double>(xs[mid]);
    return (static_cast<double>(xs[mid - 1]) + static_cast<double>(xs[mid])) / 2.0;
}

ModeAggregate aggregate(const std::vector<QueryResult>& results, RunMode mode) {
    ModeAggregate agg;
    agg.mode = mode;
    std::vector<std::uint64_t> walls;
    for (const auto& r : results) {
        if (r.mode != mode) continue;
        ++agg.queries;
        agg.embeddings += r.stats.embeddings;
        agg.recursions += r.stats.recursions;
        agg.prunes += r.stats.prunes;
        agg.records += r.stats.records;
        agg.overwrites += r.stats.overwrites;
        agg.timeouts += r.stats.timed_out ? 1 : 0;
        walls.push_back(r.stats.wall_nanos);
    }
    if (!walls.empty()) {
        agg.mean_wall_nanos = static_cast<double>(std::accumulate(walls.begin(), walls.end(), std::uint64_t{0})) /
                              static_cast<double>(walls.size());
    }
    agg.median_wall_nanos = median(std::move(walls));
    return agg;
}

}  // namespace

QuerySetReport run_query_set(const LabeledGraph& g, const QuerySpec& spec, RunMode mode,
                             const RunOptions& options) {
    if (spec.size == 0) throw WorkloadError("query size must be at least 1");
    if (spec.count == 0) throw WorkloadError("query count must be at least 1");

    std::vector<QueryRun> runs(spec.count);
    const auto count = static_cast<std::int64_t>(spec.count);

    if (options.jobs <= 1) {
        for (std::int64_t i = 0; i < count; ++i) runs[i] = run_one(g, spec, static_cast<std::size_t>(i), mode, options);
    } else {
#pragma omp parallel for schedule(dynamic, 1) num_threads(options.jobs)
        for (std::int64_t i = 0; i < count; ++i) {
            try {
                runs[i] = run_one(g, spec, static_cast<std::size_t>(i), mode, options);
            } catch (const std::exception& e) {
                runs[i].error = e.what();
            }
        }
        for (const auto& r : runs)
            if (!r.error.empty()) throw WorkloadError(r.error);
    }

    QuerySetReport report;
    report.spec = spec;
    report.mode = mode;
    for (std::size_t i = 0; i < runs.size(); ++i) {
        auto& r = runs[i];
        report.results.insert(report.results.end(), r.results.begin(), r.results.end());
        if (r.diverged) report.divergent_queries.push_back(i);
        report.recursions_monotone = report.recursions_monotone && r.monotone;
    }
    if (mode != RunMode::guarded) report.aggregates.push_back(aggregate(report.results, RunMode::naive));
    if (mode != RunMode::naive) report.aggregates.push_back(aggregate(report.results, RunMode::guarded));
    return report;
}

void write_report(std::ostream& out, const QuerySetReport& report) {
    for (const auto& r : report.results) {
        nlohmann::ordered_json rec;
        rec["query_index"] = r.query_index;
        rec["seed"] = r.seed;
        rec["mode"] = to_string(r.mode);
        rec["embeddings"] = r.stats.embeddings;
        rec["recursions"] = r.stats.recursions;
        rec["prunes"] = r.stats.prunes;
        rec["records"] = r.stats.records;
        rec["overwrites"] = r.stats.overwrites;
        rec["wall_nanos"] = r.stats.wall_nanos;
        rec["timed_out"] = r.stats.timed_out;
        out << rec.dump() << '\n';
    }

    nlohmann::ordered_json agg;
    agg["aggregate"] = true;
    agg["size"] = report.spec.size;
    agg["count"] = report.spec.count;
    agg["seed"] = report.spec.seed;
    agg["mode"] = to_string(report.mode);
    for (const auto& a : report.aggregates) {
        nlohmann::ordered_json m;
        m["queries"] = a.queries;
        m["embeddings"] = a.embeddings;
        m["recursions"] = a.recursions;
        m["prunes"] = a.prunes;
        m["records"] = a.records;
        m["overwrites"] = a.overwrites;
        m["mean_wall_nanos"] = a.mean_wall_nanos;
        m["median_wall_nanos"] = a.median_wall_nanos;
        m["timeouts"] = a.timeouts;
        agg[std::string(to_string(a.mode))] = m;
    }
    if (report.mode == RunMode::both) {
        agg["divergences"] = report.divergent_queries.size();
        agg["recursions_monotone"] = report.recursions_monotone;
        const auto& naive = report.aggregates[0];
        const auto& guarded = report.aggregates[1];
        agg["recursion_ratio"] = guarded.recursions == 0
                                     ? 0.0
                                     : static_cast<double>(naive.recursions) / static_cast<double>(guarded.recursions);
    }
    out << agg.dump() << '\n';
}

PathologyInstance pathology_family(std::size_t branches, std::size_t decoys, LabelDictionary& dict) {
    if (branches == 0 || decoys == 0) throw WorkloadError("pathology_family needs at least one branch and one decoy");
    const auto a = dict.intern("a");
    const auto b = dict.intern("b");
    const auto c = dict.intern("c");

    // 0: hub (a), 1..m: b-vertices, then decoys, the productive c-vertex and its a-neighbor.
    const Vertex hub = 0;
    const auto first_b = Vertex{1};
    const auto first_decoy = static_cast<Vertex>(first_b + branches);
    const auto productive = static_cast<Vertex>(first_decoy + decoys);
    const auto fresh = static_cast<Vertex>(productive + 1);

    std::vector<Label> labels(fresh + 1, c);
    labels[hub] = a;
    labels[fresh] = a;
    for (std::size_t i = 0; i < branches; ++i) labels[first_b + i] = b;

    std::vector<std::pair<Vertex, Vertex>> edges;
    for (std::size_t i = 0; i < branches; ++i) {
        const auto bv = static_cast<Vertex>(first_b + i);
        edges.emplace_back(hub, bv);
        for (std::size_t j = 0; j < decoys; ++j) edges.emplace_back(bv, static_cast<Vertex>(first_decoy + j));
    }
    for (std::size_t j = 0; j < decoys; ++j) edges.emplace_back(static_cast<Vertex>(first_decoy + j), hub);
    edges.emplace_back(first_b, productive);
    edges.emplace_back(productive, fresh);

    const std::vector<std::pair<Vertex, Vertex>> path{{0, 1}, {1, 2}, {2, 3}};
    LabeledGraph query({a, b, c, a}, path);
    return {LabeledGraph(std::move(labels), edges), std::move(query)};
}

}  // namespace deadend
