#pragma once

#include <chrono>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "deadend/graph.hpp"
#include "deadend/search.hpp"

namespace deadend {

class WorkloadError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Query sets are reproducible across platforms: std::mt19937_64 has a
/// standard-mandated output sequence, and bounded draws use rejection
/// sampling instead of the implementation-defined std distributions.
using Rng = std::mt19937_64;

/// Uniform integer in [0, bound), bound > 0.
std::uint64_t uniform_below(Rng& rng, std::uint64_t bound);

/// Connected query of `n` vertices: a seeded random walk from a uniformly
/// chosen start vertex (among non-isolated vertices when n >= 2) runs until
/// n distinct vertices are visited; the query is the induced subgraph on them,
/// vertices in visit order, carrying the data graph's file ids and labels.
/// Throws WorkloadError if 1000*n steps do not reach n vertices.
LabeledGraph random_walk_query(const LabeledGraph& g, std::size_t n, std::uint64_t seed);

enum class RunMode { naive, guarded, both };

std::string_view to_string(RunMode mode);
RunMode parse_run_mode(std::string_view text);

struct QuerySpec {
    std::size_t size = 4;
    std::uint64_t seed = 0;
    std::size_t count = 1;
};

struct RunOptions {
    std::optional<std::uint64_t> limit = 1000;
    std::chrono::nanoseconds timeout = std::chrono::seconds(60);
    int jobs = 1;
};

/// One query run in one engine mode.
struct QueryResult {
    std::size_t query_index = 0;
    std::uint64_t seed = 0;
    RunMode mode = RunMode::guarded;
    SearchStats stats;
};

struct ModeAggregate {
    RunMode mode = RunMode::guarded;
    std::size_t queries = 0;
    std::uint64_t embeddings = 0;
    std::uint64_t recursions = 0;
    std::uint64_t prunes = 0;
    std::uint64_t records = 0;
    std::uint64_t overwrites = 0;
    double mean_wall_nanos = 0.0;
    double median_wall_nanos = 0.0;
    std::size_t timeouts = 0;
};

struct QuerySetReport {
    QuerySpec spec;
    RunMode mode = RunMode::guarded;
    /// Ordered by query index, naive before guarded within a query.
    std::vector<QueryResult> results;
    std::vector<ModeAggregate> aggregates;
    /// Queries whose naive and guarded embedding sequences differed (both mode).
    std::vector<std::size_t> divergent_queries;
    /// Guarded recursions never exceeded naive recursions on a finished query (both mode).
    bool recursions_monotone = true;
};

/// Generates spec.count queries with seeds spec.seed, spec.seed + 1, ... and
/// runs them. With options.jobs > 1 queries run on OpenMP worker threads;
/// jobs == 1 is the serial path, and both produce the same report apart from
/// wall-clock fields.
QuerySetReport run_query_set(const LabeledGraph& g, const QuerySpec& spec, RunMode mode,
                             const RunOptions& options = {});

/// One JSON object per line: each per-query result, then the set aggregate.
void write_report(std::ostream& out, const QuerySetReport& report);

struct PathologyInstance {
    LabeledGraph data;
    LabeledGraph query;
};

/// Path query a-b-c-a against a hub a-vertex with `branches` b-neighbors,
/// each adjacent to `decoys` c-vertices that reach back only to the hub, plus
/// one productive c-vertex under the first b-vertex with a private a-neighbor.
PathologyInstance pathology_family(std::size_t branches, std::size_t decoys, LabelDictionary& dict);

}  // namespace deadend
