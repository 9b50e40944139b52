#include "deadend/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "deadend/deadend_store.hpp"
#include "deadend/graph.hpp"
#include "deadend/search.hpp"
#include "deadend/workload.hpp"

namespace deadend::cli {

namespace {

struct MatchConfig {
    std::string data_path;
    std::string query_path;
    std::string mode = "guarded";
    std::uint64_t limit = 1000;
    bool no_limit = false;
    double timeout_secs = 60.0;
};

struct BenchConfig {
    std::string data_path;
    std::vector<std::size_t> sizes;
    std::size_t count = 0;
    std::uint64_t seed = 0;
    std::string mode = "guarded";
    std::uint64_t limit = 1000;
    double timeout_secs = 60.0;
    int jobs = 1;
    std::string out_path;
};

struct GenConfig {
    std::string data_path;
    std::size_t size = 0;
    std::uint64_t seed = 0;
    std::string out_path;
};

struct TraceConfig {
    std::string data_path;
    std::string query_path;
    std::uint64_t cap = 1'000'000;
};

struct PathologyConfig {
    std::size_t branches = 30;
    std::size_t decoys = 30;
    std::string data_out;
    std::string query_out;
};

std::chrono::nanoseconds to_timeout(double secs) {
    if (!(secs > 0.0)) throw CLI::ValidationError("--timeout", "must be positive");
    return std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::duration<double>(secs));
}

nlohmann::ordered_json stats_json(RunMode mode, const SearchStats& s) {
    nlohmann::ordered_json j;
    j["mode"] = to_string(mode);
    j["embeddings"] = s.embeddings;
    j["recursions"] = s.recursions;
    j["prunes"] = s.prunes;
    j["records"] = s.records;
    j["overwrites"] = s.overwrites;
    j["wall_nanos"] = s.wall_nanos;
    j["timed_out"] = s.timed_out;
    return j;
}

std::string format_embedding(const Embedding& e, const MatchingOrder& order, const LabeledGraph& q,
                             const LabeledGraph& g) {
    std::ostringstream line;
    for (std::size_t p = 0; p < order.order.size(); ++p) {
        const auto u = order.order[p];
        if (p > 0) line << ' ';
        line << 'u' << q.original_id(u) << "->" << g.original_id(e[u]);
    }
    return line.str();
}

/// Same as format_embedding, but from a prefix in search numbering.
std::string format_prefix(const PartialEmbedding& m, const MatchingOrder& order, const LabeledGraph& q,
                          const LabeledGraph& g) {
    std::ostringstream line;
    for (std::size_t p = 0; p < m.depth(); ++p) {
        if (p > 0) line << ' ';
        line << 'u' << q.original_id(order.order[p]) << "->" << g.original_id(m.at(p));
    }
    return line.str();
}

int cmd_match(const MatchConfig& cfg, std::ostream& out, std::ostream& err) {
    LabelDictionary dict;
    const auto g = load_graph(cfg.data_path, dict);
    const auto q = load_graph(cfg.query_path, dict);
    const auto mode = parse_run_mode(cfg.mode);
    const auto prepared = prepare(q, g);

    SearchOptions options;
    options.limit = cfg.no_limit ? std::nullopt : std::optional<std::uint64_t>(cfg.limit);
    options.timeout = to_timeout(cfg.timeout_secs);

    std::optional<SearchOutcome> naive;
    std::optional<SearchOutcome> guarded;
    if (mode != RunMode::guarded) naive = naive_search(q, g, prepared.candidates, prepared.order, options);
    if (mode != RunMode::naive) guarded = guarded_search(q, g, prepared.candidates, prepared.order, options);

    const auto& shown = guarded ? *guarded : *naive;
    for (const auto& e : shown.embeddings) out << format_embedding(e, prepared.order, q, g) << '\n';
    if (naive) out << stats_json(RunMode::naive, naive->stats).dump() << '\n';
    if (guarded) out << stats_json(RunMode::guarded, guarded->stats).dump() << '\n';

    if (naive && guarded) {
        if (naive->stats.timed_out || guarded->stats.timed_out) {
            out << "equivalence: skipped (timeout)\n";
        } else if (naive->embeddings != guarded->embeddings) {
            out << "equivalence: FAILED\n";
            err << "error: naive and guarded searches reported different embeddings\n";
            return kExitInvariant;
        } else {
            out << "equivalence: ok\n";
        }
    }
    return kExitOk;
}

int cmd_bench(const BenchConfig& cfg, std::ostream& out, std::ostream& err) {
    LabelDictionary dict;
    const auto g = load_graph(cfg.data_path, dict);
    const auto mode = parse_run_mode(cfg.mode);

    RunOptions options;
    options.limit = cfg.limit;
    options.timeout = to_timeout(cfg.timeout_secs);
    options.jobs = cfg.jobs;

    std::ofstream file;
    std::ostream* sink = &out;
    if (!cfg.out_path.empty()) {
        file.open(cfg.out_path);
        if (!file) throw WorkloadError("cannot open output file '" + cfg.out_path + "'");
        sink = &file;
    }

    int status = kExitOk;
    for (auto size : cfg.sizes) {
        QuerySpec spec{size, cfg.seed, cfg.count};
        const auto report = run_query_set(g, spec, mode, options);
        write_report(*sink, report);
        if (!report.divergent_queries.empty()) {
            err << "error: " << report.divergent_queries.size() << " queries of size " << size
                << " diverged between naive and guarded search\n";
            status = kExitInvariant;
        }
        if (!report.recursions_monotone) {
            err << "error: guarded search recursed more than naive search on a size-" << size << " query\n";
            status = kExitInvariant;
        }
    }
    return status;
}

int cmd_gen(const GenConfig& cfg, std::ostream& /*out*/, std::ostream& /*err*/) {
    LabelDictionary dict;
    const auto g = load_graph(cfg.data_path, dict);
    const auto q = random_walk_query(g, cfg.size, cfg.seed);
    std::ofstream file(cfg.out_path);
    if (!file) throw WorkloadError("cannot open output file '" + cfg.out_path + "'");
    write_graph(file, q, dict);
    return kExitOk;
}

class TraceWriter : public SearchObserver {
public:
    TraceWriter(std::ostream& out, const MatchingOrder& order, const LabeledGraph& q, const LabeledGraph& g)
        : out_(out), order_(order), q_(q), g_(g) {}

    void on_enter(std::size_t depth, std::uint64_t id, const PartialEmbedding& m) override {
        out_ << "enter depth=" << depth << " id=" << id << " map=u" << q_.original_id(order_.order[depth - 1])
             << "->" << g_.original_id(m.at(depth - 1)) << '\n';
    }
    void on_report(const PartialEmbedding& m) override {
        out_ << "report " << format_prefix(m, order_, q_, g_) << '\n';
    }
    void on_record(std::size_t pos, Vertex v, const DeadEndRecord& rec, const DeadEndMask&,
                   const PartialEmbedding&) override {
        out_ << "record " << format_slot(pos, v, rec, g_) << '\n';
    }
    void on_prune(std::size_t pos, Vertex v, const DeadEndRecord& rec, const PartialEmbedding& m) override {
        out_ << "prune " << format_slot(pos, v, rec, g_) << " under=[" << format_prefix(m, order_, q_, g_)
             << "]\n";
    }

private:
    std::ostream& out_;
    const MatchingOrder& order_;
    const LabeledGraph& q_;
    const LabeledGraph& g_;
};

int cmd_trace(const TraceConfig& cfg, std::ostream& out, std::ostream& err) {
    LabelDictionary dict;
    const auto g = load_graph(cfg.data_path, dict);
    const auto q = load_graph(cfg.query_path, dict);
    const auto prepared = prepare(q, g);

    out << "order";
    for (auto u : prepared.order.order) out << " u" << q.original_id(u);
    out << '\n';

    TraceWriter writer(out, prepared.order, q, g);
    SearchOptions options;
    options.limit = std::nullopt;
    options.recursion_cap = cfg.cap;
    options.observer = &writer;
    const auto outcome = guarded_search(q, g, prepared.candidates, prepared.order, options);
    out << stats_json(RunMode::guarded, outcome.stats).dump() << '\n';
    if (outcome.stats.capped) {
        out << "# truncated: recursion cap " << cfg.cap << " reached\n";
        err << "warning: recursion cap " << cfg.cap << " reached; trace truncated\n";
    }
    return kExitOk;
}

int cmd_pathology(const PathologyConfig& cfg, std::ostream& out, std::ostream& err) {
    LabelDictionary dict;
    const auto inst = pathology_family(cfg.branches, cfg.decoys, dict);
    if (!cfg.data_out.empty()) {
        std::ofstream f(cfg.data_out);
        if (!f) throw WorkloadError("cannot open output file '" + cfg.data_out + "'");
        write_graph(f, inst.data, dict);
    }
    if (!cfg.query_out.empty()) {
        std::ofstream f(cfg.query_out);
        if (!f) throw WorkloadError("cannot open output file '" + cfg.query_out + "'");
        write_graph(f, inst.query, dict);
    }
    const auto prepared = prepare(inst.query, inst.data);
    SearchOptions options;
    options.limit = std::nullopt;
    const auto naive = naive_search(inst.query, inst.data, prepared.candidates, prepared.order, options);
    const auto guarded = guarded_search(inst.query, inst.data, prepared.candidates, prepared.order, options);
    out << stats_json(RunMode::naive, naive.stats).dump() << '\n';
    out << stats_json(RunMode::guarded, guarded.stats).dump() << '\n';
    nlohmann::ordered_json summary;
    summary["branches"] = cfg.branches;
    summary["decoys"] = cfg.decoys;
    summary["recursion_ratio"] =
        static_cast<double>(naive.stats.recursions) / static_cast<double>(guarded.stats.recursions);
    summary["equivalent"] = naive.embeddings == guarded.embeddings;
    out << summary.dump() << '\n';
    if (naive.embeddings != guarded.embeddings) {
        err << "error: naive and guarded searches reported different embeddings\n";
        return kExitInvariant;
    }
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Subgraph matching with dead-end pattern pruning", "deadend"};
    app.require_subcommand(1);

    MatchConfig match;
    auto* match_cmd = app.add_subcommand("match", "Enumerate embeddings of a query graph in a data graph");
    match_cmd->add_option("data", match.data_path, "Data graph file")->required();
    match_cmd->add_option("query", match.query_path, "Query graph file")->required();
    match_cmd->add_option("--mode", match.mode, "naive, guarded or both")
        ->check(CLI::IsMember({"naive", "guarded", "both"}));
    auto* limit_opt = match_cmd->add_option("--limit", match.limit, "Stop after N embeddings (0: stats only)");
    match_cmd->add_flag("--no-limit", match.no_limit, "Enumerate every embedding")->excludes(limit_opt);
    match_cmd->add_option("--timeout", match.timeout_secs, "Per-search timeout in seconds");

    BenchConfig bench;
    auto* bench_cmd = app.add_subcommand("bench", "Run random-walk query sets and report statistics");
    bench_cmd->add_option("data", bench.data_path, "Data graph file")->required();
    bench_cmd->add_option("--sizes", bench.sizes, "Query sizes, comma separated")->required()->delimiter(',');
    bench_cmd->add_option("--count", bench.count, "Queries per size")->required()->check(CLI::PositiveNumber);
    bench_cmd->add_option("--seed", bench.seed, "Seed of the first query")->required();
    bench_cmd->add_option("--mode", bench.mode, "naive, guarded or both")
        ->check(CLI::IsMember({"naive", "guarded", "both"}));
    bench_cmd->add_option("--limit", bench.limit, "Stop each query after N embeddings");
    bench_cmd->add_option("--timeout", bench.timeout_secs, "Per-query timeout in seconds");
    bench_cmd->add_option("--jobs", bench.jobs, "Worker threads")->check(CLI::PositiveNumber);
    bench_cmd->add_option("--out", bench.out_path, "Write the report to FILE instead of stdout");

    GenConfig gen;
    auto* gen_cmd = app.add_subcommand("gen", "Generate a random-walk query graph");
    gen_cmd->add_option("data", gen.data_path, "Data graph file")->required();
    gen_cmd->add_option("--size", gen.size, "Query vertex count")->required()->check(CLI::PositiveNumber);
    gen_cmd->add_option("--seed", gen.seed, "Walk seed")->required();
    gen_cmd->add_option("--out", gen.out_path, "Output file")->required();

    TraceConfig trace;
    auto* trace_cmd = app.add_subcommand("trace", "Print guarded-search events for a small instance");
    trace_cmd->add_option("data", trace.data_path, "Data graph file")->required();
    trace_cmd->add_option("query", trace.query_path, "Query graph file")->required();
    trace_cmd->add_option("--cap", trace.cap, "Maximum recursive calls");

    PathologyConfig patho;
    auto* patho_cmd = app.add_subcommand("pathology", "Build the repeated-failure instance and compare both searches");
    patho_cmd->add_option("--branches", patho.branches, "Number of b-vertices")->check(CLI::PositiveNumber);
    patho_cmd->add_option("--decoys", patho.decoys, "Number of decoy c-vertices")->check(CLI::PositiveNumber);
    patho_cmd->add_option("--out-data", patho.data_out, "Write the data graph to FILE");
    patho_cmd->add_option("--out-query", patho.query_out, "Write the query graph to FILE");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*match_cmd) return cmd_match(match, out, err);
        if (*bench_cmd) return cmd_bench(bench, out, err);
        if (*gen_cmd) return cmd_gen(gen, out, err);
        if (*trace_cmd) return cmd_trace(trace, out, err);
        if (*patho_cmd) return cmd_pathology(patho, out, err);
    } catch (const CLI::Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const GraphError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const QueryError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const WorkloadError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace deadend::cli
