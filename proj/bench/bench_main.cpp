// Compares naive and guarded search, and the serial and OpenMP query-set
// runners, on a random data graph.
//
//   deadend_bench [--vertices N] [--labels L] [--p P] [--size K] [--count C] [--jobs J]

#include <chrono>
#include <iostream>
#include <random>

#include <CLI11.hpp>

#include "deadend/workload.hpp"

namespace {

using namespace deadend;

LabeledGraph random_connected_graph(std::size_t n, double p, std::size_t labels, std::uint64_t seed,
                                    LabelDictionary& dict) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (;;) {
        std::vector<Label> ls(n);
        for (auto& l : ls) l = dict.intern("l" + std::to_string(uniform_below(rng, labels)));
        std::vector<std::pair<Vertex, Vertex>> edges;
        for (Vertex a = 0; a < n; ++a)
            for (Vertex b = a + 1; b < n; ++b)
                if (coin(rng) < p) edges.emplace_back(a, b);
        LabeledGraph g(std::move(ls), edges);
        if (g.is_connected()) return g;
    }
}

double run_seconds(const LabeledGraph& g, const QuerySpec& spec, RunMode mode, const RunOptions& options,
                   QuerySetReport& report) {
    const auto start = std::chrono::steady_clock::now();
    report = run_query_set(g, spec, mode, options);
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"naive vs guarded, serial vs parallel"};
    std::size_t vertices = 400;
    std::size_t labels = 4;
    double p = 0.03;
    std::size_t size = 8;
    std::size_t count = 64;
    std::size_t jobs = 4;
    app.add_option("--vertices", vertices);
    app.add_option("--labels", labels);
    app.add_option("--p", p);
    app.add_option("--size", size);
    app.add_option("--count", count);
    app.add_option("--jobs", jobs);
    CLI11_PARSE(app, argc, argv);

    LabelDictionary dict;
    const auto g = random_connected_graph(vertices, p, labels, 1, dict);
    const QuerySpec spec{size, 1, count};

    RunOptions serial;
    serial.timeout = std::chrono::seconds(10);
    RunOptions parallel = serial;
    parallel.jobs = jobs;

    std::cout << "graph: " << g.vertex_count() << " vertices, " << g.edge_count() << " edges; " << count
              << " queries of size " << size << "\n";
    for (auto mode : {RunMode::naive, RunMode::guarded}) {
        QuerySetReport a;
        QuerySetReport b;
        const double ts = run_seconds(g, spec, mode, serial, a);
        const double tp = run_seconds(g, spec, mode, parallel, b);
        const auto& agg = a.aggregates.front();
        std::cout << to_string(mode) << ": recursions " << agg.recursions << ", embeddings " << agg.embeddings
                  << ", serial " << ts << " s, jobs=" << jobs << " " << tp << " s, speedup " << ts / tp << "\n";
    }
    return 0;
}
