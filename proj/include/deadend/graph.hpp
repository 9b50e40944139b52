#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace deadend {

using Vertex = std::uint32_t;
using Label = std::uint32_t;

/// Interns label strings so that query and data graphs compare labels as integers.
class LabelDictionary {
public:
    Label intern(std::string_view name);
    Label find_or_throw(std::string_view name) const;
    const std::string& name(Label id) const;
    std::size_t size() const { return names_.size(); }

private:
    std::unordered_map<std::string, Label> ids_;
    std::vector<std::string> names_;
};

class GraphError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class GraphParseError : public GraphError {
public:
    GraphParseError(std::size_t line, std::string detail, const std::string& source = {});
    std::size_t line() const { return line_; }
    const std::string& detail() const { return detail_; }

private:
    std::size_t line_;
    std::string detail_;
};

/// Vertex-labeled undirected simple graph in compressed adjacency form.
///
/// Vertex ids are dense (0..vertex_count-1). `original_id(v)` keeps the id
/// the vertex had in its source file so results can be printed in file terms.
/// Immutable after construction.
class LabeledGraph {
public:
    LabeledGraph() = default;

    /// Builds a graph from dense labels and an edge list. Parallel edges and
    /// reversed duplicates collapse into one edge; self-loops and out-of-range
    /// endpoints throw GraphError.
    LabeledGraph(std::vector<Label> labels,
                 std::span<const std::pair<Vertex, Vertex>> edges,
                 std::vector<std::uint64_t> original_ids = {});

    std::size_t vertex_count() const { return labels_.size(); }
    std::size_t edge_count() const { return neighbors_.size() / 2; }

    Label label(Vertex v) const;
    std::span<const Vertex> neighbors(Vertex v) const;
    std::size_t degree(Vertex v) const { return neighbors(v).size(); }
    bool has_edge(Vertex a, Vertex b) const;

    std::uint64_t original_id(Vertex v) const;
    std::span<const Label> labels() const { return labels_; }

    /// True when every vertex is reachable from vertex 0 (the empty graph counts as connected).
    bool is_connected() const;

    friend bool operator==(const LabeledGraph&, const LabeledGraph&) = default;

private:
    void check_vertex(Vertex v) const;

    std::vector<Label> labels_;
    std::vector<std::size_t> offsets_{0};
    std::vector<Vertex> neighbors_;
    std::vector<std::uint64_t> original_ids_;
};

/// Reads the line-based `v <id> <label>` / `e <a> <b>` format. Labels are
/// interned into `dict`, which should be shared by the query and data graph.
LabeledGraph parse_graph(std::istream& in, LabelDictionary& dict);
LabeledGraph parse_graph(std::string_view text, LabelDictionary& dict);
LabeledGraph load_graph(const std::string& path, LabelDictionary& dict);

/// Writes `g` in the same text format, using original ids.
void write_graph(std::ostream& out, const LabeledGraph& g, const LabelDictionary& dict);
std::string serialize_graph(const LabeledGraph& g, const LabelDictionary& dict);

}  // namespace deadend
