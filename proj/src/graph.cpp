#include "deadend/graph.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace deadend {

Label LabelDictionary::intern(std::string_view name) {
    auto key = std::string(name);
    if (auto it = ids_.find(key); it != ids_.end()) return it->second;
    auto id = static_cast<Label>(names_.size());
    names_.push_back(key);
    ids_.emplace(std::move(key), id);
    return id;
}

Label LabelDictionary::find_or_throw(std::string_view name) const {
    auto it = ids_.find(std::string(name));
    if (it == ids_.end()) throw GraphError("unknown label '" + std::string(name) + "'");
    return it->second;
}

const std::string& LabelDictionary::name(Label id) const {
    if (id >= names_.size()) throw GraphError("label id " + std::to_string(id) + " out of range");
    return names_[id];
}

GraphParseError::GraphParseError(std::size_t line, std::string detail, const std::string& source)
    : GraphError((source.empty() ? "" : source + ":") + "line " + std::to_string(line) + ": " + detail),
      line_(line),
      detail_(std::move(detail)) {}

LabeledGraph::LabeledGraph(std::vector<Label> labels,
                           std::span<const std::pair<Vertex, Vertex>> edges,
                           std::vector<std::uint64_t> original_ids)
    : labels_(std::move(labels)), original_ids_(std::move(original_ids)) {
    const auto n = labels_.size();
    if (original_ids_.empty()) {
        original_ids_.resize(n);
        for (std::size_t i = 0; i < n; ++i) original_ids_[i] = i;
    } else if (original_ids_.size() != n) {
        throw GraphError("original id table size does not match vertex count");
    }

    std::vector<std::pair<Vertex, Vertex>> arcs;
    arcs.reserve(edges.size() * 2);
    for (auto [a, b] : edges) {
        if (a >= n || b >= n) {
            throw GraphError("edge (" + std::to_string(a) + ", " + std::to_string(b) +
                             ") references a vertex out of range");
        }
        if (a == b) throw GraphError("self-loop on vertex " + std::to_string(a));
        arcs.emplace_back(a, b);
        arcs.emplace_back(b, a);
    }
    std::sort(arcs.begin(), arcs.end());
    arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());

    offsets_.assign(n + 1, 0);
    for (auto [a, b] : arcs) ++offsets_[a + 1];
    for (std::size_t i = 0; i < n; ++i) offsets_[i + 1] += offsets_[i];
    neighbors_.reserve(arcs.size());
    for (auto [a, b] : arcs) neighbors_.push_back(b);
}

void LabeledGraph::check_vertex(Vertex v) const {
    if (v >= labels_.size()) {
        throw GraphError("vertex id " + std::to_string(v) + " out of range (vertex count " +
                         std::to_string(labels_.size()) + ")");
    }
}

Label LabeledGraph::label(Vertex v) const {
    check_vertex(v);
    return labels_[v];
}

std::span<const Vertex> LabeledGraph::neighbors(Vertex v) const {
    check_vertex(v);
    return {neighbors_.data() + offsets_[v], neighbors_.data() + offsets_[v + 1]};
}

bool LabeledGraph::has_edge(Vertex a, Vertex b) const {
    auto adj = neighbors(a);
    check_vertex(b);
    return std::binary_search(adj.begin(), adj.end(), b);
}

std::uint64_t LabeledGraph::original_id(Vertex v) const {
    check_vertex(v);
    return original_ids_[v];
}

bool LabeledGraph::is_connected() const {
    const auto n = vertex_count();
    if (n == 0) return true;
    std::vector<bool> seen(n, false);
    std::vector<Vertex> stack{0};
    seen[0] = true;
    std::size_t reached = 1;
    while (!stack.empty()) {
        auto v = stack.back();
        stack.pop_back();
        for (auto w : neighbors(v)) {
            if (!seen[w]) {
                seen[w] = true;
                ++reached;
                stack.push_back(w);
            }
        }
    }
    return reached == n;
}

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        auto start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (i > start) out.push_back(line.substr(start, i - start));
    }
    return out;
}

std::uint64_t parse_id(std::string_view tok, std::size_t line) {
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) {
        throw GraphParseError(line, "invalid vertex id '" + std::string(tok) + "'");
    }
    return value;
}

}  // namespace

LabeledGraph parse_graph(std::istream& in, LabelDictionary& dict) {
    std::unordered_map<std::uint64_t, Vertex> dense;
    std::vector<std::uint64_t> original;
    std::vector<Label> labels;
    std::vector<std::pair<Vertex, Vertex>> edges;

    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        auto toks = split_ws(raw);
        if (toks.empty() || toks[0].front() == '#') continue;

        if (toks[0] == "v") {
            if (toks.size() != 3) throw GraphParseError(line_no, "expected 'v <id> <label>'");
            auto id = parse_id(toks[1], line_no);
            if (dense.contains(id)) {
                throw GraphParseError(line_no, "vertex " + std::to_string(id) + " declared twice");
            }
            dense.emplace(id, static_cast<Vertex>(labels.size()));
            original.push_back(id);
            labels.push_back(dict.intern(toks[2]));
        } else if (toks[0] == "e") {
            if (toks.size() != 3) throw GraphParseError(line_no, "expected 'e <id1> <id2>'");
            auto a = parse_id(toks[1], line_no);
            auto b = parse_id(toks[2], line_no);
            auto ia = dense.find(a);
            auto ib = dense.find(b);
            if (ia == dense.end() || ib == dense.end()) {
                auto missing = ia == dense.end() ? a : b;
                throw GraphParseError(line_no, "edge references undeclared vertex " +
                                                   std::to_string(missing));
            }
            if (a == b) throw GraphParseError(line_no, "self-loop on vertex " + std::to_string(a));
            edges.emplace_back(ia->second, ib->second);
        } else {
            throw GraphParseError(line_no, "unknown record type '" + std::string(toks[0]) + "'");
        }
    }
    return LabeledGraph(std::move(labels), edges, std::move(original));
}

LabeledGraph parse_graph(std::string_view text, LabelDictionary& dict) {
    std::istringstream in{std::string(text)};
    return parse_graph(in, dict);
}

LabeledGraph load_graph(const std::string& path, LabelDictionary& dict) {
    std::ifstream in(path);
    if (!in) throw GraphError("cannot open graph file '" + path + "'");
    try {
        return parse_graph(in, dict);
    } catch (const GraphParseError& e) {
        throw GraphParseError(e.line(), e.detail(), path);
    }
}

void write_graph(std::ostream& out, const LabeledGraph& g, const LabelDictionary& dict) {
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        out << "v " << g.original_id(v) << ' ' << dict.name(g.label(v)) << '\n';
    }
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        for (auto w : g.neighbors(v)) {
            if (v < w) out << "e " << g.original_id(v) << ' ' << g.original_id(w) << '\n';
        }
    }
}

std::string serialize_graph(const LabeledGraph& g, const LabelDictionary& dict) {
    std::ostringstream out;
    write_graph(out, g, dict);
    return out.str();
}

}  // namespace deadend
