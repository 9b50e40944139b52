#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "deadend/graph.hpp"
#include "test_support.hpp"

namespace deadend {
namespace {

using ::testing::HasSubstr;

TEST(ParseGraph, MinimalWellFormedInput) {
    LabelDictionary dict;
    auto g = parse_graph("v 0 a\nv 1 b\ne 0 1", dict);
    ASSERT_EQ(g.vertex_count(), 2u);
    EXPECT_EQ(dict.name(g.label(0)), "a");
    EXPECT_EQ(dict.name(g.label(1)), "b");
    EXPECT_EQ(std::vector<Vertex>(g.neighbors(0).begin(), g.neighbors(0).end()), std::vector<Vertex>{1});
    EXPECT_EQ(std::vector<Vertex>(g.neighbors(1).begin(), g.neighbors(1).end()), std::vector<Vertex>{0});
}

TEST(ParseGraph, EdgelessGraph) {
    LabelDictionary dict;
    auto g = parse_graph("v 0 a", dict);
    EXPECT_EQ(g.vertex_count(), 1u);
    EXPECT_EQ(g.edge_count(), 0u);
    EXPECT_TRUE(g.neighbors(0).empty());
}

TEST(ParseGraph, CommentsBlankLinesAndDuplicateEdges) {
    LabelDictionary dict;
    auto g = parse_graph("# header\n\nv 10 x\nv 20 y\n  \ne 10 20\ne 20 10\ne 10 20\n", dict);
    EXPECT_EQ(g.edge_count(), 1u);
    EXPECT_EQ(g.original_id(0), 10u);
    EXPECT_EQ(g.original_id(1), 20u);
    EXPECT_TRUE(g.has_edge(0, 1));
    EXPECT_TRUE(g.has_edge(1, 0));
}

TEST(ParseGraph, SampleFixtureShape) {
    auto inst = testing::load_sample();
    const auto& g = inst.data;
    ASSERT_EQ(g.vertex_count(), 8u);
    EXPECT_EQ(g.edge_count(), 15u);
    auto v = [&](std::uint64_t id) { return testing::dense(g, id); };
    // v6 and v7 see label a only through v1; v5 only through v8.
    EXPECT_TRUE(g.has_edge(v(6), v(1)));
    EXPECT_TRUE(g.has_edge(v(7), v(1)));
    EXPECT_FALSE(g.has_edge(v(5), v(1)));
    EXPECT_TRUE(g.has_edge(v(5), v(8)));
    for (std::uint64_t b : {2, 3, 4})
        for (std::uint64_t c : {5, 6, 7}) EXPECT_TRUE(g.has_edge(v(b), v(c)));
}

struct BadInput {
    const char* text;
    std::size_t line;
    const char* fragment;
};

class ParseErrors : public ::testing::TestWithParam<BadInput> {};

TEST_P(ParseErrors, ReportsLineNumber) {
    LabelDictionary dict;
    const auto& p = GetParam();
    try {
        parse_graph(p.text, dict);
        FAIL() << "expected GraphParseError";
    } catch (const GraphParseError& e) {
        EXPECT_EQ(e.line(), p.line);
        EXPECT_THAT(std::string(e.what()), HasSubstr(p.fragment));
    }
}

INSTANTIATE_TEST_SUITE_P(
    Graph, ParseErrors,
    ::testing::Values(BadInput{"v 0 a\nx 1 2\n", 2, "unknown record"},
                      BadInput{"v 0\n", 1, "expected 'v"},
                      BadInput{"v 0 a\nv one b\n", 2, "invalid vertex id"},
                      BadInput{"v 0 a\ne 0 1\nv 1 b\n", 2, "undeclared vertex 1"},
                      BadInput{"v 0 a\ne 0 0\n", 2, "self-loop"},
                      BadInput{"v 0 a\nv 0 b\n", 2, "declared twice"},
                      BadInput{"v 0 a\nv 1 a\ne 0 1 2\n", 3, "expected 'e"}),
    [](const ::testing::TestParamInfo<BadInput>& info) { return "case" + std::to_string(info.index); });

TEST(LabeledGraph, ConstructorRejectsBadEdges) {
    std::vector<std::pair<Vertex, Vertex>> loop{{0, 0}};
    EXPECT_THROW(LabeledGraph({0, 0}, loop), GraphError);
    std::vector<std::pair<Vertex, Vertex>> far{{0, 5}};
    EXPECT_THROW(LabeledGraph({0, 0}, far), GraphError);
}

TEST(LabeledGraph, Neighbors) {
    std::vector<std::pair<Vertex, Vertex>> tri{{0, 1}, {1, 2}, {2, 0}};
    LabeledGraph triangle({0, 0, 0}, tri);
    for (Vertex v = 0; v < 3; ++v) {
        auto adj = triangle.neighbors(v);
        std::vector<Vertex> expect;
        for (Vertex w = 0; w < 3; ++w)
            if (w != v) expect.push_back(w);
        EXPECT_EQ(std::vector<Vertex>(adj.begin(), adj.end()), expect);
    }

    std::vector<std::pair<Vertex, Vertex>> path{{0, 1}, {1, 2}};
    LabeledGraph p({0, 0, 0, 0}, path);
    auto mid = p.neighbors(1);
    EXPECT_EQ(std::vector<Vertex>(mid.begin(), mid.end()), (std::vector<Vertex>{0, 2}));
    EXPECT_TRUE(p.neighbors(3).empty());
    EXPECT_THROW(p.neighbors(4), GraphError);
    EXPECT_THROW(p.label(4), GraphError);
}

TEST(LabeledGraph, SharedDictionaryGivesEqualIds) {
    LabelDictionary dict;
    auto g = parse_graph("v 3 c\nv 4 c\nv 5 d\n", dict);
    auto q = parse_graph("v 0 d\nv 1 c\n", dict);
    EXPECT_EQ(g.label(0), dict.find_or_throw("c"));
    EXPECT_EQ(g.label(0), g.label(1));
    EXPECT_EQ(q.label(1), g.label(0));
    EXPECT_EQ(q.label(0), g.label(2));
}

TEST(LabeledGraphProperty, RoundTripSymmetryAndDegreeSum) {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        LabelDictionary dict;
        auto g = testing::random_graph(1 + rng() % 20, 0.25, 1 + rng() % 4, rng, dict);

        std::size_t degree_sum = 0;
        for (Vertex v = 0; v < g.vertex_count(); ++v) {
            degree_sum += g.degree(v);
            auto adj = g.neighbors(v);
            ASSERT_TRUE(std::is_sorted(adj.begin(), adj.end()));
            ASSERT_EQ(std::adjacent_find(adj.begin(), adj.end()), adj.end());
            for (auto w : adj) {
                ASSERT_NE(w, v);
                ASSERT_TRUE(g.has_edge(w, v));
            }
        }
        ASSERT_EQ(degree_sum, 2 * g.edge_count());

        auto again = parse_graph(serialize_graph(g, dict), dict);
        ASSERT_EQ(again, g);
    }
}

}  // namespace
}  // namespace deadend
