#include <gtest/gtest.h>
#include <gmock/gmock.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "deadend/cli.hpp"
#include "test_support.hpp"

namespace deadend {
namespace {

using ::testing::HasSubstr;

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> result;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) result.push_back(line);
    return result;
}

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = std::filesystem::temp_directory_path() /
               ("deadend_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        std::filesystem::create_directories(dir_);
    }
    void TearDown() override { std::filesystem::remove_all(dir_); }

    std::string write(const std::string& name, const std::string& text) {
        auto p = dir_ / name;
        std::ofstream(p) << text;
        return p.string();
    }

    std::filesystem::path dir_;
    const std::string data_ = testing::fixture_path("sample_data.graph");
    const std::string query_ = testing::fixture_path("sample_query.graph");
};

TEST_F(CliTest, MatchPrintsSampleEmbeddings) {
    auto r = run({"match", data_, query_, "--mode", "guarded"});
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
    auto out = lines(r.out);
    ASSERT_EQ(out.size(), 4u);
    EXPECT_EQ(out[0], "u1->1 u2->2 u3->5 u4->8");
    auto stats = nlohmann::json::parse(out[3]);
    EXPECT_EQ(stats["mode"], "guarded");
    EXPECT_EQ(stats["embeddings"], 3);
    EXPECT_EQ(stats["recursions"], 14);
    EXPECT_EQ(stats["prunes"], 4);
}

TEST_F(CliTest, PrintedEmbeddingsVerify) {
    auto r = run({"match", data_, query_, "--mode", "guarded", "--no-limit"});
    ASSERT_EQ(r.code, cli::kExitOk);
    auto inst = testing::load_sample();
    std::size_t count = 0;
    for (const auto& line : lines(r.out)) {
        if (line.empty() || line[0] != 'u') continue;
        Embedding e(inst.query.vertex_count());
        std::istringstream in(line);
        std::string pair;
        while (in >> pair) {
            auto arrow = pair.find("->");
            auto u = std::stoull(pair.substr(1, arrow - 1));
            auto v = std::stoull(pair.substr(arrow + 2));
            e[testing::dense(inst.query, u)] = testing::dense(inst.data, v);
        }
        EXPECT_TRUE(verify_embedding(e, inst.query, inst.data)) << line;
        ++count;
    }
    EXPECT_EQ(count, 3u);
}

TEST_F(CliTest, LimitZeroPrintsStatsOnly) {
    auto r = run({"match", data_, query_, "--mode", "naive", "--limit", "0"});
    ASSERT_EQ(r.code, cli::kExitOk);
    auto out = lines(r.out);
    ASSERT_EQ(out.size(), 1u);
    auto stats = nlohmann::json::parse(out[0]);
    EXPECT_EQ(stats["embeddings"], 0);
    EXPECT_EQ(stats["recursions"], 1);
}

TEST_F(CliTest, BothModesReportEquivalence) {
    auto r = run({"match", data_, query_, "--mode", "both"});
    ASSERT_EQ(r.code, cli::kExitOk);
    EXPECT_THAT(r.out, HasSubstr("equivalence: ok"));
    EXPECT_THAT(r.out, HasSubstr("\"mode\":\"naive\""));
    EXPECT_THAT(r.out, HasSubstr("\"mode\":\"guarded\""));
}

TEST_F(CliTest, ParseErrorExitsWithUsageStatus) {
    auto bad = write("bad.graph", "v 0 a\ne 0 7\n");
    auto r = run({"match", bad, query_});
    EXPECT_EQ(r.code, cli::kExitUsage);
    EXPECT_THAT(r.err, HasSubstr("line 2"));
}

TEST_F(CliTest, DisconnectedQueryRejected) {
    auto q = write("q.graph", "v 1 a\nv 2 b\n");
    auto r = run({"match", data_, q});
    EXPECT_EQ(r.code, cli::kExitUsage);
    EXPECT_THAT(r.err, HasSubstr("connected"));
}

TEST_F(CliTest, UnknownSubcommandAndMissingArgs) {
    EXPECT_EQ(run({"frobnicate"}).code, cli::kExitUsage);
    EXPECT_EQ(run({"match", data_}).code, cli::kExitUsage);
    EXPECT_EQ(run({"match", data_, query_, "--mode", "fast"}).code, cli::kExitUsage);
    EXPECT_EQ(run({"match", data_, query_, "--limit", "3", "--no-limit"}).code, cli::kExitUsage);
    EXPECT_EQ(run({"--help"}).code, cli::kExitOk);
}

TEST_F(CliTest, GenIsDeterministic) {
    auto a = (dir_ / "a.graph").string();
    auto b = (dir_ / "b.graph").string();
    ASSERT_EQ(run({"gen", data_, "--size", "4", "--seed", "9", "--out", a}).code, cli::kExitOk);
    ASSERT_EQ(run({"gen", data_, "--size", "4", "--seed", "9", "--out", b}).code, cli::kExitOk);
    EXPECT_EQ(read_file(a), read_file(b));

    LabelDictionary dict;
    auto q = load_graph(a, dict);
    EXPECT_EQ(q.vertex_count(), 4u);
    EXPECT_TRUE(q.is_connected());
}

TEST_F(CliTest, GenSingleVertex) {
    auto a = (dir_ / "one.graph").string();
    ASSERT_EQ(run({"gen", data_, "--size", "1", "--seed", "0", "--out", a}).code, cli::kExitOk);
    LabelDictionary dict;
    auto q = load_graph(a, dict);
    EXPECT_EQ(q.vertex_count(), 1u);
    EXPECT_EQ(q.edge_count(), 0u);
    EXPECT_EQ(run({"gen", data_, "--size", "9", "--seed", "0", "--out", a}).code, cli::kExitUsage);
}

TEST_F(CliTest, TraceShowsIdsRecordsAndPrunes) {
    auto r = run({"trace", data_, query_});
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
    auto out = lines(r.out);
    ASSERT_FALSE(out.empty());
    EXPECT_EQ(out[0], "order u1 u2 u3 u4");
    EXPECT_THAT(r.out, HasSubstr("enter depth=1 id=1 map=u1->1"));
    EXPECT_THAT(r.out, HasSubstr("enter depth=2 id=2 map=u2->2"));
    EXPECT_THAT(r.out, HasSubstr("enter depth=3 id=3 map=u3->5"));
    EXPECT_THAT(r.out, HasSubstr("report u1->1 u2->2 u3->5 u4->8"));
    EXPECT_THAT(r.out, HasSubstr("record slot 3 6 phi=1 mu=1 gamma=1"));
    EXPECT_THAT(r.out, HasSubstr("prune slot 3 6"));
    auto stats = nlohmann::json::parse(out.back());
    EXPECT_EQ(stats["recursions"], 14);
}

TEST_F(CliTest, TraceCapTruncates) {
    auto r = run({"trace", data_, query_, "--cap", "3"});
    EXPECT_EQ(r.code, cli::kExitOk);
    EXPECT_THAT(r.out, HasSubstr("# truncated"));
    EXPECT_THAT(r.err, HasSubstr("warning"));
}

TEST_F(CliTest, BenchWritesOneAggregatePerSize) {
    LabelDictionary dict;
    std::mt19937_64 rng(2);
    LabeledGraph g;
    do g = testing::random_graph(40, 0.12, 3, rng, dict);
    while (!g.is_connected());
    auto data = write("g.graph", serialize_graph(g, dict));

    auto first = (dir_ / "r1.jsonl").string();
    auto second = (dir_ / "r2.jsonl").string();
    ASSERT_EQ(run({"bench", data, "--sizes", "4,6,8", "--count", "5", "--seed", "3", "--mode", "both", "--out", first}).code,
              cli::kExitOk);
    ASSERT_EQ(run({"bench", data, "--sizes", "4,6,8", "--count", "5", "--seed", "3", "--mode", "both", "--out", second}).code,
              cli::kExitOk);

    auto strip = [](const std::string& text) {
        std::vector<nlohmann::json> records;
        for (const auto& line : lines(text)) {
            auto j = nlohmann::json::parse(line);
            if (j.contains("wall_nanos")) j.erase("wall_nanos");
            for (const char* mode : {"naive", "guarded"})
                if (j.contains(mode) && j[mode].is_object()) {
                    j[mode].erase("mean_wall_nanos");
                    j[mode].erase("median_wall_nanos");
                }
            records.push_back(j);
        }
        return records;
    };
    auto a = strip(read_file(first));
    auto b = strip(read_file(second));
    EXPECT_EQ(a, b);
    std::size_t aggregates = 0;
    for (const auto& j : a)
        if (j.contains("aggregate")) {
            ++aggregates;
            EXPECT_EQ(j["divergences"], 0);
        }
    EXPECT_EQ(aggregates, 3u);
    EXPECT_EQ(a.size(), 3u * (2 * 5 + 1));
}

TEST_F(CliTest, PathologySubcommand) {
    auto r = run({"pathology", "--branches", "4", "--decoys", "5"});
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
    auto summary = nlohmann::json::parse(lines(r.out).back());
    EXPECT_EQ(summary["branches"], 4);
    EXPECT_TRUE(summary["equivalent"].get<bool>());
    EXPECT_GT(summary["recursion_ratio"].get<double>(), 1.0);
}

}  // namespace
}  // namespace deadend
