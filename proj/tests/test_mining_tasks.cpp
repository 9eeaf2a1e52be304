#include <gtest/gtest.h>

#include <map>
#include <set>

#include "mrfsm/mining_tasks.hpp"
#include "mrfsm/oracle.hpp"
#include "mrfsm/partitioner.hpp"
#include "mrfsm/serialize.hpp"
#include "support/oracles.hpp"

namespace mrfsm {
namespace {

class ToyPartitions : public ::testing::Test {
protected:
    void SetUp() override {
        data = filter_infrequent_edges(testing::load_toy(), 2);
        for (auto& p : make_partitions(data, {2, PartitionScheme::count_balanced, 2}))
            ctx.push_back(std::make_shared<PartitionContext>(p.id, build_statics(p.graphs)));
        global = std::make_shared<PartitionContext>(0, build_statics(data));
    }
    LabelId L(const char* s) const { return data.labels().at(s); }
    DFSCode code(std::string_view s) const { return parse_code(s, data.labels()); }
    PatternObject single(const PartitionContext& c, const char* key) const {
        for (auto& e : mapper_preparation(c, data.labels()))
            if (e.key == key) return e.pattern;
        ADD_FAILURE() << "no single-edge pattern " << key;
        return {};
    }

    GraphDataset data;
    std::vector<PartitionContextPtr> ctx;
    PartitionContextPtr global;
};

TEST_F(ToyPartitions, ExtensionChoicesFromD) {
    using Choices = std::vector<std::pair<LabelId, LabelId>>;
    const auto u = L("_");
    EXPECT_EQ(ctx[0]->statics.extensions.at(L("D")), (Choices{{u, L("B")}}));
    EXPECT_EQ(ctx[1]->statics.extensions.at(L("D")), (Choices{{u, L("B")}, {u, L("E")}}));
}

TEST_F(ToyPartitions, EdgeOccurrencesOfBDInSecondPartition) {
    const auto& ol = ctx[1]->statics.edge_ol.at(EdgeType{L("B"), L("_"), L("D")});
    OccurrenceList expected(2);
    expected.append(2, {1, 2});
    expected.append(3, {0, 1});
    EXPECT_EQ(ol, expected);
}

TEST_F(ToyPartitions, PreparationKeysCoverFrequentEdges) {
    std::set<std::string> keys;
    for (const auto& c : ctx)
        for (const auto& e : mapper_preparation(*c, data.labels())) {
            EXPECT_EQ(e.key, code_to_string(e.pattern.code, data.labels()));
            EXPECT_EQ(e.pattern.partition_id, c->partition_id);
            keys.insert(e.key);
        }
    EXPECT_EQ(keys, (std::set<std::string>{"(1,2,A,_,B)", "(1,2,B,_,C)", "(1,2,B,_,D)", "(1,2,B,_,E)",
                                           "(1,2,D,_,E)"}));
    const auto first = mapper_preparation(*ctx[0], data.labels());
    EXPECT_EQ(first.size(), 3u);
    PartitionContext empty(7, build_statics(GraphDataset{}));
    EXPECT_TRUE(mapper_preparation(empty, data.labels()).empty());
}

TEST_F(ToyPartitions, ChildrenOfAB) {
    const auto parent = single(*global, "(1,2,A,_,B)");
    MapCounters counters;
    std::set<std::string> keys;
    for (const auto& e : mapper_mining(parent, *global, data.labels(), counters)) keys.insert(e.key);
    EXPECT_EQ(keys, (std::set<std::string>{"(1,2,A,_,B)(2,3,B,_,C)", "(1,2,A,_,B)(2,3,B,_,D)",
                                           "(1,2,A,_,B)(2,3,B,_,E)"}));
    EXPECT_EQ(counters.emitted, 3u);
    EXPECT_GE(counters.candidates_generated, counters.canonical_survivors);
    EXPECT_GE(counters.canonical_survivors, counters.emitted);
}

TEST_F(ToyPartitions, SingleEdgeParentHasNoBackwardCandidates) {
    const auto parent = single(*global, "(1,2,A,_,B)");
    for (const auto& c : generate_candidates(parent, global->statics.extensions)) {
        EXPECT_EQ(c.extension.kind, Extension::Kind::forward);
        EXPECT_EQ(c.code.size(), 2u);
    }
}

TEST_F(ToyPartitions, BothMappersEmitABC) {
    std::vector<PatternObject> abc;
    for (const auto& c : ctx) {
        MapCounters counters;
        for (auto& e : mapper_mining(single(*c, "(1,2,A,_,B)"), *c, data.labels(), counters))
            if (e.key == "(1,2,A,_,B)(2,3,B,_,C)") abc.push_back(e.pattern);
    }
    ASSERT_EQ(abc.size(), 2u);
    std::vector<std::string> values;
    for (const auto& p : abc) {
        EXPECT_EQ(p.local_support, 1u);
        values.push_back(serialize_pattern(p));
    }
    const auto out = reducer_mining("(1,2,A,_,B)(2,3,B,_,C)", values, 2);
    EXPECT_TRUE(out.frequent);
    EXPECT_EQ(out.support, 2u);
    ASSERT_EQ(out.staged.size(), 2u);
    EXPECT_EQ(out.staged[0].value, values[0]);
    EXPECT_EQ(out.staged[1].value, values[1]);
}

TEST_F(ToyPartitions, InfrequentABEIsDropped) {
    MapCounters counters;
    std::vector<std::string> values;
    for (auto& e : mapper_mining(single(*global, "(1,2,A,_,B)"), *global, data.labels(), counters))
        if (e.key == "(1,2,A,_,B)(2,3,B,_,E)") values.push_back(serialize_pattern(e.pattern));
    const auto out = reducer_mining("(1,2,A,_,B)(2,3,B,_,E)", values, 2);
    EXPECT_FALSE(out.frequent);
    EXPECT_EQ(out.support, 1u);
    EXPECT_TRUE(out.staged.empty());
}

TEST(Reducers, PreparationIsIdentity) {
    EXPECT_EQ(reducer_preparation("k", {"a"}), (std::vector<KVRecord>{{"k", "a"}}));
    EXPECT_EQ(reducer_preparation("k", {"a", "b"}), (std::vector<KVRecord>{{"k", "a"}, {"k", "b"}}));
}

// Over random data, one level of mining from every frequent parent produces
// exactly the canonical one-edge extensions that occur, each from one parent.
class RandomLevels : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(RandomLevels, EmissionsMatchOracleAndAreUnique) {
    const auto raw = testing::random_dataset(GetParam(), 15, 6, 8, 2, 2);
    const std::uint32_t tau = 3;
    const auto d = filter_infrequent_edges(raw, tau);
    const PartitionContext ctx(0, build_statics(d));
    const auto truth = brute_force(d, tau, 4);
    std::map<std::size_t, std::set<std::string>> frequent_by_size;
    for (const auto& p : truth) frequent_by_size[code_string_size(p.code)].insert(p.code);

    std::vector<PatternObject> level;
    for (auto& e : mapper_preparation(ctx, d.labels()))
        if (frequent_by_size[1].count(e.key)) level.push_back(e.pattern);
    for (std::size_t k = 1; k < 4 && !level.empty(); ++k) {
        std::map<std::string, std::size_t> emitted;
        std::vector<PatternObject> next;
        for (const auto& parent : level) {
            MapCounters counters;
            for (auto& e : mapper_mining(parent, ctx, d.labels(), counters)) {
                ++emitted[e.key];
                EXPECT_EQ(e.pattern.local_support, testing::backtracking_support(e.pattern.code.to_graph(), d));
                if (e.pattern.local_support >= tau) next.push_back(e.pattern);
            }
        }
        for (const auto& [key, n] : emitted) EXPECT_EQ(n, 1u) << key;
        std::set<std::string> frequent;
        for (const auto& [key, n] : emitted) {
            const auto s = testing::backtracking_support(parse_code(key, d.labels()).to_graph(), d);
            EXPECT_GT(s, 0u);
            if (s >= tau) frequent.insert(key);
        }
        EXPECT_EQ(frequent, frequent_by_size[k + 1]) << "size " << k + 1;
        level = std::move(next);
    }
}

INSTANTIATE_TEST_SUITE_P(Seeds, RandomLevels, ::testing::Range<std::uint64_t>(1, 9));

}  // namespace
}  // namespace mrfsm
