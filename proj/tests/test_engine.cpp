#include <gtest/gtest.h>

#include <atomic>
#include <filesystem>
#include <map>
#include <mutex>
#include <set>

#include "mrfsm/engine.hpp"
#include "mrfsm/serialize.hpp"

namespace mrfsm {
namespace {

namespace fs = std::filesystem;

class EngineTest : public ::testing::Test {
protected:
    void SetUp() override {
        root = fs::temp_directory_path() /
               ("mrfsm_engine_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(root);
        fs::create_directories(root);
    }
    void TearDown() override { fs::remove_all(root); }

    std::vector<fs::path> make_inputs(std::size_t files, std::size_t per_file, bool compress = false) {
        std::vector<fs::path> out;
        for (std::size_t f = 0; f < files; ++f) {
            std::vector<KVRecord> recs;
            for (std::size_t i = 0; i < per_file; ++i)
                recs.push_back({"k" + std::to_string((f * per_file + i) % 17), std::to_string(f * per_file + i)});
            out.push_back(root / ("in-" + std::to_string(f)));
            write_record_file(out.back(), recs, compress);
        }
        return out;
    }

    static std::multiset<std::pair<std::string, std::string>> all_records(const IterationResult& r) {
        std::multiset<std::pair<std::string, std::string>> out;
        for (const auto& p : r.outputs)
            for (auto& rec : read_record_file(p)) out.insert({rec.key, rec.value});
        return out;
    }

    fs::path root;
};

const MapFn identity_map = [](const KVRecord& r, const RecordSource&, MapContext& ctx) {
    ctx.emit(r.key, r.value, 0);
};
const ReduceFn identity_reduce = [](const std::string& key, std::vector<std::string> values, ReduceContext& ctx) {
    for (auto& v : values) ctx.stage({key, std::move(v)});
};

TEST_F(EngineTest, EmptyInputGivesEmptyOutputs) {
    LocalEngine engine({3, 2, false, 4});
    const auto r = engine.run_iteration({}, identity_map, identity_reduce, root / "out");
    ASSERT_EQ(r.outputs.size(), 3u);
    for (const auto& p : r.outputs) {
        EXPECT_TRUE(fs::exists(p));
        EXPECT_TRUE(read_record_file(p).empty());
    }
    EXPECT_EQ(r.counters.at("records_in"), 0u);
}

TEST_F(EngineTest, EveryRecordMappedExactlyOnce) {
    const auto inputs = make_inputs(5, 37);
    for (std::uint32_t w : {1u, 3u})
        for (std::size_t split : {1u, 7u, 1000u}) {
            LocalEngine engine({4, w, false, split});
            std::atomic<std::size_t> calls{0};
            const MapFn counting = [&](const KVRecord& r, const RecordSource& src, MapContext& ctx) {
                ++calls;
                // The source offset locates the record in its file.
                std::vector<std::size_t> offsets;
                const auto recs = read_record_file(src.file, &offsets);
                const auto it = std::find(offsets.begin(), offsets.end(), src.offset);
                EXPECT_NE(it, offsets.end());
                if (it != offsets.end()) EXPECT_EQ(recs[it - offsets.begin()], r);
                ctx.emit(r.key, r.value, 0);
            };
            const auto out = root / ("out-" + std::to_string(w) + "-" + std::to_string(split));
            const auto r = engine.run_iteration(inputs, counting, identity_reduce, out);
            EXPECT_EQ(calls.load(), 5u * 37u);
            EXPECT_EQ(all_records(r).size(), 5u * 37u);
            EXPECT_EQ(r.counters.at("records_in"), 185u);
            EXPECT_EQ(r.counters.at("records_staged"), 185u);
            EXPECT_FALSE(fs::exists(out / "_shuffle"));
        }
}

TEST_F(EngineTest, ShuffleGroupsKeysOnOneReducerSorted) {
    const auto inputs = make_inputs(3, 50, true);
    LocalEngine engine({4, 2, true, 8});
    std::map<std::string, std::size_t> values_per_key;
    std::mutex mu;
    const ReduceFn reduce = [&](const std::string& key, std::vector<std::string> values, ReduceContext& ctx) {
        {
            std::lock_guard lock(mu);
            EXPECT_EQ(values_per_key.count(key), 0u) << "key reduced twice: " << key;
            values_per_key[key] = values.size();
        }
        ctx.stage({key, std::to_string(values.size())});
    };
    const auto r = engine.run_iteration(inputs, identity_map, reduce, root / "out");
    std::size_t total = 0;
    for (const auto& [k, n] : values_per_key) total += n;
    EXPECT_EQ(total, 150u);
    for (std::uint32_t g = 0; g < 4; ++g) {
        const auto recs = read_record_file(r.outputs[g]);
        for (std::size_t i = 0; i < recs.size(); ++i) {
            EXPECT_EQ(stable_hash(recs[i].key) % 4, g);
            if (i) EXPECT_LT(recs[i - 1].key, recs[i].key);
        }
    }
}

TEST_F(EngineTest, ValuesOrderedByTag) {
    LocalEngine engine({1, 2, false, 1});
    std::vector<MapTask> tasks;
    for (std::uint32_t t = 0; t < 6; ++t)
        tasks.push_back([t](MapContext& ctx) {
            const std::uint32_t tag = 5 - t;
            ctx.emit("k", std::to_string(tag) + "a", tag);
            ctx.emit("k", std::to_string(tag) + "b", tag);
        });
    std::vector<std::string> seen;
    const ReduceFn reduce = [&](const std::string&, std::vector<std::string> values, ReduceContext&) {
        seen = std::move(values);
    };
    engine.run_tasks(root / "out", tasks, reduce);
    EXPECT_EQ(seen, (std::vector<std::string>{"0a", "0b", "1a", "1b", "2a", "2b", "3a", "3b", "4a", "4b", "5a",
                                              "5b"}));
}

TEST_F(EngineTest, MapFailureLeavesNoOutput) {
    const auto inputs = make_inputs(2, 20);
    LocalEngine engine({2, 2, false, 5});
    const MapFn failing = [](const KVRecord& r, const RecordSource&, MapContext& ctx) {
        if (r.value == "33") throw std::runtime_error("boom");
        ctx.emit(r.key, r.value, 0);
    };
    EXPECT_THROW(engine.run_iteration(inputs, failing, identity_reduce, root / "out"), std::runtime_error);
    EXPECT_FALSE(fs::exists(root / "out"));
}

TEST_F(EngineTest, ReduceFailureLeavesNoOutput) {
    const auto inputs = make_inputs(2, 20);
    LocalEngine engine({3, 2, false, 5});
    const ReduceFn failing = [](const std::string& key, std::vector<std::string>, ReduceContext&) {
        if (key == "k3") throw std::runtime_error("boom");
    };
    EXPECT_THROW(engine.run_iteration(inputs, identity_map, failing, root / "out"), std::runtime_error);
    EXPECT_FALSE(fs::exists(root / "out"));
}

TEST_F(EngineTest, OutputIsIndependentOfWorkersAndSplits) {
    const auto inputs = make_inputs(4, 40);
    std::vector<std::string> reference;
    for (std::uint32_t w : {1u, 2u, 4u})
        for (std::size_t split : {3u, 64u}) {
            LocalEngine engine({3, w, false, split});
            const auto out = root / ("o" + std::to_string(w) + "_" + std::to_string(split));
            const auto r = engine.run_iteration(inputs, identity_map, identity_reduce, out);
            std::vector<std::string> bytes;
            for (const auto& p : r.outputs) bytes.push_back(read_file(p));
            if (reference.empty()) reference = bytes;
            EXPECT_EQ(bytes, reference);
        }
}

TEST_F(EngineTest, CorruptInputReportsFile) {
    auto inputs = make_inputs(1, 5);
    auto bytes = read_file(inputs[0]);
    bytes.resize(bytes.size() - 2);
    write_file_atomic(inputs[0], bytes);
    LocalEngine engine({1, 1, false, 2});
    try {
        engine.run_iteration(inputs, identity_map, identity_reduce, root / "out");
        FAIL();
    } catch (const std::exception& e) {
        EXPECT_NE(std::string(e.what()).find("in-0"), std::string::npos) << e.what();
    }
    EXPECT_FALSE(fs::exists(root / "out"));
}

TEST_F(EngineTest, CountersFileRoundTrip) {
    Counters c{{"a", 1}, {"records_in", 12345678901ull}};
    write_counters_file(root / "counters", c);
    EXPECT_EQ(read_counters_file(root / "counters"), c);
}

TEST(StableHash, KnownValues) {
    // FNV-1a 64-bit reference values.
    EXPECT_EQ(stable_hash(""), 0xcbf29ce484222325ull);
    EXPECT_EQ(stable_hash("a"), 0xaf63dc4c8601ec8cull);
}

}  // namespace
}  // namespace mrfsm
