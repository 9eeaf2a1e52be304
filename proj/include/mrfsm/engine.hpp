#ifndef MRFSM_ENGINE_HPP_
#define MRFSM_ENGINE_HPP_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "mrfsm/serialize.hpp"

namespace mrfsm {

using Counters = std::map<std::string, std::uint64_t>;

struct EngineConfig {
    std::uint32_t reducers = 1;
    std::uint32_t workers = 1;
    bool compress = false;
    /// Input records per map task.
    std::size_t split_records = 32;
};

/// Collects the output of one map task, bucketed by reduce group.
class MapContext {
public:
    explicit MapContext(std::uint32_t reducers) : buckets_(reducers) {}

    /// `order_tag` orders values of one key at the reducer (ties keep emission order).
    void emit(std::string key, std::string value, std::uint32_t order_tag);
    void count(const std::string& name, std::uint64_t delta = 1) { counters_[name] += delta; }

    struct Item {
        std::uint32_t tag;
        std::string key;
        std::string value;
    };
    std::vector<std::vector<Item>>& buckets() noexcept { return buckets_; }
    Counters& counters() noexcept { return counters_; }

private:
    std::vector<std::vector<Item>> buckets_;
    Counters counters_;
};

class ReduceContext {
public:
    void stage(KVRecord record) { staged_.push_back(std::move(record)); }
    void count(const std::string& name, std::uint64_t delta = 1) { counters_[name] += delta; }

    std::vector<KVRecord>& staged() noexcept { return staged_; }
    Counters& counters() noexcept { return counters_; }

private:
    std::vector<KVRecord> staged_;
    Counters counters_;
};

/// A self-contained unit of map work (e.g. one partition file or one input split).
using MapTask = std::function<void(MapContext&)>;
/// Where a record came from, for error messages.
struct RecordSource {
    std::filesystem::path file;
    std::size_t offset;
};
using MapFn = std::function<void(const KVRecord&, const RecordSource&, MapContext&)>;
using ReduceFn = std::function<void(const std::string& key, std::vector<std::string> values, ReduceContext&)>;

struct IterationResult {
    std::vector<std::filesystem::path> outputs;  // part-r-<id>, one per reducer
    Counters counters;
};

/// Stable 64-bit FNV-1a; selects the reduce group of a key.
std::uint64_t stable_hash(std::string_view key) noexcept;

std::filesystem::path reducer_output(const std::filesystem::path& dir, std::uint32_t reducer);

/// Local map-reduce runtime with an on-disk shuffle.
///
/// Map tasks run on `workers` OpenMP threads and spill their output into
/// per-reducer files under `<out_dir>/_shuffle`. After the map barrier each
/// reduce group reads its spills in task order, groups values by key (keys in
/// bytewise order, values by order tag then emission order) and writes
/// `<out_dir>/part-r-<id>` atomically. Any task failure removes `out_dir`
/// and rethrows, so an iteration is either fully staged or absent.
class LocalEngine {
public:
    explicit LocalEngine(EngineConfig config);

    const EngineConfig& config() const noexcept { return config_; }

    IterationResult run_tasks(const std::filesystem::path& out_dir, const std::vector<MapTask>& tasks,
                              const ReduceFn& reduce_fn) const;

    /// Maps every record of `inputs` exactly once (split into tasks of
    /// `split_records`), then reduces into `out_dir`.
    IterationResult run_iteration(const std::vector<std::filesystem::path>& inputs, const MapFn& map_fn,
                                  const ReduceFn& reduce_fn, const std::filesystem::path& out_dir) const;

private:
    EngineConfig config_;
};

void write_counters_file(const std::filesystem::path& path, const Counters& counters);
Counters read_counters_file(const std::filesystem::path& path);

}  // namespace mrfsm

#endif  // MRFSM_ENGINE_HPP_
