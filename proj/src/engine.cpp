#include "mrfsm/engine.hpp"

#include <omp.h>

#include <algorithm>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>

namespace mrfsm {

namespace fs = std::filesystem;

void MapContext::emit(std::string key, std::string value, std::uint32_t order_tag) {
    const auto group = stable_hash(key) % buckets_.size();
    buckets_[group].push_back({order_tag, std::move(key), std::move(value)});
}

std::uint64_t stable_hash(std::string_view key) noexcept {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : key) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

fs::path reducer_output(const fs::path& dir, std::uint32_t reducer) {
    char name[32];
    std::snprintf(name, sizeof name, "part-r-%05u", reducer);
    return dir / name;
}

namespace {

fs::path spill_file(const fs::path& shuffle_dir, std::size_t task, std::uint32_t group) {
    char name[48];
    std::snprintf(name, sizeof name, "m-%06zu-r-%05u", task, group);
    return shuffle_dir / name;
}

// Keeps the failure of the lowest-numbered task so error reports are stable.
class FirstFailure {
public:
    void record(std::size_t task, std::exception_ptr e) {
        std::lock_guard lock(mu_);
        if (!error_ || task < task_) {
            error_ = std::move(e);
            task_ = task;
        }
    }
    bool failed() const { return static_cast<bool>(error_); }
    [[noreturn]] void rethrow() const { std::rethrow_exception(error_); }

private:
    std::mutex mu_;
    std::exception_ptr error_;
    std::size_t task_ = 0;
};

void merge_into(Counters& into, const Counters& from) {
    for (const auto& [k, v] : from) into[k] += v;
}

}  // namespace

LocalEngine::LocalEngine(EngineConfig config) : config_(config) {
    if (config_.reducers == 0 || config_.workers == 0 || config_.split_records == 0)
        throw std::invalid_argument("reducers, workers and split size must be at least 1");
}

IterationResult LocalEngine::run_tasks(const fs::path& out_dir, const std::vector<MapTask>& tasks,
                                       const ReduceFn& reduce_fn) const {
    const auto R = config_.reducers;
    const fs::path shuffle = out_dir / "_shuffle";
    fs::remove_all(out_dir);
    fs::create_directories(shuffle);

    auto abort_with = [&](const FirstFailure& f) {
        std::error_code ec;
        fs::remove_all(out_dir, ec);
        f.rethrow();
    };

    // Map phase.
    const std::size_t ntasks = tasks.size();
    std::vector<std::vector<char>> wrote(ntasks, std::vector<char>(R, 0));
    std::vector<Counters> task_counters(ntasks);
    FirstFailure failure;

#pragma omp parallel for schedule(dynamic, 1) num_threads(static_cast<int>(config_.workers))
    for (std::size_t t = 0; t < ntasks; ++t) {
        if (failure.failed()) continue;
        try {
            MapContext ctx(R);
            tasks[t](ctx);
            for (std::uint32_t g = 0; g < R; ++g) {
                auto& bucket = ctx.buckets()[g];
                if (bucket.empty()) continue;
                ByteWriter w;
                for (const auto& item : bucket) {
                    w.u32(item.tag);
                    w.bytes(item.key);
                    w.bytes(item.value);
                }
                write_file_atomic(spill_file(shuffle, t, g), frame_file(w.buffer(), config_.compress));
                wrote[t][g] = 1;
            }
            task_counters[t] = std::move(ctx.counters());
        } catch (...) {
            failure.record(t, std::current_exception());
        }
    }
    if (failure.failed()) abort_with(failure);

    // Reduce phase; starts only after every spill above is complete.
    std::vector<Counters> group_counters(R);
#pragma omp parallel for schedule(dynamic, 1) num_threads(static_cast<int>(config_.workers))
    for (std::uint32_t g = 0; g < R; ++g) {
        if (failure.failed()) continue;
        try {
            struct Value {
                std::uint32_t tag;
                std::size_t seq;
                std::string bytes;
            };
            std::map<std::string, std::vector<Value>> groups;
            std::size_t seq = 0;
            for (std::size_t t = 0; t < ntasks; ++t) {
                if (!wrote[t][g]) continue;
                const auto file = spill_file(shuffle, t, g);
                std::string payload;
                try {
                    payload = unframe_file(read_file(file));
                } catch (const DecodeError& e) {
                    throw DecodeError(file.string() + ": " + e.what(), e.offset());
                }
                ByteReader r(payload);
                while (!r.at_end()) {
                    const auto tag = r.u32();
                    std::string key(r.bytes());
                    groups[std::move(key)].push_back({tag, seq++, std::string(r.bytes())});
                }
            }
            ReduceContext ctx;
            for (auto& [key, values] : groups) {
                std::stable_sort(values.begin(), values.end(),
                                 [](const Value& a, const Value& b) { return a.tag < b.tag; });
                std::vector<std::string> bytes;
                bytes.reserve(values.size());
                for (auto& v : values) bytes.push_back(std::move(v.bytes));
                ctx.count("reduce_input_keys");
                reduce_fn(key, std::move(bytes), ctx);
            }
            ctx.count("records_staged", ctx.staged().size());
            write_record_file(reducer_output(out_dir, g), ctx.staged(), config_.compress);
            group_counters[g] = std::move(ctx.counters());
        } catch (...) {
            failure.record(g, std::current_exception());
        }
    }
    if (failure.failed()) abort_with(failure);

    std::error_code ec;
    fs::remove_all(shuffle, ec);

    IterationResult result;
    for (std::uint32_t g = 0; g < R; ++g) result.outputs.push_back(reducer_output(out_dir, g));
    for (const auto& c : task_counters) merge_into(result.counters, c);
    for (const auto& c : group_counters) merge_into(result.counters, c);
    result.counters["map_tasks"] += ntasks;
    return result;
}

IterationResult LocalEngine::run_iteration(const std::vector<fs::path>& inputs, const MapFn& map_fn,
                                           const ReduceFn& reduce_fn, const fs::path& out_dir) const {
    struct InputFile {
        std::vector<KVRecord> records;
        std::vector<std::size_t> offsets;
    };
    std::vector<InputFile> files(inputs.size());
    FirstFailure failure;
#pragma omp parallel for schedule(dynamic, 1) num_threads(static_cast<int>(config_.workers))
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        try {
            files[i].records = read_record_file(inputs[i], &files[i].offsets);
        } catch (...) {
            failure.record(i, std::current_exception());
        }
    }
    if (failure.failed()) failure.rethrow();

    std::uint64_t records_in = 0;
    std::vector<MapTask> tasks;
    for (std::size_t i = 0; i < files.size(); ++i) {
        const auto n = files[i].records.size();
        records_in += n;
        for (std::size_t begin = 0; begin < n; begin += config_.split_records) {
            const auto end = std::min(n, begin + config_.split_records);
            tasks.push_back([&, i, begin, end](MapContext& ctx) {
                for (std::size_t k = begin; k < end; ++k) {
                    map_fn(files[i].records[k], RecordSource{inputs[i], files[i].offsets[k]}, ctx);
                    ctx.count("records_mapped");
                }
            });
        }
    }
    auto result = run_tasks(out_dir, tasks, reduce_fn);
    result.counters["records_in"] += records_in;
    return result;
}

void write_counters_file(const fs::path& path, const Counters& counters) {
    std::ostringstream out;
    for (const auto& [k, v] : counters) out << k << '\t' << v << '\n';
    write_file_atomic(path, out.str());
}

Counters read_counters_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    Counters c;
    std::string name;
    std::uint64_t value = 0;
    while (in >> name >> value) c[name] = value;
    return c;
}

}  // namespace mrfsm
