#include "mrfsm/driver.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <map>
#include <mutex>
#include <memory>
#include <sstream>

#include "mrfsm/mining_tasks.hpp"

namespace mrfsm {

namespace fs = std::filesystem;

Counters IterationCounters::as_counters() const {
    return {{"candidates_generated", candidates_generated},
            {"canonical_survivors", canonical_survivors},
            {"frequent_patterns", frequent_patterns},
            {"records_staged", records_staged},
            {"records_in", records_in},
            {"records_mapped", records_mapped}};
}

std::uint32_t resolve_threshold(const JobConfig& config, std::size_t n_graphs) {
    if (config.minsup_fraction.has_value() == config.minsup_absolute.has_value())
        throw std::invalid_argument("exactly one of minsup fraction and absolute minsup must be given");
    if (config.minsup_absolute) {
        if (*config.minsup_absolute == 0) throw std::invalid_argument("absolute minsup must be at least 1");
        return *config.minsup_absolute;
    }
    return compute_threshold(*config.minsup_fraction, n_graphs);
}

fs::path iteration_dir(const fs::path& staging_root, std::uint32_t pattern_size) {
    return staging_root / ("iter-" + std::to_string(pattern_size));
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

IterationCounters to_iteration(std::uint32_t size, const Counters& c) {
    auto get = [&](const char* k) {
        auto it = c.find(k);
        return it == c.end() ? std::uint64_t{0} : it->second;
    };
    IterationCounters ic;
    ic.pattern_size = size;
    ic.candidates_generated = get("candidates_generated");
    ic.canonical_survivors = get("canonical_survivors");
    ic.frequent_patterns = get("frequent_patterns");
    ic.records_staged = get("records_staged");
    ic.records_in = get("records_in");
    ic.records_mapped = get("records_mapped");
    return ic;
}

// The engine only reports counters that were touched; fill in the rest as zero.
void complete_counters(Counters& c) {
    for (const auto& [name, value] : IterationCounters{}.as_counters()) c.try_emplace(name, value);
}

void write_labels(const fs::path& file, const LabelTable& labels) {
    std::ostringstream out;
    for (const auto& n : labels.names()) out << n << '\n';
    write_file_atomic(file, out.str());
}

// Aggregates supports of every key staged in one iteration directory.
void collect_frequent(const std::vector<fs::path>& outputs, std::map<std::string, std::uint64_t>& into) {
    for (const auto& f : outputs)
        for (const auto& rec : read_record_file(f)) into[rec.key] += peek_value_header(rec.value).local_support;
}

}  // namespace

DriveResult drive(const GraphDataset& dataset, const JobConfig& config) {
    if (config.staging_root.empty()) throw std::invalid_argument("staging root is required");
    if (config.partitions == 0 || config.reducers == 0 || config.workers == 0)
        throw std::invalid_argument("partitions, reducers and workers must be at least 1");
    const auto job_start = Clock::now();

    DriveResult result;
    result.threshold = resolve_threshold(config, dataset.size());
    const auto threshold = result.threshold;
    const LabelTable& labels = dataset.labels();

    fs::create_directories(config.staging_root);
    for (const auto& entry : fs::directory_iterator(config.staging_root)) {
        const auto name = entry.path().filename().string();
        if (name.rfind("iter-", 0) == 0 || name == "partitions") fs::remove_all(entry.path());
    }

    // Partition phase.
    auto t0 = Clock::now();
    const auto filtered = filter_infrequent_edges(dataset, threshold);
    PartitionPlan plan{config.partitions, config.scheme, threshold};
    const auto parts = make_partitions(filtered, plan);
    const auto partition_dir = config.staging_root / "partitions";
    const auto partition_files = write_partitions(partition_dir, parts, plan);
    write_labels(config.staging_root / "labels", labels);
    std::size_t max_edges = 0;
    for (const auto& g : filtered.graphs()) max_edges = std::max(max_edges, g.edge_count());
    result.timings.push_back({"partition", seconds_since(t0)});

    const LocalEngine engine({config.reducers, config.workers, config.compress, config.split_records});
    const auto table = dataset.label_table();

    // Preparation phase: one map task per partition file.
    t0 = Clock::now();
    std::vector<PartitionContextPtr> side_store(parts.size());
    std::vector<MapTask> prep_tasks;
    for (std::uint32_t p = 0; p < partition_files.size(); ++p) {
        prep_tasks.push_back([&, p](MapContext& ctx) {
            const auto graphs = read_dataset_file(partition_files[p].string(), table);
            auto context = std::make_shared<const PartitionContext>(p, build_statics(graphs));
            std::optional<std::string> bundle;
            if (config.bundle_statics) bundle = serialize_statics(context->statics);
            for (auto& e : mapper_preparation(*context, labels)) {
                ctx.count("candidates_generated");
                ctx.count("canonical_survivors");
                ctx.emit(std::move(e.key), serialize_pattern(e.pattern, bundle), p);
            }
            ctx.count("records_mapped");
            side_store[p] = std::move(context);
        });
    }
    auto prep_reduce = [](const std::string& key, std::vector<std::string> values, ReduceContext& ctx) {
        ctx.count("frequent_patterns");
        for (auto& r : reducer_preparation(key, std::move(values))) ctx.stage(std::move(r));
    };
    auto dir = iteration_dir(config.staging_root, 1);
    auto iter = engine.run_tasks(dir, prep_tasks, prep_reduce);
    iter.counters["records_in"] += parts.size();
    complete_counters(iter.counters);
    write_counters_file(dir / "counters", iter.counters);
    result.iterations.push_back(to_iteration(1, iter.counters));
    result.timings.push_back({"preparation", seconds_since(t0)});

    std::map<std::string, std::uint64_t> frequent;
    collect_frequent(iter.outputs, frequent);

    // Mining phase.
    const std::uint32_t cap =
        config.max_pattern_size ? config.max_pattern_size : static_cast<std::uint32_t>(std::max<std::size_t>(1, max_edges));
    std::mutex bundle_mu;
    std::map<std::uint32_t, std::pair<std::string, PartitionContextPtr>> bundle_cache;
    auto map_fn = [&](const KVRecord& rec, const RecordSource& src, MapContext& ctx) {
        DecodedValue decoded;
        PartitionContextPtr context;
        try {
            decoded = decode_value(rec.value);
            if (config.bundle_statics) {
                if (!decoded.statics_bundle) throw std::runtime_error("value carries no statics bundle");
                // Decoded bundles are shared per job; a hit still requires identical bytes.
                const auto pid = decoded.pattern.partition_id;
                {
                    std::lock_guard lock(bundle_mu);
                    auto it = bundle_cache.find(pid);
                    if (it != bundle_cache.end() && it->second.first == *decoded.statics_bundle) context = it->second.second;
                }
                if (!context) {
                    context = std::make_shared<const PartitionContext>(pid, deserialize_statics(*decoded.statics_bundle));
                    std::lock_guard lock(bundle_mu);
                    bundle_cache[pid] = {*decoded.statics_bundle, context};
                }
            } else {
                if (decoded.pattern.partition_id >= side_store.size() || !side_store[decoded.pattern.partition_id])
                    throw std::runtime_error("unknown partition id " + std::to_string(decoded.pattern.partition_id));
                context = side_store[decoded.pattern.partition_id];
            }
        } catch (const std::exception& e) {
            throw std::runtime_error("corrupt record '" + rec.key + "' in " + src.file.string() + " at offset " +
                                     std::to_string(src.offset) + ": " + e.what());
        }
        MapCounters mc;
        const auto& bundle = decoded.statics_bundle;
        for (auto& e : mapper_mining(decoded.pattern, *context, labels, mc)) {
            ctx.emit(std::move(e.key),
                     serialize_pattern(e.pattern, bundle ? std::optional<std::string_view>(*bundle) : std::nullopt),
                     context->partition_id);
        }
        ctx.count("candidates_generated", mc.candidates_generated);
        ctx.count("canonical_survivors", mc.canonical_survivors);
        ctx.count("emitted", mc.emitted);
    };
    auto reduce_fn = [threshold](const std::string& key, std::vector<std::string> values, ReduceContext& ctx) {
        auto outcome = reducer_mining(key, std::move(values), threshold);
        if (!outcome.frequent) return;
        ctx.count("frequent_patterns");
        for (auto& r : outcome.staged) ctx.stage(std::move(r));
    };

    auto mining_start = Clock::now();
    bool capped = false;
    for (std::uint32_t size = 2; result.iterations.back().frequent_patterns > 0; ++size) {
        if (size > cap) {
            capped = cap < max_edges;
            break;
        }
        t0 = Clock::now();
        dir = iteration_dir(config.staging_root, size);
        iter = engine.run_iteration(iter.outputs, map_fn, reduce_fn, dir);
        complete_counters(iter.counters);
        write_counters_file(dir / "counters", iter.counters);
        result.iterations.push_back(to_iteration(size, iter.counters));
        collect_frequent(iter.outputs, frequent);
        result.timings.push_back({"iter-" + std::to_string(size), seconds_since(t0)});
    }
    result.timings.push_back({"mining", seconds_since(mining_start)});
    result.timings.push_back({"total", seconds_since(job_start)});

    result.frequent.reserve(frequent.size());
    for (auto& [code, support] : frequent) result.frequent.push_back({code, support});
    if (capped) throw IterationCapReached(std::move(result));
    return result;
}

}  // namespace mrfsm
