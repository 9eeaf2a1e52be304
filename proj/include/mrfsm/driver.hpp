#ifndef MRFSM_DRIVER_HPP_
#define MRFSM_DRIVER_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mrfsm/engine.hpp"
#include "mrfsm/graph.hpp"
#include "mrfsm/partitioner.hpp"
#include "mrfsm/result_io.hpp"

namespace mrfsm {

struct JobConfig {
    std::uint32_t partitions = 1;
    std::uint32_t reducers = 1;
    std::uint32_t workers = 1;
    /// Exactly one of the two must be set.
    std::optional<double> minsup_fraction;
    std::optional<std::uint32_t> minsup_absolute;
    PartitionScheme scheme = PartitionScheme::count_balanced;
    /// Ship edge-extension-map and edge-OL inside every value instead of a
    /// per-partition side store.
    bool bundle_statics = false;
    bool compress = false;
    std::filesystem::path staging_root;
    /// Largest pattern size mined; 0 means the largest transaction's edge count.
    std::uint32_t max_pattern_size = 0;
    std::size_t split_records = 32;
};

struct IterationCounters {
    std::uint32_t pattern_size = 0;
    std::uint64_t candidates_generated = 0;
    std::uint64_t canonical_survivors = 0;
    std::uint64_t frequent_patterns = 0;
    std::uint64_t records_staged = 0;
    std::uint64_t records_in = 0;
    std::uint64_t records_mapped = 0;

    Counters as_counters() const;
};

struct DriveResult {
    std::uint32_t threshold = 0;
    std::vector<FrequentPattern> frequent;  // sorted by code string
    std::vector<IterationCounters> iterations;
    std::vector<PhaseTiming> timings;
};

/// The safety cap stopped the job while patterns were still frequent.
class IterationCapReached : public std::runtime_error {
public:
    explicit IterationCapReached(DriveResult partial)
        : std::runtime_error("iteration cap reached at pattern size " +
                             std::to_string(partial.iterations.empty() ? 0 : partial.iterations.back().pattern_size)),
          partial_(std::move(partial)) {}
    const DriveResult& partial() const noexcept { return partial_; }

private:
    DriveResult partial_;
};

std::uint32_t resolve_threshold(const JobConfig& config, std::size_t n_graphs);

std::filesystem::path iteration_dir(const std::filesystem::path& staging_root, std::uint32_t pattern_size);

/// Partition phase, preparation phase (pattern size 1, `iter-1`), then one
/// mining iteration per pattern size until no pattern is frequent.
DriveResult drive(const GraphDataset& dataset, const JobConfig& config);

}  // namespace mrfsm

#endif  // MRFSM_DRIVER_HPP_
