#ifndef MRFSM_PARTITIONER_HPP_
#define MRFSM_PARTITIONER_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "mrfsm/graph.hpp"

namespace mrfsm {

enum class PartitionScheme : std::uint8_t {
    count_balanced,  // equal graph counts, file order preserved
    edge_balanced,   // greedy heaviest-first onto the least-loaded partition
};

std::string_view to_string(PartitionScheme s) noexcept;
/// Accepts "count" / "edges" (and the long enum names).
PartitionScheme parse_scheme(std::string_view text);

struct PartitionPlan {
    std::uint32_t k = 1;
    PartitionScheme scheme = PartitionScheme::count_balanced;
    std::uint32_t threshold = 1;
};

struct Partition {
    std::uint32_t id = 0;
    GraphDataset graphs;
};

/// Absolute support threshold ceil(fraction * n_graphs).
std::uint32_t compute_threshold(double minsup_fraction, std::size_t n_graphs);

/// Removes every edge whose type occurs in fewer than `threshold` graphs.
/// Vertices, and graphs left without edges, are kept.
GraphDataset filter_infrequent_edges(const GraphDataset& dataset, std::uint32_t threshold);

/// Splits `dataset` into plan.k disjoint partitions. Graphs inside a
/// partition keep their file order.
std::vector<Partition> make_partitions(const GraphDataset& dataset, const PartitionPlan& plan);

struct PartitionManifest {
    std::uint32_t k = 0;
    PartitionScheme scheme = PartitionScheme::count_balanced;
    std::uint32_t threshold = 0;
    std::vector<std::size_t> graph_counts;
    std::vector<std::size_t> edge_counts;
};

PartitionManifest manifest_for(const std::vector<Partition>& parts, const PartitionPlan& plan);

/// Writes `part-<id>.tg` files and `manifest` into `dir`, returning the
/// partition file paths in id order.
std::vector<std::filesystem::path> write_partitions(const std::filesystem::path& dir,
                                                    const std::vector<Partition>& parts,
                                                    const PartitionPlan& plan);

PartitionManifest read_manifest(const std::filesystem::path& file);
std::filesystem::path partition_file(const std::filesystem::path& dir, std::uint32_t id);

}  // namespace mrfsm

#endif  // MRFSM_PARTITIONER_HPP_
