#ifndef MRFSM_MINING_TASKS_HPP_
#define MRFSM_MINING_TASKS_HPP_

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "mrfsm/embedding.hpp"
#include "mrfsm/partitioner.hpp"
#include "mrfsm/serialize.hpp"

namespace mrfsm {

/// For each vertex label, the (edge label, neighbor label) choices that occur
/// in a partition. Symmetric: an A-x-B edge yields A:(x,B) and B:(x,A).
using EdgeExtensionMap = std::map<LabelId, std::vector<std::pair<LabelId, LabelId>>>;

struct PartitionStatics {
    EdgeExtensionMap extensions;
    EdgeOL edge_ol;
    bool operator==(const PartitionStatics&) const = default;
};

/// Statics plus the adjacency index derived from them; read-only after build.
struct PartitionContext {
    std::uint32_t partition_id = 0;
    PartitionStatics statics;
    PartitionIndex index;

    PartitionContext(std::uint32_t id, PartitionStatics s)
        : partition_id(id), statics(std::move(s)), index(statics.edge_ol) {}
};

using PartitionContextPtr = std::shared_ptr<const PartitionContext>;

PartitionStatics build_statics(const GraphDataset& graphs);

std::string serialize_statics(const PartitionStatics& statics);
PartitionStatics deserialize_statics(std::string_view bytes);

struct CandidateExtension {
    Extension extension;
    DFSCode code;
};

/// Rightmost-path extensions of `parent.code` permitted by `eem`.
/// Backward candidates run from the rightmost vertex to rmp vertices it is not
/// already adjacent to; forward candidates attach to any rmp vertex.
std::vector<CandidateExtension> generate_candidates(const PatternObject& parent, const EdgeExtensionMap& eem);

struct Emission {
    std::string key;
    PatternObject pattern;
};

struct MapCounters {
    std::uint64_t candidates_generated = 0;
    std::uint64_t canonical_survivors = 0;
    std::uint64_t emitted = 0;
};

/// One single-edge pattern per edge type present in the partition, keyed by
/// its canonical code string.
std::vector<Emission> mapper_preparation(const PartitionContext& ctx, const LabelTable& labels);

/// Identity relay: every value is staged under its key.
std::vector<KVRecord> reducer_preparation(const std::string& key, std::vector<std::string> values);

/// Candidates of `parent` that pass the canonicality test and occur in the
/// partition, each keyed by its canonical code string.
std::vector<Emission> mapper_mining(const PatternObject& parent, const PartitionContext& ctx,
                                    const LabelTable& labels, MapCounters& counters);

struct ReduceOutcome {
    bool frequent = false;
    std::uint64_t support = 0;
    std::vector<KVRecord> staged;
};

/// Sums local supports; stages all values unchanged iff the sum reaches `threshold`.
ReduceOutcome reducer_mining(const std::string& key, std::vector<std::string> values, std::uint32_t threshold);

}  // namespace mrfsm

#endif  // MRFSM_MINING_TASKS_HPP_
