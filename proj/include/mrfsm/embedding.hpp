#ifndef MRFSM_EMBEDDING_HPP_
#define MRFSM_EMBEDDING_HPP_

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "mrfsm/canonical.hpp"
#include "mrfsm/graph.hpp"

namespace mrfsm {

/// Embeddings of one pattern, grouped by database graph.
///
/// Embeddings are stored flat: with `width` pattern vertices, embedding `e` of
/// an entry occupies `vertices[e*width .. (e+1)*width)`, and position k holds
/// the image of pattern vertex k. Entries are sorted by graph id and never empty.
class OccurrenceList {
public:
    struct Entry {
        GraphId graph;
        std::vector<VertexId> vertices;
        bool operator==(const Entry&) const = default;
    };

    OccurrenceList() = default;
    explicit OccurrenceList(std::uint32_t width) : width_(width) {}

    std::uint32_t width() const noexcept { return width_; }
    const std::vector<Entry>& entries() const noexcept { return entries_; }
    bool empty() const noexcept { return entries_.empty(); }
    std::size_t embedding_count() const noexcept;

    std::size_t embeddings_in(const Entry& e) const noexcept { return width_ ? e.vertices.size() / width_ : 0; }
    std::span<const VertexId> embedding(const Entry& e, std::size_t k) const {
        return {e.vertices.data() + k * width_, width_};
    }

    /// Appends a graph's embeddings; ids must arrive in increasing order.
    /// Empty vectors are dropped.
    void append(GraphId graph, std::vector<VertexId> flat);

    bool operator==(const OccurrenceList&) const = default;

private:
    std::uint32_t width_ = 0;
    std::vector<Entry> entries_;
};

/// Number of distinct graphs in `ol`; this is the transaction support.
std::size_t local_support(const OccurrenceList& ol) noexcept;

/// Per-partition occurrence lists of single edges. Orientation follows the
/// normalized EdgeType (image of `from` first); edges whose endpoint labels
/// match appear in both orientations.
using EdgeOL = std::map<EdgeType, OccurrenceList>;

/// Lookup structure over the graphs covered by an EdgeOL.
class PartitionIndex {
public:
    struct LocalGraph {
        std::vector<LabelId> labels;  // kNoLabel for vertices without indexed edges
        std::vector<std::vector<Neighbor>> adj;

        std::optional<LabelId> edge_label(VertexId u, VertexId v) const;
    };

    PartitionIndex() = default;
    /// Rebuilds graph adjacency from the edge occurrence lists.
    explicit PartitionIndex(const EdgeOL& edge_ol);

    const LocalGraph* find(GraphId id) const;
    std::size_t graph_count() const noexcept { return ids_.size(); }

private:
    std::vector<GraphId> ids_;
    std::vector<LocalGraph> graphs_;
};

/// Pattern object shipped between map and reduce tasks.
struct PatternObject {
    DFSCode code;
    std::uint32_t partition_id = 0;
    OccurrenceList ol;
    std::vector<std::uint32_t> rmp;
    /// Images of the rmp vertices, one row of rmp.size() per embedding, aligned with `ol`.
    OccurrenceList vset;
    std::uint32_t local_support = 0;

    bool operator==(const PatternObject&) const = default;
};

/// Fills rmp, vset and local_support from code and ol.
PatternObject make_pattern_object(DFSCode code, std::uint32_t partition_id, OccurrenceList ol);

/// How a child pattern extends its parent by one edge.
struct Extension {
    enum class Kind : std::uint8_t { forward, backward };
    Kind kind;
    std::uint32_t attach;    // pattern vertex the edge starts from
    LabelId edge_label;
    LabelId new_label;       // forward: label of the new vertex
    std::uint32_t target;    // backward: rmp vertex closed to
};

/// Embeddings of `parent` extended by `ext`. Graphs are restricted to those
/// where the adjoined edge type occurs (edge-OL intersection), and each
/// candidate embedding is checked against the partition adjacency.
OccurrenceList extend_ol(const PatternObject& parent, const Extension& ext, const EdgeOL& edge_ol,
                         const PartitionIndex& index);

}  // namespace mrfsm

#endif  // MRFSM_EMBEDDING_HPP_
