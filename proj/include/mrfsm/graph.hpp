#ifndef MRFSM_GRAPH_HPP_
#define MRFSM_GRAPH_HPP_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mrfsm {

using LabelId = std::uint32_t;
using VertexId = std::uint32_t;
using GraphId = std::uint32_t;

inline constexpr LabelId kNoLabel = 0xffffffffu;

/// Label used for edges of inputs that carry no edge labels.
inline constexpr std::string_view kUnlabeledEdge = "_";

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// Interned label strings. Ids are assigned in bytewise lexicographic order of
// the strings, so comparing ids is the same as comparing the labels.
class LabelTable {
public:
    LabelTable() = default;
    explicit LabelTable(std::vector<std::string> labels);

    std::optional<LabelId> find(std::string_view label) const;
    LabelId at(std::string_view label) const;
    const std::string& name(LabelId id) const { return names_.at(id); }
    std::size_t size() const noexcept { return names_.size(); }
    const std::vector<std::string>& names() const noexcept { return names_; }

    bool operator==(const LabelTable&) const = default;

private:
    std::vector<std::string> names_;
    std::map<std::string, LabelId, std::less<>> ids_;
};

using LabelTablePtr = std::shared_ptr<const LabelTable>;

struct Neighbor {
    VertexId to;
    LabelId label;
    bool operator==(const Neighbor&) const = default;
};

/// One transaction: labeled, undirected, simple.
class LabeledGraph {
public:
    LabeledGraph() = default;
    explicit LabeledGraph(GraphId id) : id_(id) {}

    GraphId id() const noexcept { return id_; }
    std::size_t vertex_count() const noexcept { return labels_.size(); }
    std::size_t edge_count() const noexcept { return edges_; }

    LabelId label(VertexId v) const { return labels_[v]; }
    const std::vector<LabelId>& labels() const noexcept { return labels_; }
    const std::vector<Neighbor>& neighbors(VertexId v) const { return adj_[v]; }

    VertexId add_vertex(LabelId label);
    /// Throws std::invalid_argument on self-loops, duplicates and unknown endpoints.
    void add_edge(VertexId u, VertexId v, LabelId label);
    std::optional<LabelId> edge_label(VertexId u, VertexId v) const;

    bool operator==(const LabeledGraph&) const = default;

private:
    GraphId id_ = 0;
    std::vector<LabelId> labels_;
    std::vector<std::vector<Neighbor>> adj_;
    std::size_t edges_ = 0;
};

/// Undirected edge identity, normalized so that `from <= to`.
struct EdgeType {
    LabelId from;
    LabelId edge;
    LabelId to;

    static EdgeType normalized(LabelId a, LabelId e, LabelId b) {
        return a <= b ? EdgeType{a, e, b} : EdgeType{b, e, a};
    }
    auto operator<=>(const EdgeType&) const = default;
};

class GraphDataset {
public:
    GraphDataset() : labels_(std::make_shared<LabelTable>()) {}
    GraphDataset(LabelTablePtr labels, std::vector<LabeledGraph> graphs);

    const LabelTable& labels() const noexcept { return *labels_; }
    const LabelTablePtr& label_table() const noexcept { return labels_; }
    const std::vector<LabeledGraph>& graphs() const noexcept { return graphs_; }
    std::size_t size() const noexcept { return graphs_.size(); }
    bool empty() const noexcept { return graphs_.empty(); }
    std::size_t edge_total() const;

    std::string edge_type_name(const EdgeType& t) const;

    /// Compares graphs by label strings, so datasets built against different
    /// label tables still compare equal when their content matches.
    bool operator==(const GraphDataset& other) const;

private:
    LabelTablePtr labels_;
    std::vector<LabeledGraph> graphs_;
};

/// Parses the `t # / v / e` transaction format. With `fixed_labels` every label
/// must already exist in that table; otherwise a fresh table is built.
GraphDataset parse_dataset(std::istream& in, LabelTablePtr fixed_labels = nullptr);
GraphDataset parse_dataset_string(std::string_view text, LabelTablePtr fixed_labels = nullptr);
GraphDataset read_dataset_file(const std::string& path, LabelTablePtr fixed_labels = nullptr);

void write_dataset(std::ostream& out, const GraphDataset& dataset);
std::string write_dataset_string(const GraphDataset& dataset);
void write_dataset_file(const std::string& path, const GraphDataset& dataset);

/// Number of distinct graphs containing each edge type.
std::map<EdgeType, std::size_t> edge_support_census(const GraphDataset& dataset);

}  // namespace mrfsm

#endif  // MRFSM_GRAPH_HPP_
