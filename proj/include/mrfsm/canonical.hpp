#ifndef MRFSM_CANONICAL_HPP_
#define MRFSM_CANONICAL_HPP_

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mrfsm/graph.hpp"

namespace mrfsm {

/// One edge of a DFS code. Pattern vertex ids are 0-based in memory and
/// rendered 1-based in the string form, so the first tuple prints as (1,2,...).
struct EdgeTuple {
    std::uint32_t from;
    std::uint32_t to;
    LabelId from_label;
    LabelId edge_label;
    LabelId to_label;

    bool forward() const noexcept { return from < to; }
    bool operator==(const EdgeTuple&) const = default;
};

/// DFS-lexicographic order on tuples.
std::strong_ordering compare_tuples(const EdgeTuple& a, const EdgeTuple& b) noexcept;

class DFSCode {
public:
    DFSCode() = default;
    explicit DFSCode(std::vector<EdgeTuple> tuples) : tuples_(std::move(tuples)) {}

    const std::vector<EdgeTuple>& tuples() const noexcept { return tuples_; }
    std::size_t size() const noexcept { return tuples_.size(); }
    bool empty() const noexcept { return tuples_.empty(); }
    const EdgeTuple& operator[](std::size_t i) const { return tuples_[i]; }
    const EdgeTuple& back() const { return tuples_.back(); }

    void push_back(const EdgeTuple& t) { tuples_.push_back(t); }
    void pop_back() { tuples_.pop_back(); }

    std::uint32_t vertex_count() const noexcept;
    std::uint32_t rightmost_vertex() const noexcept { return vertex_count() == 0 ? 0 : vertex_count() - 1; }
    LabelId vertex_label(std::uint32_t v) const;
    std::vector<LabelId> vertex_labels() const;

    /// Forward-edge path from vertex 0 to the rightmost vertex, in that order.
    std::vector<std::uint32_t> rightmost_path() const;

    /// Structural validity: first tuple is (0,1), forward tuples introduce the
    /// next id from an existing vertex, backward tuples close an existing pair
    /// exactly once, and vertex labels are consistent.
    bool valid() const;

    /// Pattern graph with vertex k = pattern vertex k.
    LabeledGraph to_graph(GraphId id = 0) const;

    bool operator==(const DFSCode&) const = default;

private:
    std::vector<EdgeTuple> tuples_;
};

std::strong_ordering code_order(const DFSCode& a, const DFSCode& b) noexcept;

/// Minimum DFS code of a connected graph with at least one edge.
/// Throws std::invalid_argument otherwise.
DFSCode min_dfs_code(const LabeledGraph& g);

/// True iff `code` equals the minimum DFS code of the graph it describes.
/// Stops at the first position where a smaller continuation exists.
bool is_canonical(const DFSCode& code);

/// `(i,j,li,le,lj)` concatenation with 1-based vertex ids.
std::string code_to_string(const DFSCode& code, const LabelTable& labels);

/// Inverse of code_to_string. Throws std::invalid_argument on malformed text.
DFSCode parse_code(std::string_view text, const LabelTable& labels);

}  // namespace mrfsm

#endif  // MRFSM_CANONICAL_HPP_
