#ifndef MRFSM_TESTS_ORACLES_HPP_
#define MRFSM_TESTS_ORACLES_HPP_

// Test-only reference implementations. None of these call into the miner's
// candidate generation, canonical search or occurrence-list code.

#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "mrfsm/canonical.hpp"
#include "mrfsm/graph.hpp"

namespace mrfsm::testing {

std::string toy_fixture_path();
GraphDataset load_toy();

/// Every DFS code of a connected graph, by explicit depth-first traversal
/// enumeration (all start edges, all branching choices).
std::vector<DFSCode> all_dfs_codes(const LabeledGraph& g);

/// Minimum over all_dfs_codes under code_order.
DFSCode brute_min_code(const LabeledGraph& g);

/// Isomorphism certificate: lexicographically smallest labeled adjacency
/// description over all vertex permutations. Only for tiny graphs.
std::string permutation_certificate(const LabeledGraph& g);

bool brute_isomorphic(const LabeledGraph& a, const LabeledGraph& b);

/// One representative per isomorphism class of connected graphs with 1..max_edges
/// edges, keyed by permutation_certificate. Vertex label ids are 0..vlabels-1,
/// edge label ids vlabels..vlabels+elabels-1. Grown edge by edge: every
/// connected graph has an edge whose removal leaves it connected.
std::map<std::string, LabeledGraph> connected_classes(std::uint32_t max_edges, std::uint32_t vlabels,
                                                      std::uint32_t elabels);

/// All injective maps pattern -> graph that preserve vertex labels and map
/// every pattern edge onto a graph edge with the same label. Flattened rows
/// of pattern.vertex_count() entries, in lexicographic order.
std::vector<std::vector<VertexId>> all_embeddings(const LabeledGraph& pattern, const LabeledGraph& graph);

/// Whether at least one embedding exists (early exit).
bool contains(const LabeledGraph& pattern, const LabeledGraph& graph);

/// Number of dataset graphs containing `pattern`.
std::size_t backtracking_support(const LabeledGraph& pattern, const GraphDataset& dataset);

/// Random connected graph with `n` vertices and `m` edges over the given labels
/// (label ids index into `table`).
LabeledGraph random_connected(std::mt19937_64& rng, std::uint32_t n, std::uint32_t m, std::uint32_t vlabels,
                              std::uint32_t elabels, GraphId id = 0);

LabeledGraph permuted(const LabeledGraph& g, const std::vector<VertexId>& perm);

/// Label table with vertex labels A, B, C, ... and edge labels x, y, ...
/// Vertex label i has id i; edge label j has id vlabels + j.
LabelTablePtr small_table(std::uint32_t vlabels, std::uint32_t elabels);

/// Random small dataset of `graphs` transactions (n <= max_v, m <= max_e).
GraphDataset random_dataset(std::uint64_t seed, std::size_t graphs, std::uint32_t max_v, std::uint32_t max_e,
                            std::uint32_t vlabels, std::uint32_t elabels);

}  // namespace mrfsm::testing

#endif  // MRFSM_TESTS_ORACLES_HPP_
