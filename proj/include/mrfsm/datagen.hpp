#ifndef MRFSM_DATAGEN_HPP_
#define MRFSM_DATAGEN_HPP_

#include <cstdint>

#include "mrfsm/graph.hpp"

namespace mrfsm {

struct GeneratorParams {
    std::size_t graphs = 100;
    double avg_edges = 25.0;
    std::uint32_t vertex_labels = 4;
    std::uint32_t edge_labels = 2;
    /// Target edge density |E| / (|V|(|V|-1)/2); sets the vertex count per graph.
    double density = 0.5;
    /// Fixed vertex count per graph; 0 derives it from avg_edges and density.
    std::uint32_t vertices = 0;
    std::uint64_t seed = 1;
    GraphId first_id = 0;
};

/// Random connected graphs: a random spanning tree plus extra
/// distinct edges. Edge counts are Poisson around avg_edges, clamped to
/// [|V|-1, |V|(|V|-1)/2]. Labels are V<i> and E<i>, drawn uniformly.
/// Throws std::invalid_argument for out-of-range or infeasible parameters.
GraphDataset generate(const GeneratorParams& params);

/// `graphs` transactions: the first half around `short_edges` edges, the
/// second half around `long_edges`, in that file order.
GraphDataset generate_bimodal(std::size_t graphs, double short_edges, double long_edges, GeneratorParams base);

}  // namespace mrfsm

#endif  // MRFSM_DATAGEN_HPP_
