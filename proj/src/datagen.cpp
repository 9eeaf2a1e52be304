#include "mrfsm/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace mrfsm {

namespace {

std::uint32_t vertices_for(double avg_edges, double density) {
    std::uint32_t v = 2;
    while (density * v * (v - 1) / 2.0 < avg_edges) ++v;
    return v;
}

void check(const GeneratorParams& p) {
    if (p.avg_edges < 1.0) throw std::invalid_argument("avg_edges must be at least 1");
    if (p.vertex_labels == 0 || p.edge_labels == 0) throw std::invalid_argument("label counts must be positive");
    if (!(p.density > 0.0) || p.density > 1.0) throw std::invalid_argument("density must be in (0, 1]");
}

// Labels sort as strings, so pad indices to keep V2 < V10 consistent.
std::vector<std::string> label_names(char prefix, std::uint32_t n) {
    const auto width = std::to_string(n - 1).size();
    std::vector<std::string> out;
    for (std::uint32_t i = 0; i < n; ++i) {
        auto digits = std::to_string(i);
        out.push_back(std::string(1, prefix) + std::string(width - digits.size(), '0') + digits);
    }
    return out;
}

LabeledGraph random_graph(GraphId id, std::uint32_t nv, std::size_t target_edges, const std::vector<LabelId>& vlabels,
                          const std::vector<LabelId>& elabels, std::mt19937_64& rng) {
    const std::size_t max_edges = std::size_t(nv) * (nv - 1) / 2;
    const std::size_t m = std::clamp<std::size_t>(target_edges, nv - 1, max_edges);

    std::uniform_int_distribution<std::size_t> pick_v(0, vlabels.size() - 1);
    std::uniform_int_distribution<std::size_t> pick_e(0, elabels.size() - 1);
    LabeledGraph g(id);
    for (std::uint32_t i = 0; i < nv; ++i) g.add_vertex(vlabels[pick_v(rng)]);

    // Random spanning tree: attach each vertex of a shuffled order to an earlier one.
    std::vector<VertexId> order(nv);
    for (VertexId i = 0; i < nv; ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);
    for (std::uint32_t i = 1; i < nv; ++i) {
        std::uniform_int_distribution<std::uint32_t> parent(0, i - 1);
        g.add_edge(order[i], order[parent(rng)], elabels[pick_e(rng)]);
    }

    std::vector<std::pair<VertexId, VertexId>> free_pairs;
    for (VertexId u = 0; u < nv; ++u)
        for (VertexId v = u + 1; v < nv; ++v)
            if (!g.edge_label(u, v)) free_pairs.emplace_back(u, v);
    std::shuffle(free_pairs.begin(), free_pairs.end(), rng);
    for (std::size_t k = 0; k < m - (nv - 1); ++k)
        g.add_edge(free_pairs[k].first, free_pairs[k].second, elabels[pick_e(rng)]);
    return g;
}

struct Tables {
    LabelTablePtr table;
    std::vector<LabelId> vlabels, elabels;
};

Tables make_tables(const GeneratorParams& p) {
    auto vnames = label_names('V', p.vertex_labels);
    auto enames = label_names('E', p.edge_labels);
    std::vector<std::string> all = vnames;
    all.insert(all.end(), enames.begin(), enames.end());
    Tables t{std::make_shared<LabelTable>(std::move(all)), {}, {}};
    for (const auto& n : vnames) t.vlabels.push_back(t.table->at(n));
    for (const auto& n : enames) t.elabels.push_back(t.table->at(n));
    return t;
}

std::uint32_t vertex_count(const GeneratorParams& p, double avg_edges) {
    const auto nv = p.vertices ? p.vertices : vertices_for(avg_edges, p.density);
    if (nv < 2) throw std::invalid_argument("graphs need at least 2 vertices");
    if (avg_edges < nv - 1)
        throw std::invalid_argument("infeasible: avg_edges " + std::to_string(avg_edges) + " is below " +
                                    std::to_string(nv - 1) + " needed to connect " + std::to_string(nv) + " vertices");
    return nv;
}

}  // namespace

GraphDataset generate(const GeneratorParams& params) {
    check(params);
    const auto nv = vertex_count(params, params.avg_edges);
    const auto tables = make_tables(params);
    std::mt19937_64 rng(params.seed);
    std::poisson_distribution<std::size_t> edges(params.avg_edges);
    std::vector<LabeledGraph> graphs;
    graphs.reserve(params.graphs);
    for (std::size_t i = 0; i < params.graphs; ++i)
        graphs.push_back(random_graph(params.first_id + static_cast<GraphId>(i), nv, edges(rng), tables.vlabels,
                                      tables.elabels, rng));
    return GraphDataset(tables.table, std::move(graphs));
}

GraphDataset generate_bimodal(std::size_t graphs, double short_edges, double long_edges, GeneratorParams base) {
    check(base);
    const auto nshort = graphs / 2;
    const auto tables = make_tables(base);
    std::mt19937_64 rng(base.seed);
    std::vector<LabeledGraph> out;
    out.reserve(graphs);
    for (int half = 0; half < 2; ++half) {
        const double avg = half == 0 ? short_edges : long_edges;
        const auto count = half == 0 ? nshort : graphs - nshort;
        const auto nv = vertex_count(base, avg);
        std::poisson_distribution<std::size_t> edges(avg);
        for (std::size_t i = 0; i < count; ++i)
            out.push_back(random_graph(base.first_id + static_cast<GraphId>(out.size()), nv, edges(rng), tables.vlabels,
                                       tables.elabels, rng));
    }
    return GraphDataset(tables.table, std::move(out));
}

}  // namespace mrfsm
