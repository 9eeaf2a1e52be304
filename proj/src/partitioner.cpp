#include "mrfsm/partitioner.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace mrfsm {

namespace fs = std::filesystem;

std::string_view to_string(PartitionScheme s) noexcept {
    return s == PartitionScheme::count_balanced ? "count" : "edges";
}

PartitionScheme parse_scheme(std::string_view text) {
    if (text == "count" || text == "count_balanced" || text == "1") return PartitionScheme::count_balanced;
    if (text == "edges" || text == "edge_balanced" || text == "2") return PartitionScheme::edge_balanced;
    throw std::invalid_argument("unknown partition scheme '" + std::string(text) + "'");
}

std::uint32_t compute_threshold(double minsup_fraction, std::size_t n_graphs) {
    if (!(minsup_fraction > 0.0) || minsup_fraction > 1.0)
        throw std::invalid_argument("minsup fraction must be in (0, 1]");
    if (n_graphs == 0) throw std::invalid_argument("dataset is empty");
    // Guard against 0.2 * 10 landing a hair above 2.
    const double raw = minsup_fraction * static_cast<double>(n_graphs);
    return static_cast<std::uint32_t>(std::max(1.0, std::ceil(raw - 1e-9)));
}

GraphDataset filter_infrequent_edges(const GraphDataset& dataset, std::uint32_t threshold) {
    const auto census = edge_support_census(dataset);
    std::vector<LabeledGraph> out;
    out.reserve(dataset.size());
    for (const auto& g : dataset.graphs()) {
        LabeledGraph f(g.id());
        for (auto l : g.labels()) f.add_vertex(l);
        for (VertexId u = 0; u < g.vertex_count(); ++u)
            for (const auto& n : g.neighbors(u)) {
                if (u > n.to) continue;
                const auto t = EdgeType::normalized(g.label(u), n.label, g.label(n.to));
                if (census.at(t) >= threshold) f.add_edge(u, n.to, n.label);
            }
        out.push_back(std::move(f));
    }
    return GraphDataset(dataset.label_table(), std::move(out));
}

std::vector<Partition> make_partitions(const GraphDataset& dataset, const PartitionPlan& plan) {
    const std::size_t n = dataset.size();
    const std::size_t k = plan.k;
    if (k == 0) throw std::invalid_argument("partition count must be at least 1");
    if (k > n) throw std::invalid_argument("partition count " + std::to_string(k) + " exceeds graph count " +
                                           std::to_string(n));
    const auto& graphs = dataset.graphs();
    std::vector<std::vector<std::size_t>> members(k);

    if (plan.scheme == PartitionScheme::count_balanced) {
        for (std::size_t p = 0; p < k; ++p)
            for (std::size_t i = p * n / k; i < (p + 1) * n / k; ++i) members[p].push_back(i);
    } else {
        std::vector<std::size_t> order(n);
        for (std::size_t i = 0; i < n; ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (graphs[a].edge_count() != graphs[b].edge_count())
                return graphs[a].edge_count() > graphs[b].edge_count();
            return graphs[a].id() < graphs[b].id();
        });
        using Slot = std::pair<std::size_t, std::size_t>;  // (load, partition id)
        std::priority_queue<Slot, std::vector<Slot>, std::greater<>> heap;
        for (std::size_t p = 0; p < k; ++p) heap.emplace(0, p);
        for (auto i : order) {
            auto [load, p] = heap.top();
            heap.pop();
            members[p].push_back(i);
            heap.emplace(load + graphs[i].edge_count(), p);
        }
        for (auto& m : members) std::sort(m.begin(), m.end());
    }

    std::vector<Partition> parts;
    parts.reserve(k);
    for (std::size_t p = 0; p < k; ++p) {
        std::vector<LabeledGraph> gs;
        gs.reserve(members[p].size());
        for (auto i : members[p]) gs.push_back(graphs[i]);
        parts.push_back({static_cast<std::uint32_t>(p), GraphDataset(dataset.label_table(), std::move(gs))});
    }
    return parts;
}

PartitionManifest manifest_for(const std::vector<Partition>& parts, const PartitionPlan& plan) {
    PartitionManifest m;
    m.k = static_cast<std::uint32_t>(parts.size());
    m.scheme = plan.scheme;
    m.threshold = plan.threshold;
    for (const auto& p : parts) {
        m.graph_counts.push_back(p.graphs.size());
        m.edge_counts.push_back(p.graphs.edge_total());
    }
    return m;
}

fs::path partition_file(const fs::path& dir, std::uint32_t id) {
    return dir / ("part-" + std::to_string(id) + ".tg");
}

std::vector<fs::path> write_partitions(const fs::path& dir, const std::vector<Partition>& parts,
                                       const PartitionPlan& plan) {
    fs::create_directories(dir);
    std::vector<fs::path> files;
    for (const auto& p : parts) {
        files.push_back(partition_file(dir, p.id));
        write_dataset_file(files.back().string(), p.graphs);
    }
    const auto m = manifest_for(parts, plan);
    std::ofstream out(dir / "manifest", std::ios::trunc);
    out << "k\t" << m.k << "\nscheme\t" << to_string(m.scheme) << "\nthreshold\t" << m.threshold << '\n';
    for (std::size_t i = 0; i < m.k; ++i)
        out << "partition\t" << i << '\t' << m.graph_counts[i] << '\t' << m.edge_counts[i] << '\n';
    if (!out) throw std::runtime_error("cannot write manifest in " + dir.string());
    return files;
}

PartitionManifest read_manifest(const fs::path& file) {
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot open manifest " + file.string());
    PartitionManifest m;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        if (key == "k") {
            ls >> m.k;
        } else if (key == "scheme") {
            std::string s;
            ls >> s;
            m.scheme = parse_scheme(s);
        } else if (key == "threshold") {
            ls >> m.threshold;
        } else if (key == "partition") {
            std::size_t id = 0, graphs = 0, edges = 0;
            ls >> id >> graphs >> edges;
            m.graph_counts.push_back(graphs);
            m.edge_counts.push_back(edges);
        }
        if (!ls && !ls.eof()) throw std::runtime_error("malformed manifest line: " + line);
    }
    if (m.graph_counts.size() != m.k) throw std::runtime_error("manifest partition count mismatch");
    return m;
}

}  // namespace mrfsm
