#include "mrfsm/oracle.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "mrfsm/canonical.hpp"
#include "mrfsm/mining_tasks.hpp"
#include "mrfsm/partitioner.hpp"

namespace mrfsm {

std::vector<FrequentPattern> mine_sequential(const GraphDataset& dataset, std::uint32_t threshold) {
    if (threshold == 0) throw std::invalid_argument("threshold must be at least 1");
    const auto filtered = filter_infrequent_edges(dataset, threshold);
    const PartitionContext global(0, build_statics(filtered));
    const auto& labels = dataset.labels();

    std::vector<FrequentPattern> result;
    std::vector<PatternObject> level;
    for (auto& e : mapper_preparation(global, labels)) {
        result.push_back({e.key, e.pattern.local_support});
        level.push_back(std::move(e.pattern));
    }
    while (!level.empty()) {
        std::vector<PatternObject> next;
        MapCounters unused;
        for (const auto& parent : level)
            for (auto& child : mapper_mining(parent, global, labels, unused)) {
                if (child.pattern.local_support < threshold) continue;
                result.push_back({child.key, child.pattern.local_support});
                next.push_back(std::move(child.pattern));
            }
        level = std::move(next);
    }
    std::sort(result.begin(), result.end());
    return result;
}

namespace {

using EdgeSet = std::vector<std::uint32_t>;  // sorted edge indices

struct EdgeRef {
    VertexId u, v;
    LabelId label;
};

std::string canonical_key(const LabeledGraph& g, const std::vector<EdgeRef>& edges, const EdgeSet& subset,
                          const LabelTable& labels) {
    std::map<VertexId, VertexId> remap;
    LabeledGraph sub;
    auto local = [&](VertexId v) {
        auto [it, inserted] = remap.try_emplace(v, static_cast<VertexId>(remap.size()));
        if (inserted) sub.add_vertex(g.label(v));
        return it->second;
    };
    for (auto id : subset) {
        const auto a = local(edges[id].u);
        const auto b = local(edges[id].v);
        sub.add_edge(a, b, edges[id].label);
    }
    return code_to_string(min_dfs_code(sub), labels);
}

}  // namespace

std::vector<FrequentPattern> brute_force(const GraphDataset& dataset, std::uint32_t threshold, std::size_t max_size) {
    if (max_size > kBruteForceMaxSize)
        throw std::invalid_argument("brute_force max_size " + std::to_string(max_size) + " exceeds limit " +
                                    std::to_string(kBruteForceMaxSize));
    std::map<std::string, std::uint64_t> support;
    for (const auto& g : dataset.graphs()) {
        std::vector<EdgeRef> edges;
        for (VertexId u = 0; u < g.vertex_count(); ++u)
            for (const auto& n : g.neighbors(u))
                if (u < n.to) edges.push_back({u, n.to, n.label});

        std::set<std::string> keys;
        std::set<EdgeSet> frontier;
        for (std::uint32_t e = 0; e < edges.size(); ++e) frontier.insert({e});
        for (std::size_t size = 1; size <= max_size && !frontier.empty(); ++size) {
            std::set<EdgeSet> grown;
            for (const auto& s : frontier) {
                keys.insert(canonical_key(g, edges, s, dataset.labels()));
                if (size == max_size) continue;
                std::set<VertexId> touched;
                for (auto id : s) {
                    touched.insert(edges[id].u);
                    touched.insert(edges[id].v);
                }
                for (std::uint32_t e = 0; e < edges.size(); ++e) {
                    if (std::binary_search(s.begin(), s.end(), e)) continue;
                    if (!touched.count(edges[e].u) && !touched.count(edges[e].v)) continue;
                    EdgeSet bigger = s;
                    bigger.insert(std::upper_bound(bigger.begin(), bigger.end(), e), e);
                    grown.insert(std::move(bigger));
                }
            }
            frontier = std::move(grown);
        }
        for (const auto& k : keys) ++support[k];
    }
    std::vector<FrequentPattern> result;
    for (auto& [k, s] : support)
        if (s >= threshold) result.push_back({k, s});
    return result;
}

}  // namespace mrfsm
