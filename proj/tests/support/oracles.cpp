#include "oracles.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <numeric>
#include <stdexcept>

#ifndef MRFSM_TEST_DATA_DIR
#error "MRFSM_TEST_DATA_DIR must be defined"
#endif

namespace mrfsm::testing {

std::string toy_fixture_path() { return std::string(MRFSM_TEST_DATA_DIR) + "/toy.tg"; }

GraphDataset load_toy() { return read_dataset_file(toy_fixture_path()); }

namespace {

struct Walk {
    const LabeledGraph& g;
    std::vector<VertexId> image;
    std::vector<int> inverse;
    std::set<std::pair<VertexId, VertexId>> used;
    DFSCode code;
    std::vector<DFSCode>* out;

    bool is_used(VertexId a, VertexId b) const { return used.count({std::min(a, b), std::max(a, b)}) > 0; }
    void use(VertexId a, VertexId b) { used.insert({std::min(a, b), std::max(a, b)}); }
    void unuse(VertexId a, VertexId b) { used.erase({std::min(a, b), std::max(a, b)}); }

    void run() {
        if (code.size() == g.edge_count()) {
            out->push_back(code);
            return;
        }
        const auto rmp = code.rightmost_path();
        const std::uint32_t rm = rmp.back();
        const VertexId grm = image[rm];

        // Unused edges from the rightmost vertex to visited vertices are
        // back edges and must be emitted first, smallest target first.
        int best_target = -1;
        LabelId best_label = 0;
        for (const auto& n : g.neighbors(grm)) {
            if (inverse[n.to] < 0 || is_used(grm, n.to)) continue;
            if (std::find(rmp.begin(), rmp.end(), static_cast<std::uint32_t>(inverse[n.to])) == rmp.end())
                throw std::logic_error("back edge to a vertex off the rightmost path");
            if (best_target < 0 || inverse[n.to] < best_target) {
                best_target = inverse[n.to];
                best_label = n.label;
            }
        }
        if (best_target >= 0) {
            const auto t = static_cast<std::uint32_t>(best_target);
            code.push_back({rm, t, g.label(grm), best_label, g.label(image[t])});
            use(grm, image[t]);
            run();
            unuse(grm, image[t]);
            code.pop_back();
            return;
        }

        const auto fresh = static_cast<std::uint32_t>(image.size());
        for (auto it = rmp.rbegin(); it != rmp.rend(); ++it) {
            const VertexId gv = image[*it];
            bool any = false;
            for (const auto& n : g.neighbors(gv)) {
                if (inverse[n.to] >= 0) continue;
                any = true;
                code.push_back({*it, fresh, g.label(gv), n.label, g.label(n.to)});
                image.push_back(n.to);
                inverse[n.to] = static_cast<int>(fresh);
                use(gv, n.to);
                run();
                unuse(gv, n.to);
                inverse[n.to] = -1;
                image.pop_back();
                code.pop_back();
            }
            if (any) return;  // DFS only backtracks once the deeper vertex is exhausted
        }
    }
};

}  // namespace

std::vector<DFSCode> all_dfs_codes(const LabeledGraph& g) {
    std::vector<DFSCode> out;
    for (VertexId u = 0; u < g.vertex_count(); ++u)
        for (const auto& n : g.neighbors(u)) {
            Walk w{g, {u, n.to}, std::vector<int>(g.vertex_count(), -1), {}, {}, &out};
            w.inverse[u] = 0;
            w.inverse[n.to] = 1;
            w.use(u, n.to);
            w.code.push_back({0, 1, g.label(u), n.label, g.label(n.to)});
            w.run();
        }
    return out;
}

DFSCode brute_min_code(const LabeledGraph& g) {
    auto codes = all_dfs_codes(g);
    if (codes.empty()) throw std::invalid_argument("graph has no DFS codes");
    return *std::min_element(codes.begin(), codes.end(),
                             [](const DFSCode& a, const DFSCode& b) { return code_order(a, b) < 0; });
}

std::string permutation_certificate(const LabeledGraph& g) {
    const auto n = g.vertex_count();
    std::vector<VertexId> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::uint32_t> best;
    do {
        // perm[i] is the new position of vertex i.
        std::vector<std::uint32_t> desc(n, 0);
        for (VertexId v = 0; v < n; ++v) desc[perm[v]] = g.label(v);
        std::vector<std::array<std::uint32_t, 3>> edges;
        for (VertexId u = 0; u < n; ++u)
            for (const auto& e : g.neighbors(u))
                if (u < e.to)
                    edges.push_back({std::min(perm[u], perm[e.to]), std::max(perm[u], perm[e.to]), e.label});
        std::sort(edges.begin(), edges.end());
        for (const auto& e : edges) desc.insert(desc.end(), e.begin(), e.end());
        if (best.empty() || desc < best) best = std::move(desc);
    } while (std::next_permutation(perm.begin(), perm.end()));
    std::string s = std::to_string(n) + ":";
    for (auto x : best) s += std::to_string(x) + ",";
    return s;
}

bool brute_isomorphic(const LabeledGraph& a, const LabeledGraph& b) {
    if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count()) return false;
    return permutation_certificate(a) == permutation_certificate(b);
}

std::map<std::string, LabeledGraph> connected_classes(std::uint32_t max_edges, std::uint32_t vlabels,
                                                      std::uint32_t elabels) {
    std::map<std::string, LabeledGraph> all, level;
    for (LabelId a = 0; a < vlabels; ++a)
        for (LabelId b = a; b < vlabels; ++b)
            for (LabelId e = 0; e < elabels; ++e) {
                LabeledGraph g;
                g.add_vertex(a);
                g.add_vertex(b);
                g.add_edge(0, 1, vlabels + e);
                level.emplace(permutation_certificate(g), g);
            }
    for (std::uint32_t size = 1; size <= max_edges && !level.empty(); ++size) {
        all.insert(level.begin(), level.end());
        if (size == max_edges) break;
        std::map<std::string, LabeledGraph> next;
        for (const auto& [cert, g] : level) {
            const auto n = static_cast<VertexId>(g.vertex_count());
            for (VertexId u = 0; u < n; ++u)
                for (LabelId e = 0; e < elabels; ++e) {
                    for (LabelId l = 0; l < vlabels; ++l) {
                        LabeledGraph h = g;
                        h.add_edge(u, h.add_vertex(l), vlabels + e);
                        next.emplace(permutation_certificate(h), std::move(h));
                    }
                    for (VertexId v = u + 1; v < n; ++v) {
                        if (g.edge_label(u, v)) continue;
                        LabeledGraph h = g;
                        h.add_edge(u, v, vlabels + e);
                        next.emplace(permutation_certificate(h), std::move(h));
                    }
                }
        }
        level = std::move(next);
    }
    return all;
}

namespace {

void match(const LabeledGraph& p, const LabeledGraph& g, std::vector<VertexId>& map, std::vector<bool>& taken,
           const std::function<bool(const std::vector<VertexId>&)>& found, bool& stop) {
    const auto k = static_cast<VertexId>(map.size());
    if (k == p.vertex_count()) {
        stop = !found(map);
        return;
    }
    for (VertexId x = 0; x < g.vertex_count() && !stop; ++x) {
        if (taken[x] || g.label(x) != p.label(k)) continue;
        bool ok = true;
        for (const auto& e : p.neighbors(k)) {
            if (e.to >= k) continue;
            auto l = g.edge_label(map[e.to], x);
            if (!l || *l != e.label) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        map.push_back(x);
        taken[x] = true;
        match(p, g, map, taken, found, stop);
        taken[x] = false;
        map.pop_back();
    }
}

}  // namespace

std::vector<std::vector<VertexId>> all_embeddings(const LabeledGraph& pattern, const LabeledGraph& graph) {
    std::vector<std::vector<VertexId>> out;
    std::vector<VertexId> map;
    std::vector<bool> taken(graph.vertex_count(), false);
    bool stop = false;
    match(pattern, graph, map, taken, [&](const std::vector<VertexId>& m) { out.push_back(m); return true; }, stop);
    return out;
}

bool contains(const LabeledGraph& pattern, const LabeledGraph& graph) {
    std::vector<VertexId> map;
    std::vector<bool> taken(graph.vertex_count(), false);
    bool stop = false;
    bool hit = false;
    match(pattern, graph, map, taken, [&](const std::vector<VertexId>&) { hit = true; return false; }, stop);
    return hit;
}

std::size_t backtracking_support(const LabeledGraph& pattern, const GraphDataset& dataset) {
    std::size_t n = 0;
    for (const auto& g : dataset.graphs())
        if (contains(pattern, g)) ++n;
    return n;
}

LabeledGraph random_connected(std::mt19937_64& rng, std::uint32_t n, std::uint32_t m, std::uint32_t vlabels,
                              std::uint32_t elabels, GraphId id) {
    LabeledGraph g(id);
    std::uniform_int_distribution<std::uint32_t> vl(0, vlabels - 1), el(0, elabels - 1);
    for (std::uint32_t i = 0; i < n; ++i) g.add_vertex(vl(rng));
    for (std::uint32_t i = 1; i < n; ++i) {
        std::uniform_int_distribution<std::uint32_t> parent(0, i - 1);
        g.add_edge(i, parent(rng), vlabels + el(rng));
    }
    const std::uint32_t max_m = n * (n - 1) / 2;
    m = std::min(std::max(m, n - 1), max_m);
    std::uniform_int_distribution<std::uint32_t> pick(0, n - 1);
    while (g.edge_count() < m) {
        const auto a = pick(rng), b = pick(rng);
        if (a == b || g.edge_label(a, b)) continue;
        g.add_edge(a, b, vlabels + el(rng));
    }
    return g;
}

LabeledGraph permuted(const LabeledGraph& g, const std::vector<VertexId>& perm) {
    // perm[v] = new id of v
    std::vector<LabelId> labels(g.vertex_count());
    for (VertexId v = 0; v < g.vertex_count(); ++v) labels[perm[v]] = g.label(v);
    LabeledGraph out(g.id());
    for (auto l : labels) out.add_vertex(l);
    for (VertexId u = 0; u < g.vertex_count(); ++u)
        for (const auto& e : g.neighbors(u))
            if (u < e.to) out.add_edge(perm[u], perm[e.to], e.label);
    return out;
}

LabelTablePtr small_table(std::uint32_t vlabels, std::uint32_t elabels) {
    std::vector<std::string> names;
    for (std::uint32_t i = 0; i < vlabels; ++i) names.push_back(std::string(1, static_cast<char>('A' + i)));
    for (std::uint32_t i = 0; i < elabels; ++i) names.push_back(std::string(1, static_cast<char>('x' + i)));
    return std::make_shared<LabelTable>(std::move(names));
}

GraphDataset random_dataset(std::uint64_t seed, std::size_t graphs, std::uint32_t max_v, std::uint32_t max_e,
                            std::uint32_t vlabels, std::uint32_t elabels) {
    std::mt19937_64 rng(seed);
    std::vector<LabeledGraph> gs;
    for (std::size_t i = 0; i < graphs; ++i) {
        std::uniform_int_distribution<std::uint32_t> nv(2, max_v);
        const auto n = nv(rng);
        const auto hi = std::min(max_e, n * (n - 1) / 2);
        std::uniform_int_distribution<std::uint32_t> ne(n - 1, std::max(n - 1, hi));
        gs.push_back(random_connected(rng, n, ne(rng), vlabels, elabels, static_cast<GraphId>(i)));
    }
    return GraphDataset(small_table(vlabels, elabels), std::move(gs));
}

}  // namespace mrfsm::testing
