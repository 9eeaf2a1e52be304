#include "mrfsm/embedding.hpp"

#include <algorithm>
#include <stdexcept>

namespace mrfsm {

std::size_t OccurrenceList::embedding_count() const noexcept {
    std::size_t n = 0;
    for (const auto& e : entries_) n += embeddings_in(e);
    return n;
}

void OccurrenceList::append(GraphId graph, std::vector<VertexId> flat) {
    if (flat.empty()) return;
    if (width_ == 0 || flat.size() % width_ != 0) throw std::invalid_argument("embedding width mismatch");
    if (!entries_.empty() && entries_.back().graph >= graph)
        throw std::invalid_argument("occurrence list graph ids must increase");
    entries_.push_back({graph, std::move(flat)});
}

std::size_t local_support(const OccurrenceList& ol) noexcept { return ol.entries().size(); }

std::optional<LabelId> PartitionIndex::LocalGraph::edge_label(VertexId u, VertexId v) const {
    if (u >= adj.size()) return std::nullopt;
    for (const auto& n : adj[u])
        if (n.to == v) return n.label;
    return std::nullopt;
}

PartitionIndex::PartitionIndex(const EdgeOL& edge_ol) {
    std::map<GraphId, LocalGraph> graphs;
    for (const auto& [type, ol] : edge_ol) {
        for (const auto& entry : ol.entries()) {
            auto& g = graphs[entry.graph];
            for (std::size_t k = 0; k < ol.embeddings_in(entry); ++k) {
                const auto emb = ol.embedding(entry, k);
                const VertexId u = emb[0], v = emb[1];
                if (type.from == type.to && u > v) continue;  // mirrored copy
                const auto need = std::max(u, v) + 1;
                if (g.labels.size() < need) {
                    g.labels.resize(need, kNoLabel);
                    g.adj.resize(need);
                }
                g.labels[u] = type.from;
                g.labels[v] = type.to;
                g.adj[u].push_back({v, type.edge});
                g.adj[v].push_back({u, type.edge});
            }
        }
    }
    ids_.reserve(graphs.size());
    graphs_.reserve(graphs.size());
    for (auto& [id, g] : graphs) {
        ids_.push_back(id);
        graphs_.push_back(std::move(g));
    }
}

const PartitionIndex::LocalGraph* PartitionIndex::find(GraphId id) const {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
    if (it == ids_.end() || *it != id) return nullptr;
    return &graphs_[static_cast<std::size_t>(it - ids_.begin())];
}

PatternObject make_pattern_object(DFSCode code, std::uint32_t partition_id, OccurrenceList ol) {
    PatternObject po;
    po.rmp = code.rightmost_path();
    po.code = std::move(code);
    po.partition_id = partition_id;
    po.local_support = static_cast<std::uint32_t>(local_support(ol));

    const auto width = static_cast<std::uint32_t>(po.rmp.size());
    OccurrenceList vset(width);
    for (const auto& entry : ol.entries()) {
        std::vector<VertexId> rows;
        rows.reserve(ol.embeddings_in(entry) * width);
        for (std::size_t k = 0; k < ol.embeddings_in(entry); ++k) {
            const auto emb = ol.embedding(entry, k);
            for (auto v : po.rmp) rows.push_back(emb[v]);
        }
        vset.append(entry.graph, std::move(rows));
    }
    po.vset = std::move(vset);
    po.ol = std::move(ol);
    return po;
}

OccurrenceList extend_ol(const PatternObject& parent, const Extension& ext, const EdgeOL& edge_ol,
                         const PartitionIndex& index) {
    const auto& code = parent.code;
    const std::uint32_t width = parent.ol.width();
    const bool forward = ext.kind == Extension::Kind::forward;
    const LabelId attach_label = code.vertex_label(ext.attach);
    const LabelId other_label = forward ? ext.new_label : code.vertex_label(ext.target);

    OccurrenceList child(forward ? width + 1 : width);
    auto eit = edge_ol.find(EdgeType::normalized(attach_label, ext.edge_label, other_label));
    if (eit == edge_ol.end()) return child;
    const auto& edge_entries = eit->second.entries();

    // Graph-id intersection of the parent OL with the adjoined edge's OL.
    auto e = edge_entries.begin();
    for (const auto& entry : parent.ol.entries()) {
        while (e != edge_entries.end() && e->graph < entry.graph) ++e;
        if (e == edge_entries.end()) break;
        if (e->graph != entry.graph) continue;
        const auto* g = index.find(entry.graph);
        if (g == nullptr) continue;

        std::vector<VertexId> out;
        for (std::size_t k = 0; k < parent.ol.embeddings_in(entry); ++k) {
            const auto emb = parent.ol.embedding(entry, k);
            const VertexId x = emb[ext.attach];
            if (forward) {
                for (const auto& n : g->adj[x]) {
                    if (n.label != ext.edge_label || g->labels[n.to] != ext.new_label) continue;
                    if (std::find(emb.begin(), emb.end(), n.to) != emb.end()) continue;
                    out.insert(out.end(), emb.begin(), emb.end());
                    out.push_back(n.to);
                }
            } else {
                auto l = g->edge_label(x, emb[ext.target]);
                if (l && *l == ext.edge_label) out.insert(out.end(), emb.begin(), emb.end());
            }
        }
        child.append(entry.graph, std::move(out));
    }
    return child;
}

}  // namespace mrfsm
