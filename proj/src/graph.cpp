#include "mrfsm/graph.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_set>

namespace mrfsm {

LabelTable::LabelTable(std::vector<std::string> labels) : names_(std::move(labels)) {
    std::sort(names_.begin(), names_.end());
    names_.erase(std::unique(names_.begin(), names_.end()), names_.end());
    for (LabelId i = 0; i < names_.size(); ++i) ids_.emplace(names_[i], i);
}

std::optional<LabelId> LabelTable::find(std::string_view label) const {
    auto it = ids_.find(label);
    if (it == ids_.end()) return std::nullopt;
    return it->second;
}

LabelId LabelTable::at(std::string_view label) const {
    auto id = find(label);
    if (!id) throw std::out_of_range("unknown label '" + std::string(label) + "'");
    return *id;
}

VertexId LabeledGraph::add_vertex(LabelId label) {
    labels_.push_back(label);
    adj_.emplace_back();
    return static_cast<VertexId>(labels_.size() - 1);
}

void LabeledGraph::add_edge(VertexId u, VertexId v, LabelId label) {
    if (u >= labels_.size() || v >= labels_.size())
        throw std::invalid_argument("edge references missing vertex");
    if (u == v) throw std::invalid_argument("self-loop");
    if (edge_label(u, v)) throw std::invalid_argument("duplicate edge");
    adj_[u].push_back({v, label});
    adj_[v].push_back({u, label});
    ++edges_;
}

std::optional<LabelId> LabeledGraph::edge_label(VertexId u, VertexId v) const {
    const auto& a = adj_[u].size() <= adj_[v].size() ? adj_[u] : adj_[v];
    const VertexId other = adj_[u].size() <= adj_[v].size() ? v : u;
    for (const auto& n : a)
        if (n.to == other) return n.label;
    return std::nullopt;
}

GraphDataset::GraphDataset(LabelTablePtr labels, std::vector<LabeledGraph> graphs)
    : labels_(std::move(labels)), graphs_(std::move(graphs)) {
    for (std::size_t i = 1; i < graphs_.size(); ++i)
        if (graphs_[i].id() <= graphs_[i - 1].id())
            throw std::invalid_argument("graph ids must be strictly increasing");
}

std::size_t GraphDataset::edge_total() const {
    std::size_t total = 0;
    for (const auto& g : graphs_) total += g.edge_count();
    return total;
}

std::string GraphDataset::edge_type_name(const EdgeType& t) const {
    return labels_->name(t.from) + "-" + labels_->name(t.edge) + "-" + labels_->name(t.to);
}

namespace {

// Canonical edge listing used by both writing and comparison.
std::vector<std::tuple<VertexId, VertexId, LabelId>> sorted_edges(const LabeledGraph& g) {
    std::vector<std::tuple<VertexId, VertexId, LabelId>> edges;
    edges.reserve(g.edge_count());
    for (VertexId u = 0; u < g.vertex_count(); ++u)
        for (const auto& n : g.neighbors(u))
            if (u < n.to) edges.emplace_back(u, n.to, n.label);
    std::sort(edges.begin(), edges.end());
    return edges;
}

}  // namespace

bool GraphDataset::operator==(const GraphDataset& other) const {
    if (graphs_.size() != other.graphs_.size()) return false;
    for (std::size_t i = 0; i < graphs_.size(); ++i) {
        const auto& a = graphs_[i];
        const auto& b = other.graphs_[i];
        if (a.id() != b.id() || a.vertex_count() != b.vertex_count() ||
            a.edge_count() != b.edge_count())
            return false;
        for (VertexId v = 0; v < a.vertex_count(); ++v)
            if (labels_->name(a.label(v)) != other.labels_->name(b.label(v))) return false;
        auto ea = sorted_edges(a);
        auto eb = sorted_edges(b);
        for (std::size_t k = 0; k < ea.size(); ++k) {
            if (std::get<0>(ea[k]) != std::get<0>(eb[k]) || std::get<1>(ea[k]) != std::get<1>(eb[k]))
                return false;
            if (labels_->name(std::get<2>(ea[k])) != other.labels_->name(std::get<2>(eb[k])))
                return false;
        }
    }
    return true;
}

namespace {

struct RawEdge {
    VertexId u, v;
    std::string label;
};

struct RawGraph {
    GraphId id;
    std::vector<std::string> vertex_labels;
    std::vector<RawEdge> edges;
    std::set<std::pair<VertexId, VertexId>> seen;
};

void check_label(const std::string& tok, std::size_t line) {
    if (tok.find_first_of("(),") != std::string::npos)
        throw ParseError(line, "label '" + tok + "' contains a reserved character");
}

std::uint64_t parse_uint(const std::string& tok, std::size_t line, const char* what) {
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError(line, std::string("invalid ") + what + " '" + tok + "'");
    try {
        return std::stoull(tok);
    } catch (const std::exception&) {
        throw ParseError(line, std::string("invalid ") + what + " '" + tok + "'");
    }
}

}  // namespace

GraphDataset parse_dataset(std::istream& in, LabelTablePtr fixed_labels) {
    std::vector<RawGraph> raw;
    std::string line;
    std::size_t lineno = 0;
    bool ended = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::istringstream ls(line);
        std::vector<std::string> tok;
        for (std::string t; ls >> t;) tok.push_back(std::move(t));
        if (tok.empty() || tok[0][0] == '#') continue;
        if (ended) throw ParseError(lineno, "content after end-of-data marker");

        if (tok[0] == "t") {
            if (tok.size() != 3 || tok[1] != "#") throw ParseError(lineno, "expected 't # <graph_id>'");
            if (tok[2] == "-1") {
                ended = true;
                continue;
            }
            const auto id = parse_uint(tok[2], lineno, "graph id");
            if (id > 0xffffffffu) throw ParseError(lineno, "graph id out of range");
            if (!raw.empty() && id <= raw.back().id)
                throw ParseError(lineno, "graph ids must be strictly increasing");
            raw.push_back({static_cast<GraphId>(id), {}, {}, {}});
        } else if (tok[0] == "v") {
            if (raw.empty()) throw ParseError(lineno, "vertex outside of a transaction");
            if (tok.size() != 3) throw ParseError(lineno, "expected 'v <vid> <label>'");
            auto& g = raw.back();
            const auto vid = parse_uint(tok[1], lineno, "vertex id");
            if (vid < g.vertex_labels.size()) throw ParseError(lineno, "duplicate vertex id " + tok[1]);
            if (vid > g.vertex_labels.size())
                throw ParseError(lineno, "vertex ids must be dense; expected " +
                                             std::to_string(g.vertex_labels.size()));
            check_label(tok[2], lineno);
            g.vertex_labels.push_back(tok[2]);
        } else if (tok[0] == "e") {
            if (raw.empty()) throw ParseError(lineno, "edge outside of a transaction");
            if (tok.size() != 3 && tok.size() != 4)
                throw ParseError(lineno, "expected 'e <vid1> <vid2> <label>'");
            auto& g = raw.back();
            const auto u = parse_uint(tok[1], lineno, "vertex id");
            const auto v = parse_uint(tok[2], lineno, "vertex id");
            if (u >= g.vertex_labels.size() || v >= g.vertex_labels.size())
                throw ParseError(lineno, "edge references missing vertex");
            if (u == v) throw ParseError(lineno, "self-loop on vertex " + tok[1]);
            if (tok.size() == 4) check_label(tok[3], lineno);
            const std::pair<VertexId, VertexId> key{static_cast<VertexId>(std::min(u, v)), static_cast<VertexId>(std::max(u, v))};
            if (!g.seen.insert(key).second) throw ParseError(lineno, "duplicate edge " + tok[1] + " " + tok[2]);
            g.edges.push_back({static_cast<VertexId>(u), static_cast<VertexId>(v),
                               tok.size() == 4 ? tok[3] : std::string(kUnlabeledEdge)});
        } else {
            throw ParseError(lineno, "unknown record type '" + tok[0] + "'");
        }
    }

    LabelTablePtr table = fixed_labels;
    if (!table) {
        std::vector<std::string> names;
        for (const auto& g : raw) {
            names.insert(names.end(), g.vertex_labels.begin(), g.vertex_labels.end());
            for (const auto& e : g.edges) names.push_back(e.label);
        }
        table = std::make_shared<LabelTable>(std::move(names));
    }

    std::vector<LabeledGraph> graphs;
    graphs.reserve(raw.size());
    for (const auto& r : raw) {
        LabeledGraph g(r.id);
        try {
            for (const auto& l : r.vertex_labels) g.add_vertex(table->at(l));
            for (const auto& e : r.edges) g.add_edge(e.u, e.v, table->at(e.label));
        } catch (const std::out_of_range& ex) {
            throw ParseError(lineno, std::string("graph ") + std::to_string(r.id) + ": " + ex.what());
        }
        graphs.push_back(std::move(g));
    }
    return GraphDataset(std::move(table), std::move(graphs));
}

GraphDataset parse_dataset_string(std::string_view text, LabelTablePtr fixed_labels) {
    std::istringstream in{std::string(text)};
    return parse_dataset(in, std::move(fixed_labels));
}

GraphDataset read_dataset_file(const std::string& path, LabelTablePtr fixed_labels) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open dataset '" + path + "'");
    return parse_dataset(in, std::move(fixed_labels));
}

void write_dataset(std::ostream& out, const GraphDataset& dataset) {
    const auto& labels = dataset.labels();
    for (const auto& g : dataset.graphs()) {
        out << "t # " << g.id() << '\n';
        for (VertexId v = 0; v < g.vertex_count(); ++v) out << "v " << v << ' ' << labels.name(g.label(v)) << '\n';
        for (const auto& [u, v, l] : sorted_edges(g)) out << "e " << u << ' ' << v << ' ' << labels.name(l) << '\n';
    }
}

std::string write_dataset_string(const GraphDataset& dataset) {
    std::ostringstream out;
    write_dataset(out, dataset);
    return out.str();
}

void write_dataset_file(const std::string& path, const GraphDataset& dataset) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write dataset '" + path + "'");
    write_dataset(out, dataset);
    if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

std::map<EdgeType, std::size_t> edge_support_census(const GraphDataset& dataset) {
    std::map<EdgeType, std::size_t> census;
    std::set<EdgeType> in_graph;
    for (const auto& g : dataset.graphs()) {
        in_graph.clear();
        for (VertexId u = 0; u < g.vertex_count(); ++u)
            for (const auto& n : g.neighbors(u))
                if (u < n.to) in_graph.insert(EdgeType::normalized(g.label(u), n.label, g.label(n.to)));
        for (const auto& t : in_graph) ++census[t];
    }
    return census;
}

}  // namespace mrfsm
