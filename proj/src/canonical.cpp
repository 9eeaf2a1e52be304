#include "mrfsm/canonical.hpp"

#include <algorithm>
#include <charconv>
#include <optional>
#include <stdexcept>

namespace mrfsm {

std::strong_ordering compare_tuples(const EdgeTuple& a, const EdgeTuple& b) noexcept {
    const bool af = a.forward();
    const bool bf = b.forward();
    if (af && bf) {
        if (a.to != b.to) return a.to <=> b.to;
        if (a.from != b.from) return b.from <=> a.from;  // deeper attach point first
    } else if (!af && !bf) {
        if (a.from != b.from) return a.from <=> b.from;
        if (a.to != b.to) return a.to <=> b.to;
    } else if (!af && bf) {
        return a.from < b.to ? std::strong_ordering::less : std::strong_ordering::greater;
    } else {
        return a.to <= b.from ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    if (a.from_label != b.from_label) return a.from_label <=> b.from_label;
    if (a.edge_label != b.edge_label) return a.edge_label <=> b.edge_label;
    return a.to_label <=> b.to_label;
}

std::strong_ordering code_order(const DFSCode& a, const DFSCode& b) noexcept {
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        auto c = compare_tuples(a[i], b[i]);
        if (c != std::strong_ordering::equal) return c;
    }
    return a.size() <=> b.size();
}

std::uint32_t DFSCode::vertex_count() const noexcept {
    std::uint32_t n = 0;
    for (const auto& t : tuples_) n = std::max({n, t.from + 1, t.to + 1});
    return n;
}

LabelId DFSCode::vertex_label(std::uint32_t v) const {
    for (const auto& t : tuples_) {
        if (t.from == v) return t.from_label;
        if (t.to == v) return t.to_label;
    }
    throw std::out_of_range("pattern vertex not in code");
}

std::vector<LabelId> DFSCode::vertex_labels() const {
    std::vector<LabelId> labels(vertex_count(), kNoLabel);
    for (const auto& t : tuples_) {
        labels[t.from] = t.from_label;
        labels[t.to] = t.to_label;
    }
    return labels;
}

std::vector<std::uint32_t> DFSCode::rightmost_path() const {
    const auto n = vertex_count();
    if (n == 0) return {};
    std::vector<std::uint32_t> parent(n, 0);
    for (const auto& t : tuples_)
        if (t.forward()) parent[t.to] = t.from;
    std::vector<std::uint32_t> path;
    for (std::uint32_t v = n - 1;; v = parent[v]) {
        path.push_back(v);
        if (v == 0) break;
    }
    std::reverse(path.begin(), path.end());
    return path;
}

bool DFSCode::valid() const {
    if (tuples_.empty()) return false;
    if (tuples_[0].from != 0 || tuples_[0].to != 1) return false;
    std::vector<LabelId> labels;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> seen;
    for (const auto& t : tuples_) {
        const auto n = static_cast<std::uint32_t>(labels.size());
        if (t.from == t.to) return false;
        if (t.forward()) {
            if (labels.empty()) {
                labels = {t.from_label, t.to_label};
            } else {
                if (t.to != n || t.from >= n) return false;
                if (labels[t.from] != t.from_label) return false;
                labels.push_back(t.to_label);
            }
        } else {
            if (t.from >= n || t.to >= n) return false;
            if (labels[t.from] != t.from_label || labels[t.to] != t.to_label) return false;
        }
        const std::pair<std::uint32_t, std::uint32_t> key{std::min(t.from, t.to), std::max(t.from, t.to)};
        if (std::find(seen.begin(), seen.end(), key) != seen.end()) return false;
        seen.push_back(key);
    }
    return true;
}

LabeledGraph DFSCode::to_graph(GraphId id) const {
    LabeledGraph g(id);
    for (auto l : vertex_labels()) g.add_vertex(l);
    for (const auto& t : tuples_) g.add_edge(t.from, t.to, t.edge_label);
    return g;
}

namespace {

struct Arc {
    std::uint32_t to;
    LabelId label;
    std::uint32_t edge;
};

// Adjacency with edge ids, so projections can track which edges they used.
struct IndexedGraph {
    std::vector<LabelId> labels;
    std::vector<std::vector<Arc>> adj;
    std::uint32_t edge_count = 0;

    explicit IndexedGraph(const LabeledGraph& g) : labels(g.labels()), adj(g.vertex_count()) {
        for (VertexId u = 0; u < g.vertex_count(); ++u)
            for (const auto& n : g.neighbors(u))
                if (u < n.to) {
                    adj[u].push_back({n.to, n.label, edge_count});
                    adj[n.to].push_back({u, n.label, edge_count});
                    ++edge_count;
                }
    }
};

struct Projection {
    std::vector<std::int32_t> image;    // pattern vertex -> graph vertex
    std::vector<std::int32_t> inverse;  // graph vertex -> pattern vertex or -1
    std::vector<bool> used;             // per edge id
};

struct Extension {
    std::size_t projection;
    std::uint32_t graph_to;  // new graph vertex for forward, unused otherwise
    std::uint32_t edge;
};

// Greedy construction of the minimum DFS code: every projection realizing the
// current minimal prefix is kept, and each step appends the smallest tuple any
// of them can produce by rightmost extension.
class MinCodeBuilder {
public:
    explicit MinCodeBuilder(const IndexedGraph& g) : g_(g) {}

    const DFSCode& code() const noexcept { return code_; }
    bool done() const noexcept { return code_.size() == g_.edge_count; }

    /// Computes the next minimal tuple, or nullopt if no projection can grow.
    std::optional<EdgeTuple> next() {
        pending_.clear();
        if (code_.empty()) return first();
        const auto rmp = code_.rightmost_path();
        const std::uint32_t rm = rmp.back();
        const std::uint32_t fresh = code_.vertex_count();
        std::optional<EdgeTuple> best;

        auto offer = [&](const EdgeTuple& t, Extension ext) {
            if (!best || compare_tuples(t, *best) < 0) {
                best = t;
                pending_.clear();
                pending_.push_back(ext);
            } else if (compare_tuples(t, *best) == 0) {
                pending_.push_back(ext);
            }
        };

        for (std::size_t p = 0; p < projs_.size(); ++p) {
            const auto& pr = projs_[p];
            const auto grm = static_cast<std::uint32_t>(pr.image[rm]);

            // Backward: smallest rmp target with an unused closing edge.
            bool has_backward = false;
            for (std::size_t k = 0; k + 1 < rmp.size() && !has_backward; ++k) {
                const auto gt = static_cast<std::uint32_t>(pr.image[rmp[k]]);
                for (const auto& a : g_.adj[grm]) {
                    if (a.to == gt && !pr.used[a.edge]) {
                        offer({rm, rmp[k], g_.labels[grm], a.label, g_.labels[gt]}, {p, 0, a.edge});
                        has_backward = true;
                        break;
                    }
                }
            }
            if (has_backward) continue;

            // Forward: deepest rmp vertex with an unvisited neighbor.
            for (auto it = rmp.rbegin(); it != rmp.rend(); ++it) {
                const auto gv = static_cast<std::uint32_t>(pr.image[*it]);
                bool any = false;
                for (const auto& a : g_.adj[gv]) {
                    if (pr.inverse[a.to] >= 0) continue;
                    offer({*it, fresh, g_.labels[gv], a.label, g_.labels[a.to]}, {p, a.to, a.edge});
                    any = true;
                }
                if (any) break;
            }
        }
        if (best) best_ = *best;
        return best;
    }

    /// Commits the tuple produced by the last next() call.
    void commit() {
        std::vector<Projection> grown;
        grown.reserve(pending_.size());
        const bool forward = best_.forward();
        for (const auto& ext : pending_) {
            Projection pr = projs_.empty() ? Projection{} : projs_[ext.projection];
            if (code_.empty()) {
                pr = first_projection(ext);
            } else if (forward) {
                pr.image.push_back(static_cast<std::int32_t>(ext.graph_to));
                pr.inverse[ext.graph_to] = static_cast<std::int32_t>(best_.to);
            }
            pr.used[ext.edge] = true;
            grown.push_back(std::move(pr));
        }
        projs_ = std::move(grown);
        code_.push_back(best_);
    }

private:
    std::optional<EdgeTuple> first() {
        std::optional<EdgeTuple> best;
        for (std::uint32_t u = 0; u < g_.adj.size(); ++u)
            for (const auto& a : g_.adj[u]) {
                EdgeTuple t{0, 1, g_.labels[u], a.label, g_.labels[a.to]};
                if (!best || compare_tuples(t, *best) < 0) {
                    best = t;
                    pending_.clear();
                }
                if (compare_tuples(t, *best) == 0) pending_.push_back({u, a.to, a.edge});
            }
        if (best) best_ = *best;
        return best;
    }

    // For the first tuple `projection` holds the source graph vertex.
    Projection first_projection(const Extension& ext) const {
        Projection pr;
        pr.image = {static_cast<std::int32_t>(ext.projection), static_cast<std::int32_t>(ext.graph_to)};
        pr.inverse.assign(g_.labels.size(), -1);
        pr.inverse[ext.projection] = 0;
        pr.inverse[ext.graph_to] = 1;
        pr.used.assign(g_.edge_count, false);
        return pr;
    }

    const IndexedGraph& g_;
    DFSCode code_;
    std::vector<Projection> projs_;
    std::vector<Extension> pending_;
    EdgeTuple best_{};
};

bool connected(const LabeledGraph& g) {
    if (g.vertex_count() == 0) return false;
    std::vector<bool> seen(g.vertex_count(), false);
    std::vector<VertexId> stack{0};
    seen[0] = true;
    std::size_t count = 1;
    while (!stack.empty()) {
        const auto v = stack.back();
        stack.pop_back();
        for (const auto& n : g.neighbors(v))
            if (!seen[n.to]) {
                seen[n.to] = true;
                ++count;
                stack.push_back(n.to);
            }
    }
    return count == g.vertex_count();
}

}  // namespace

DFSCode min_dfs_code(const LabeledGraph& g) {
    if (g.edge_count() == 0) throw std::invalid_argument("min_dfs_code: graph has no edges");
    if (!connected(g)) throw std::invalid_argument("min_dfs_code: graph is not connected");
    const IndexedGraph ig(g);
    MinCodeBuilder builder(ig);
    while (!builder.done()) {
        if (!builder.next()) throw std::logic_error("min_dfs_code: construction stalled");
        builder.commit();
    }
    return builder.code();
}

bool is_canonical(const DFSCode& code) {
    if (!code.valid()) return false;
    const auto g = code.to_graph();
    const IndexedGraph ig(g);
    MinCodeBuilder builder(ig);
    for (std::size_t i = 0; i < code.size(); ++i) {
        auto t = builder.next();
        if (!t || *t != code[i]) return false;
        builder.commit();
    }
    return true;
}

std::string code_to_string(const DFSCode& code, const LabelTable& labels) {
    std::string s;
    for (const auto& t : code.tuples()) {
        s += '(';
        s += std::to_string(t.from + 1);
        s += ',';
        s += std::to_string(t.to + 1);
        s += ',';
        s += labels.name(t.from_label);
        s += ',';
        s += labels.name(t.edge_label);
        s += ',';
        s += labels.name(t.to_label);
        s += ')';
    }
    return s;
}

namespace {

std::uint32_t parse_vertex(std::string_view tok, std::string_view text) {
    std::uint32_t v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size() || v == 0)
        throw std::invalid_argument("malformed code string '" + std::string(text) + "'");
    return v - 1;
}

}  // namespace

DFSCode parse_code(std::string_view text, const LabelTable& labels) {
    DFSCode code;
    std::size_t pos = 0;
    auto fail = [&] { throw std::invalid_argument("malformed code string '" + std::string(text) + "'"); };
    while (pos < text.size()) {
        if (text[pos] != '(') fail();
        const auto close = text.find(')', pos);
        if (close == std::string_view::npos) fail();
        const auto body = text.substr(pos + 1, close - pos - 1);
        std::vector<std::string_view> fields;
        std::size_t start = 0;
        for (std::size_t i = 0; i <= body.size(); ++i)
            if (i == body.size() || body[i] == ',') {
                fields.push_back(body.substr(start, i - start));
                start = i + 1;
            }
        if (fields.size() != 5) fail();
        EdgeTuple t{};
        t.from = parse_vertex(fields[0], text);
        t.to = parse_vertex(fields[1], text);
        try {
            t.from_label = labels.at(fields[2]);
            t.edge_label = labels.at(fields[3]);
            t.to_label = labels.at(fields[4]);
        } catch (const std::out_of_range&) {
            fail();
        }
        code.push_back(t);
        pos = close + 1;
    }
    if (code.empty() || !code.valid()) fail();
    return code;
}

}  // namespace mrfsm
