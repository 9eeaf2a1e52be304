#include "mrfsm/mining_tasks.hpp"

#include <algorithm>
#include <set>

namespace mrfsm {

PartitionStatics build_statics(const GraphDataset& graphs) {
    PartitionStatics s;
    std::map<EdgeType, std::vector<VertexId>> local;
    for (const auto& g : graphs.graphs()) {
        local.clear();
        for (VertexId u = 0; u < g.vertex_count(); ++u)
            for (const auto& n : g.neighbors(u)) {
                if (u > n.to) continue;
                const LabelId lu = g.label(u), lv = g.label(n.to);
                const auto t = EdgeType::normalized(lu, n.label, lv);
                auto& flat = local[t];
                if (lu <= lv) flat.insert(flat.end(), {u, n.to});
                if (lv <= lu) flat.insert(flat.end(), {n.to, u});
            }
        for (auto& [t, flat] : local) {
            auto it = s.edge_ol.try_emplace(t, OccurrenceList(2)).first;
            it->second.append(g.id(), std::move(flat));
        }
    }
    for (const auto& [t, ol] : s.edge_ol) {
        s.extensions[t.from].emplace_back(t.edge, t.to);
        s.extensions[t.to].emplace_back(t.edge, t.from);
    }
    for (auto& [label, choices] : s.extensions) {
        std::sort(choices.begin(), choices.end());
        choices.erase(std::unique(choices.begin(), choices.end()), choices.end());
    }
    return s;
}

std::string serialize_statics(const PartitionStatics& statics) {
    ByteWriter w;
    w.u32(static_cast<std::uint32_t>(statics.extensions.size()));
    for (const auto& [label, choices] : statics.extensions) {
        w.u32(label);
        w.u32(static_cast<std::uint32_t>(choices.size()));
        for (const auto& [e, b] : choices) {
            w.u32(e);
            w.u32(b);
        }
    }
    w.u32(static_cast<std::uint32_t>(statics.edge_ol.size()));
    for (const auto& [t, ol] : statics.edge_ol) {
        w.u32(t.from);
        w.u32(t.edge);
        w.u32(t.to);
        w.u32(static_cast<std::uint32_t>(ol.entries().size()));
        for (const auto& e : ol.entries()) {
            w.u32(e.graph);
            w.u32(static_cast<std::uint32_t>(e.vertices.size()));
            for (auto v : e.vertices) w.u32(v);
        }
    }
    return w.take();
}

PartitionStatics deserialize_statics(std::string_view bytes) {
    ByteReader r(bytes);
    PartitionStatics s;
    const auto nlabels = r.u32();
    for (std::uint32_t i = 0; i < nlabels; ++i) {
        const auto label = r.u32();
        const auto n = r.u32();
        if (n > bytes.size()) r.fail("implausible extension count");
        auto& choices = s.extensions[label];
        for (std::uint32_t k = 0; k < n; ++k) {
            const auto e = r.u32();
            choices.emplace_back(e, r.u32());
        }
    }
    const auto ntypes = r.u32();
    for (std::uint32_t i = 0; i < ntypes; ++i) {
        EdgeType t{};
        t.from = r.u32();
        t.edge = r.u32();
        t.to = r.u32();
        OccurrenceList ol(2);
        const auto nentries = r.u32();
        for (std::uint32_t k = 0; k < nentries; ++k) {
            const auto graph = r.u32();
            const auto len = r.u32();
            if (len == 0 || len % 2 != 0 || len > bytes.size()) r.fail("bad edge occurrence length");
            std::vector<VertexId> flat(len);
            for (auto& v : flat) v = r.u32();
            if (!ol.entries().empty() && ol.entries().back().graph >= graph) r.fail("graph ids out of order");
            ol.append(graph, std::move(flat));
        }
        s.edge_ol.emplace(t, std::move(ol));
    }
    if (!r.at_end()) r.fail("trailing bytes in statics");
    return s;
}

std::vector<CandidateExtension> generate_candidates(const PatternObject& parent, const EdgeExtensionMap& eem) {
    std::vector<CandidateExtension> out;
    const auto& code = parent.code;
    const auto labels = code.vertex_labels();
    const auto& rmp = parent.rmp;
    const std::uint32_t rm = rmp.back();
    const std::uint32_t fresh = code.vertex_count();

    std::set<std::uint32_t> rm_adjacent;
    for (const auto& t : code.tuples()) {
        if (t.from == rm) rm_adjacent.insert(t.to);
        if (t.to == rm) rm_adjacent.insert(t.from);
    }

    auto choices_of = [&](LabelId l) -> const std::vector<std::pair<LabelId, LabelId>>* {
        auto it = eem.find(l);
        return it == eem.end() ? nullptr : &it->second;
    };

    if (const auto* from_rm = choices_of(labels[rm])) {
        for (std::size_t k = 0; k + 1 < rmp.size(); ++k) {
            const auto target = rmp[k];
            if (rm_adjacent.count(target)) continue;
            for (const auto& [le, lt] : *from_rm) {
                if (lt != labels[target]) continue;
                Extension ext{Extension::Kind::backward, rm, le, kNoLabel, target};
                DFSCode child = code;
                child.push_back({rm, target, labels[rm], le, lt});
                out.push_back({ext, std::move(child)});
            }
        }
    }

    for (auto it = rmp.rbegin(); it != rmp.rend(); ++it) {
        const auto* choices = choices_of(labels[*it]);
        if (!choices) continue;
        for (const auto& [le, lb] : *choices) {
            Extension ext{Extension::Kind::forward, *it, le, lb, 0};
            DFSCode child = code;
            child.push_back({*it, fresh, labels[*it], le, lb});
            out.push_back({ext, std::move(child)});
        }
    }
    return out;
}

std::vector<Emission> mapper_preparation(const PartitionContext& ctx, const LabelTable& labels) {
    std::vector<Emission> out;
    out.reserve(ctx.statics.edge_ol.size());
    for (const auto& [t, ol] : ctx.statics.edge_ol) {
        DFSCode code({EdgeTuple{0, 1, t.from, t.edge, t.to}});
        auto key = code_to_string(code, labels);
        out.push_back({std::move(key), make_pattern_object(std::move(code), ctx.partition_id, ol)});
    }
    return out;
}

std::vector<KVRecord> reducer_preparation(const std::string& key, std::vector<std::string> values) {
    std::vector<KVRecord> out;
    out.reserve(values.size());
    for (auto& v : values) out.push_back({key, std::move(v)});
    return out;
}

std::vector<Emission> mapper_mining(const PatternObject& parent, const PartitionContext& ctx,
                                    const LabelTable& labels, MapCounters& counters) {
    std::vector<Emission> out;
    for (auto& cand : generate_candidates(parent, ctx.statics.extensions)) {
        ++counters.candidates_generated;
        if (!is_canonical(cand.code)) continue;
        ++counters.canonical_survivors;
        auto ol = extend_ol(parent, cand.extension, ctx.statics.edge_ol, ctx.index);
        if (ol.empty()) continue;
        ++counters.emitted;
        auto key = code_to_string(cand.code, labels);
        out.push_back({std::move(key), make_pattern_object(std::move(cand.code), ctx.partition_id, std::move(ol))});
    }
    return out;
}

ReduceOutcome reducer_mining(const std::string& key, std::vector<std::string> values, std::uint32_t threshold) {
    ReduceOutcome out;
    for (const auto& v : values) out.support += peek_value_header(v).local_support;
    if (out.support < threshold) return out;
    out.frequent = true;
    out.staged.reserve(values.size());
    for (auto& v : values) out.staged.push_back({key, std::move(v)});
    return out;
}

}  // namespace mrfsm
