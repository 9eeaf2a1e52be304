#include "mrfsm/serialize.hpp"

#include <zlib.h>

#include <fstream>
#include <iterator>

namespace mrfsm {

namespace fs = std::filesystem;

namespace {

constexpr std::string_view kMagic = "MRKV";
constexpr std::uint8_t kCodecRaw = 0;
constexpr std::uint8_t kCodecZlib = 1;

}  // namespace

void append_record(std::string& out, const KVRecord& record) {
    ByteWriter w;
    w.u8(kRecordVersion);
    w.bytes(record.key);
    w.bytes(record.value);
    out.append(w.buffer());
}

std::vector<KVRecord> decode_records(std::string_view data, std::vector<std::size_t>* offsets) {
    std::vector<KVRecord> records;
    ByteReader r(data);
    while (!r.at_end()) {
        const auto start = r.offset();
        if (offsets) offsets->push_back(start);
        const auto version = r.u8();
        if (version != kRecordVersion)
            throw DecodeError("unsupported record version " + std::to_string(version), start);
        KVRecord rec;
        rec.key = std::string(r.bytes());
        rec.value = std::string(r.bytes());
        records.push_back(std::move(rec));
    }
    return records;
}

std::string frame_file(std::string_view payload, bool compress) {
    ByteWriter w;
    w.raw(kMagic);
    if (!compress) {
        w.u8(kCodecRaw);
        w.u64(payload.size());
        w.raw(payload);
        return w.take();
    }
    uLongf bound = compressBound(static_cast<uLong>(payload.size()));
    std::string packed(bound, '\0');
    if (compress2(reinterpret_cast<Bytef*>(packed.data()), &bound, reinterpret_cast<const Bytef*>(payload.data()),
                  static_cast<uLong>(payload.size()), Z_DEFAULT_COMPRESSION) != Z_OK)
        throw std::runtime_error("zlib compression failed");
    packed.resize(bound);
    w.u8(kCodecZlib);
    w.u64(payload.size());
    w.raw(packed);
    return w.take();
}

std::string unframe_file(std::string_view file_bytes) {
    if (file_bytes.substr(0, kMagic.size()) != kMagic) throw DecodeError("bad file magic", 0);
    ByteReader r(file_bytes.substr(kMagic.size()), kMagic.size());
    const auto codec = r.u8();
    const auto size = r.u64();
    const auto header = kMagic.size() + 9;
    auto payload = file_bytes.substr(header);
    if (codec == kCodecRaw) {
        if (payload.size() != size) throw DecodeError("payload length mismatch", header);
        return std::string(payload);
    }
    if (codec != kCodecZlib) throw DecodeError("unknown codec " + std::to_string(codec), kMagic.size());
    std::string out(size, '\0');
    uLongf out_len = static_cast<uLongf>(size);
    if (uncompress(reinterpret_cast<Bytef*>(out.data()), &out_len, reinterpret_cast<const Bytef*>(payload.data()),
                   static_cast<uLong>(payload.size())) != Z_OK ||
        out_len != size)
        throw DecodeError("corrupt compressed payload", header);
    return out;
}

void write_file_atomic(const fs::path& path, std::string_view bytes) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        out.flush();
        if (!out) throw std::runtime_error("write failed for " + tmp.string());
    }
    fs::rename(tmp, path);
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_record_file(const fs::path& path, const std::vector<KVRecord>& records, bool compress) {
    std::string payload;
    for (const auto& r : records) append_record(payload, r);
    write_file_atomic(path, frame_file(payload, compress));
}

std::vector<KVRecord> read_record_file(const fs::path& path, std::vector<std::size_t>* offsets) {
    try {
        return decode_records(unframe_file(read_file(path)), offsets);
    } catch (const DecodeError& e) {
        throw DecodeError(path.string() + ": " + e.what(), e.offset());
    }
}

ValueHeader peek_value_header(std::string_view value) {
    ByteReader r(value);
    ValueHeader h{};
    h.version = r.u8();
    if (h.version != kValueVersion) throw DecodeError("unsupported value version " + std::to_string(h.version), 0);
    h.partition_id = r.u32();
    h.local_support = r.u32();
    h.has_statics = (r.u8() & 1u) != 0;
    return h;
}

std::string serialize_pattern(const PatternObject& po, std::optional<std::string_view> statics_bundle) {
    ByteWriter w;
    w.u8(kValueVersion);
    w.u32(po.partition_id);
    w.u32(po.local_support);
    w.u8(statics_bundle ? 1 : 0);
    w.u32(static_cast<std::uint32_t>(po.code.size()));
    for (const auto& t : po.code.tuples()) {
        w.u32(t.from);
        w.u32(t.to);
        w.u32(t.from_label);
        w.u32(t.edge_label);
        w.u32(t.to_label);
    }
    w.u32(po.ol.width());
    w.u32(static_cast<std::uint32_t>(po.ol.entries().size()));
    for (const auto& e : po.ol.entries()) {
        w.u32(e.graph);
        w.u32(static_cast<std::uint32_t>(po.ol.embeddings_in(e)));
        for (auto v : e.vertices) w.u32(v);
    }
    if (statics_bundle) w.bytes(*statics_bundle);
    return w.take();
}

DecodedValue decode_value(std::string_view value) {
    ByteReader r(value);
    const auto version = r.u8();
    if (version != kValueVersion) r.fail("unsupported value version " + std::to_string(version));
    const auto partition_id = r.u32();
    const auto support = r.u32();
    const auto flags = r.u8();

    const auto ntuples = r.u32();
    if (ntuples == 0 || ntuples > value.size()) r.fail("implausible tuple count");
    std::vector<EdgeTuple> tuples(ntuples);
    for (auto& t : tuples) t = {r.u32(), r.u32(), r.u32(), r.u32(), r.u32()};
    DFSCode code(std::move(tuples));
    if (!code.valid()) r.fail("invalid DFS code");

    const auto width = r.u32();
    if (width != code.vertex_count()) r.fail("embedding width does not match code");
    const auto nentries = r.u32();
    OccurrenceList ol(width);
    for (std::uint32_t i = 0; i < nentries; ++i) {
        const auto graph = r.u32();
        const auto count = r.u32();
        if (count == 0 || static_cast<std::uint64_t>(count) * width * 4 > value.size()) r.fail("bad embedding count");
        std::vector<VertexId> flat(static_cast<std::size_t>(count) * width);
        for (auto& v : flat) v = r.u32();
        if (!ol.entries().empty() && ol.entries().back().graph >= graph) r.fail("graph ids out of order");
        ol.append(graph, std::move(flat));
    }
    if (local_support(ol) != support) r.fail("support does not match occurrence list");

    DecodedValue out{make_pattern_object(std::move(code), partition_id, std::move(ol)), std::nullopt};
    if (flags & 1u) out.statics_bundle = std::string(r.bytes());
    if (!r.at_end()) r.fail("trailing bytes in value");
    return out;
}

PatternObject deserialize_pattern(std::string_view value) { return decode_value(value).pattern; }

}  // namespace mrfsm
