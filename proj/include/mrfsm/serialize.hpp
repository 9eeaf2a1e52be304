#ifndef MRFSM_SERIALIZE_HPP_
#define MRFSM_SERIALIZE_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mrfsm/embedding.hpp"

namespace mrfsm {

inline constexpr std::uint8_t kRecordVersion = 1;
inline constexpr std::uint8_t kValueVersion = 1;

class DecodeError : public std::runtime_error {
public:
    DecodeError(const std::string& what, std::size_t offset)
        : std::runtime_error(what + " at offset " + std::to_string(offset)), offset_(offset) {}
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

/// Little-endian fixed-width encoder.
class ByteWriter {
public:
    void u8(std::uint8_t v) { buf_.push_back(static_cast<char>(v)); }
    void u32(std::uint32_t v) {
        for (int i = 0; i < 4; ++i) buf_.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
    }
    void u64(std::uint64_t v) {
        for (int i = 0; i < 8; ++i) buf_.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
    }
    void bytes(std::string_view b) {
        u32(static_cast<std::uint32_t>(b.size()));
        buf_.append(b);
    }
    void raw(std::string_view b) { buf_.append(b); }

    std::string& buffer() noexcept { return buf_; }
    std::string take() noexcept { return std::move(buf_); }

private:
    std::string buf_;
};

/// Bounds-checked reader; every failure reports the absolute offset.
class ByteReader {
public:
    explicit ByteReader(std::string_view data, std::size_t base_offset = 0) : data_(data), base_(base_offset) {}

    std::uint8_t u8() {
        need(1);
        return static_cast<std::uint8_t>(data_[pos_++]);
    }
    std::uint32_t u32() {
        need(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= std::uint32_t(static_cast<std::uint8_t>(data_[pos_ + i])) << (8 * i);
        pos_ += 4;
        return v;
    }
    std::uint64_t u64() {
        need(8);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= std::uint64_t(static_cast<std::uint8_t>(data_[pos_ + i])) << (8 * i);
        pos_ += 8;
        return v;
    }
    std::string_view bytes() {
        const auto n = u32();
        need(n);
        auto s = data_.substr(pos_, n);
        pos_ += n;
        return s;
    }

    bool at_end() const noexcept { return pos_ == data_.size(); }
    std::size_t offset() const noexcept { return base_ + pos_; }
    [[noreturn]] void fail(const std::string& what) const { throw DecodeError(what, offset()); }

private:
    void need(std::size_t n) const {
        if (data_.size() - pos_ < n) fail("truncated data");
    }

    std::string_view data_;
    std::size_t base_;
    std::size_t pos_ = 0;
};

/// A staged key-value pair: canonical code string and serialized value.
struct KVRecord {
    std::string key;
    std::string value;
    bool operator==(const KVRecord&) const = default;
};

void append_record(std::string& out, const KVRecord& record);
/// Optionally reports each record's starting offset within `data`.
std::vector<KVRecord> decode_records(std::string_view data, std::vector<std::size_t>* offsets = nullptr);

/// Whole-file framing: magic, codec byte, raw length, payload (optionally zlib).
std::string frame_file(std::string_view payload, bool compress);
std::string unframe_file(std::string_view file_bytes);

/// Writes via a temporary file and rename, so readers never see partial files.
void write_file_atomic(const std::filesystem::path& path, std::string_view bytes);
std::string read_file(const std::filesystem::path& path);

void write_record_file(const std::filesystem::path& path, const std::vector<KVRecord>& records, bool compress);
/// Errors carry the file name and byte offset of the bad record.
std::vector<KVRecord> read_record_file(const std::filesystem::path& path, std::vector<std::size_t>* offsets = nullptr);

struct ValueHeader {
    std::uint8_t version;
    std::uint32_t partition_id;
    std::uint32_t local_support;
    bool has_statics;
};

/// Reads the fixed-size prefix of a serialized pattern value.
ValueHeader peek_value_header(std::string_view value);

std::string serialize_pattern(const PatternObject& po, std::optional<std::string_view> statics_bundle = std::nullopt);

struct DecodedValue {
    PatternObject pattern;
    std::optional<std::string> statics_bundle;
};

DecodedValue decode_value(std::string_view value);
PatternObject deserialize_pattern(std::string_view value);

}  // namespace mrfsm

#endif  // MRFSM_SERIALIZE_HPP_
