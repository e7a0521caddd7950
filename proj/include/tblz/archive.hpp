#pragma once

#include <cstdint>
#include <cstring>
#include <span>
#include <string>
#include <vector>

#include "tblz/deflate.hpp"
#include "tblz/plan.hpp"
#include "tblz/table.hpp"

namespace tblz {

// Container layout (all integers little-endian):
//   "TBZ1"  u8 version=1  u32 record_len  u64 row_count
//   u32 plan_len  plan text (UTF-8, same format plan_save writes)
//   u32 crc32 of the original table bytes
//   then one block per class: u64 payload_len, payload bytes
inline constexpr char archive_magic[4] = {'T', 'B', 'Z', '1'};
inline constexpr std::uint8_t archive_version = 1;

namespace detail {

inline void put_u32(Bytes& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

inline void put_u64(Bytes& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

struct Reader {
    std::span<const std::uint8_t> data;
    std::size_t at = 0;

    void need(std::size_t n, const char* what) {
        if (at + n > data.size()) throw FormatError(std::string("archive too short reading ") + what);
    }
    std::uint8_t u8(const char* what) {
        need(1, what);
        return data[at++];
    }
    std::uint32_t u32(const char* what) {
        need(4, what);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(data[at + i]) << (8 * i);
        at += 4;
        return v;
    }
    std::uint64_t u64(const char* what) {
        need(8, what);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(data[at + i]) << (8 * i);
        at += 8;
        return v;
    }
    std::span<const std::uint8_t> bytes(std::size_t n, const char* what) {
        need(n, what);
        auto s = data.subspan(at, n);
        at += n;
        return s;
    }
};

}  // namespace detail

inline Bytes archive_compress(const Table& t, const Plan& plan) {
    if (plan.record_len != t.record_len())
        throw FormatError("plan is for record length " + std::to_string(plan.record_len) +
                          ", table has " + std::to_string(t.record_len()));
    validate_partition(plan.partition, t.record_len());
    if (!backend_encodable(plan.backend))
        throw FormatError("backend " + plan.backend.to_string() + " cannot produce archive blocks");

    Bytes out;
    out.insert(out.end(), archive_magic, archive_magic + 4);
    out.push_back(archive_version);
    detail::put_u32(out, t.record_len());
    detail::put_u64(out, t.row_count());
    const std::string plan_text = plan_to_text(plan);
    detail::put_u32(out, static_cast<std::uint32_t>(plan_text.size()));
    out.insert(out.end(), plan_text.begin(), plan_text.end());
    detail::put_u32(out, crc32_bytes(t.data()));
    for (const auto& cls : plan.partition.classes()) {
        const Bytes proj = project_rowmajor(t, cls);
        const Bytes payload = backend_encode(plan.backend, proj);
        detail::put_u64(out, payload.size());
        out.insert(out.end(), payload.begin(), payload.end());
    }
    return out;
}

struct ArchiveInfo {
    std::uint8_t version = 0;
    std::uint32_t record_len = 0;
    std::uint64_t row_count = 0;
    std::uint32_t crc = 0;
    Plan plan;
    std::vector<std::uint64_t> block_sizes;
};

namespace detail {

inline ArchiveInfo read_header(Reader& r) {
    const auto magic = r.bytes(4, "magic");
    if (std::memcmp(magic.data(), archive_magic, 4) != 0) throw FormatError("not an archive (bad magic)");
    ArchiveInfo info;
    info.version = r.u8("version");
    if (info.version != archive_version)
        throw FormatError("unsupported archive version " + std::to_string(info.version));
    info.record_len = r.u32("record length");
    info.row_count = r.u64("row count");
    const std::uint32_t plan_len = r.u32("plan length");
    const auto plan_bytes = r.bytes(plan_len, "plan text");
    info.plan = plan_from_text(std::string(plan_bytes.begin(), plan_bytes.end()));
    if (info.plan.record_len != info.record_len)
        throw FormatError("archive record length disagrees with its plan");
    info.crc = r.u32("crc");
    return info;
}

}  // namespace detail

// Header plus block sizes without decoding payloads.
inline ArchiveInfo archive_inspect(std::span<const std::uint8_t> bytes) {
    detail::Reader r{bytes};
    ArchiveInfo info = detail::read_header(r);
    const auto classes = info.plan.partition.classes();
    for (std::size_t ci = 0; ci < classes.size(); ++ci) {
        const std::uint64_t len = r.u64("block length");
        if (r.at + len > r.data.size()) throw TruncationError(ci);
        r.at += len;
        info.block_sizes.push_back(len);
    }
    if (r.at != r.data.size()) throw FormatError("trailing bytes after final block");
    return info;
}

inline Table archive_decompress(std::span<const std::uint8_t> bytes) {
    detail::Reader r{bytes};
    const ArchiveInfo info = detail::read_header(r);
    Bytes data(info.row_count * info.record_len, 0);
    const auto classes = info.plan.partition.classes();
    for (std::size_t ci = 0; ci < classes.size(); ++ci) {
        const std::uint64_t len = r.u64("block length");
        if (r.at + len > r.data.size()) throw TruncationError(ci);
        const auto payload = r.bytes(static_cast<std::size_t>(len), "block payload");
        const auto& cols = classes[ci];
        const Bytes proj = backend_decode(info.plan.backend, payload, info.row_count * cols.size());
        for (std::uint64_t row = 0; row < info.row_count; ++row)
            for (std::size_t k = 0; k < cols.size(); ++k)
                data[row * info.record_len + cols[k]] = proj[row * cols.size() + k];
    }
    if (r.at != r.data.size()) throw FormatError("trailing bytes after final block");
    const std::uint32_t crc = crc32_bytes(data);
    if (crc != info.crc) throw CrcError(info.crc, crc);
    return Table(info.record_len, std::move(data));
}

}  // namespace tblz
