#pragma once

#include <zlib.h>

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tblz/error.hpp"

namespace tblz {

// Raw deflate stream (no zlib/gzip wrapper), fixed parameters so the byte
// output is a pure function of (input, level).
inline std::vector<std::uint8_t> deflate_bytes(std::span<const std::uint8_t> in, int level) {
    z_stream zs{};
    if (deflateInit2(&zs, level, Z_DEFLATED, -15, 8, Z_DEFAULT_STRATEGY) != Z_OK)
        throw Error(Errc::io, "deflateInit2 failed");
    std::vector<std::uint8_t> out(deflateBound(&zs, static_cast<uLong>(in.size())));
    zs.next_in = const_cast<Bytef*>(in.data());
    zs.avail_in = static_cast<uInt>(in.size());
    zs.next_out = out.data();
    zs.avail_out = static_cast<uInt>(out.size());
    const int rc = deflate(&zs, Z_FINISH);
    if (rc != Z_STREAM_END) {
        deflateEnd(&zs);
        throw Error(Errc::io, "deflate did not finish (rc " + std::to_string(rc) + ")");
    }
    out.resize(zs.total_out);
    deflateEnd(&zs);
    return out;
}

inline std::vector<std::uint8_t> inflate_bytes(std::span<const std::uint8_t> in,
                                               std::uint64_t expected_size) {
    // One spare byte so zlib can signal stream end even for empty payloads.
    std::vector<std::uint8_t> out(expected_size + 1);
    z_stream zs{};
    if (inflateInit2(&zs, -15) != Z_OK) throw Error(Errc::io, "inflateInit2 failed");
    zs.next_in = const_cast<Bytef*>(in.data());
    zs.avail_in = static_cast<uInt>(in.size());
    zs.next_out = out.data();
    zs.avail_out = static_cast<uInt>(out.size());
    const int rc = inflate(&zs, Z_FINISH);
    const auto produced = zs.total_out;
    inflateEnd(&zs);
    if (rc != Z_STREAM_END || produced != expected_size)
        throw FormatError("deflate stream corrupt or wrong length");
    out.resize(expected_size);
    return out;
}

inline std::uint32_t crc32_bytes(std::span<const std::uint8_t> data) {
    return static_cast<std::uint32_t>(
        ::crc32(0L, data.empty() ? Z_NULL : data.data(), static_cast<uInt>(data.size())));
}

}  // namespace tblz
