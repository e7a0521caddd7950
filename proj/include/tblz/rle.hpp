#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "tblz/error.hpp"

namespace tblz {

struct Run {
    std::uint8_t byte;
    std::uint64_t len;
    bool operator==(const Run&) const = default;
};

// Maximal runs, left to right. Empty input -> no runs.
inline std::vector<Run> rle_parse(std::span<const std::uint8_t> s) {
    std::vector<Run> runs;
    std::size_t i = 0;
    while (i < s.size()) {
        std::size_t j = i + 1;
        while (j < s.size() && s[j] == s[i]) ++j;
        runs.push_back({s[i], j - i});
        i = j;
    }
    return runs;
}

inline std::uint64_t rle_cost(std::span<const std::uint8_t> s) {
    if (s.empty()) return 0;
    std::uint64_t runs = 1;
    for (std::size_t i = 1; i < s.size(); ++i) runs += (s[i] != s[i - 1]);
    return runs;
}

// Decodable run encoding for archive blocks: byte + LEB128 run length.
inline std::vector<std::uint8_t> rle_encode(std::span<const std::uint8_t> s) {
    std::vector<std::uint8_t> out;
    for (const auto& r : rle_parse(s)) {
        out.push_back(r.byte);
        auto len = r.len;
        while (len >= 0x80) {
            out.push_back(static_cast<std::uint8_t>(len & 0x7f) | 0x80);
            len >>= 7;
        }
        out.push_back(static_cast<std::uint8_t>(len));
    }
    return out;
}

inline std::vector<std::uint8_t> rle_decode(std::span<const std::uint8_t> enc) {
    std::vector<std::uint8_t> out;
    std::size_t i = 0;
    while (i < enc.size()) {
        const std::uint8_t byte = enc[i++];
        std::uint64_t len = 0;
        int shift = 0;
        for (;;) {
            if (i >= enc.size()) throw FormatError("run encoding truncated inside length varint");
            const std::uint8_t b = enc[i++];
            len |= static_cast<std::uint64_t>(b & 0x7f) << shift;
            if (!(b & 0x80)) break;
            shift += 7;
            if (shift > 63) throw FormatError("run length varint too long");
        }
        if (len == 0) throw FormatError("zero-length run in encoding");
        out.insert(out.end(), len, byte);
    }
    return out;
}

}  // namespace tblz
