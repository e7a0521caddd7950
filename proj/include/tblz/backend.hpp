#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "tblz/deflate.hpp"
#include "tblz/error.hpp"
#include "tblz/lz77.hpp"
#include "tblz/rle.hpp"

namespace tblz {

enum class BackendKind {
    deflate,       // cost = raw deflate stream bytes at a fixed level
    rle,           // cost = number of maximal runs
    lz77_phrases,  // cost = number of parse phrases (no encoded form)
};

struct BackendConfig {
    BackendKind kind = BackendKind::deflate;
    int level = 6;  // deflate only

    bool operator==(const BackendConfig&) const = default;

    std::string to_string() const {
        switch (kind) {
            case BackendKind::deflate: return "deflate:" + std::to_string(level);
            case BackendKind::rle: return "rle";
            case BackendKind::lz77_phrases: return "lz77";
        }
        return "?";
    }

    static BackendConfig parse(const std::string& text) {
        if (text == "rle") return {BackendKind::rle, 0};
        if (text == "lz77") return {BackendKind::lz77_phrases, 0};
        if (text == "deflate") return {BackendKind::deflate, 6};
        const std::string prefix = "deflate:";
        if (text.rfind(prefix, 0) == 0) {
            const std::string lv = text.substr(prefix.size());
            if (lv.size() == 1 && lv[0] >= '1' && lv[0] <= '9')
                return {BackendKind::deflate, lv[0] - '0'};
            throw FormatError("bad deflate level '" + lv + "' (want 1..9)");
        }
        throw FormatError("unknown backend id '" + text + "'");
    }
};

inline std::uint64_t backend_cost(const BackendConfig& cfg, std::span<const std::uint8_t> bytes) {
    switch (cfg.kind) {
        case BackendKind::deflate: return deflate_bytes(bytes, cfg.level).size();
        case BackendKind::rle: return rle_cost(bytes);
        case BackendKind::lz77_phrases: return lz77_cost(bytes);
    }
    throw ArgError("bad backend kind");
}

inline bool backend_encodable(const BackendConfig& cfg) {
    return cfg.kind != BackendKind::lz77_phrases;
}

// Decodable block payload for archives. lz77 has no encoded form.
inline std::vector<std::uint8_t> backend_encode(const BackendConfig& cfg,
                                                std::span<const std::uint8_t> bytes) {
    switch (cfg.kind) {
        case BackendKind::deflate: return deflate_bytes(bytes, cfg.level);
        case BackendKind::rle: return rle_encode(bytes);
        case BackendKind::lz77_phrases:
            throw FormatError("backend lz77 has no encoded block form");
    }
    throw ArgError("bad backend kind");
}

inline std::vector<std::uint8_t> backend_decode(const BackendConfig& cfg,
                                                std::span<const std::uint8_t> block,
                                                std::uint64_t expected_size) {
    switch (cfg.kind) {
        case BackendKind::deflate: return inflate_bytes(block, expected_size);
        case BackendKind::rle: {
            auto out = rle_decode(block);
            if (out.size() != expected_size) throw FormatError("run-encoded block has wrong length");
            return out;
        }
        case BackendKind::lz77_phrases:
            throw FormatError("backend lz77 has no encoded block form");
    }
    throw ArgError("bad backend kind");
}

}  // namespace tblz
