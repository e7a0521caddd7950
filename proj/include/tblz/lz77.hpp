#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace tblz {

inline std::vector<std::uint32_t> suffix_array(std::span<const std::uint8_t> s) {
    const std::size_t n = s.size();
    std::vector<std::uint32_t> sa(n);
    if (n == 0) return sa;
    std::vector<std::int64_t> rank(n), next(n);
    for (std::size_t i = 0; i < n; ++i) {
        sa[i] = static_cast<std::uint32_t>(i);
        rank[i] = s[i];
    }
    for (std::size_t k = 1; k < n || k == 1; k *= 2) {
        auto key = [&](std::uint32_t a) {
            return std::pair<std::int64_t, std::int64_t>(rank[a], a + k < n ? rank[a + k] : -1);
        };
        std::sort(sa.begin(), sa.end(), [&](std::uint32_t a, std::uint32_t b) { return key(a) < key(b); });
        next[sa[0]] = 0;
        for (std::size_t i = 1; i < n; ++i)
            next[sa[i]] = next[sa[i - 1]] + (key(sa[i - 1]) < key(sa[i]) ? 1 : 0);
        rank = next;
        if (rank[sa.back()] == static_cast<std::int64_t>(n) - 1) break;
    }
    return sa;
}

// lcp[i] = longest common prefix of suffixes sa[i] and sa[i+1] (Kasai).
inline std::vector<std::uint32_t> lcp_array(std::span<const std::uint8_t> s,
                                            const std::vector<std::uint32_t>& sa) {
    const std::size_t n = s.size();
    std::vector<std::uint32_t> rank(n), lcp(n > 0 ? n - 1 : 0, 0);
    for (std::size_t i = 0; i < n; ++i) rank[sa[i]] = static_cast<std::uint32_t>(i);
    std::size_t h = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (rank[i] > 0) {
            const std::size_t j = sa[rank[i] - 1];
            while (i + h < n && j + h < n && s[i + h] == s[j + h]) ++h;
            lcp[rank[i] - 1] = static_cast<std::uint32_t>(h);
            if (h > 0) --h;
        } else {
            h = 0;
        }
    }
    return lcp;
}

// lpf[i] = length of the longest factor starting at i that also occurs starting
// at some earlier position (occurrences may overlap position i).
inline std::vector<std::uint32_t> longest_previous_factor(std::span<const std::uint8_t> s) {
    const std::size_t n = s.size();
    std::vector<std::uint32_t> lpf(n, 0);
    if (n == 0) return lpf;
    const auto sa = suffix_array(s);
    const auto lcp = lcp_array(s, sa);

    // One directional pass: for every rank, the best lcp against any
    // earlier-position suffix on the chosen side of the suffix array.
    // Candidates form an antichain (position and current-lcp both ascending),
    // so clamping by an incoming lcp collapses a tail and queries are a
    // binary search for the last candidate left of the query position.
    struct Cand {
        std::uint32_t pos;
        std::uint32_t val;
    };
    const std::uint32_t inf = std::numeric_limits<std::uint32_t>::max();
    auto pass = [&](bool forward) {
        std::vector<Cand> cands;
        for (std::size_t step = 0; step < n; ++step) {
            const std::size_t r = forward ? step : n - 1 - step;
            if (step > 0) {
                const std::uint32_t l = forward ? lcp[r - 1] : lcp[r];
                std::uint32_t min_pos = inf;
                while (!cands.empty() && cands.back().val > l) {
                    min_pos = std::min(min_pos, cands.back().pos);
                    cands.pop_back();
                }
                if (min_pos != inf) cands.push_back({min_pos, l});
            }
            const std::uint32_t q = sa[r];
            auto it = std::lower_bound(cands.begin(), cands.end(), q,
                                       [](const Cand& c, std::uint32_t p) { return c.pos < p; });
            if (it != cands.begin()) {
                const std::uint32_t best = std::prev(it)->val;
                lpf[q] = std::max(lpf[q], best);
            }
            while (!cands.empty() && cands.back().pos > q) cands.pop_back();
            cands.push_back({q, inf});
        }
    };
    pass(true);
    pass(false);
    return lpf;
}

// Greedy left-to-right parse: each phrase is the longest prefix of the
// remainder whose head (phrase minus final byte) already occurs starting
// earlier, plus one fresh byte; the final phrase may be closed by the end of
// the input instead. Returns phrase lengths in order; they partition s.
inline std::vector<std::uint64_t> lz77_parse(std::span<const std::uint8_t> s) {
    const std::size_t n = s.size();
    std::vector<std::uint64_t> phrases;
    if (n == 0) return phrases;
    const auto lpf = longest_previous_factor(s);
    std::size_t i = 0;
    while (i < n) {
        const std::size_t t = lpf[i];
        const std::size_t len = (i + t < n) ? t + 1 : n - i;
        phrases.push_back(len);
        i += len;
    }
    return phrases;
}

inline std::uint64_t lz77_cost(std::span<const std::uint8_t> s) {
    return lz77_parse(s).size();
}

}  // namespace tblz
