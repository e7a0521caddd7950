#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "tblz/error.hpp"

namespace tblz {

// Minimum-cost perfect matching on a square matrix (shortest augmenting paths
// with potentials, O(n^3)). Entries set to forbidden_cost() are never chosen
// as long as any complete matching avoids them.
inline constexpr std::int64_t forbidden_cost() { return std::int64_t{1} << 50; }

inline std::uint64_t min_assignment(const std::vector<std::vector<std::int64_t>>& a) {
    const std::size_t n = a.size();
    if (n == 0) return 0;
    for (const auto& row : a)
        if (row.size() != n) throw ArgError("assignment matrix must be square");
    const std::int64_t inf = std::numeric_limits<std::int64_t>::max() / 4;
    std::vector<std::int64_t> u(n + 1, 0), v(n + 1, 0);
    std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
    for (std::size_t i = 1; i <= n; ++i) {
        p[0] = i;
        std::size_t j0 = 0;
        std::vector<std::int64_t> minv(n + 1, inf);
        std::vector<bool> used(n + 1, false);
        do {
            used[j0] = true;
            const std::size_t i0 = p[j0];
            std::int64_t delta = inf;
            std::size_t j1 = 0;
            for (std::size_t j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const std::int64_t cur = a[i0 - 1][j - 1] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const std::size_t j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0 != 0);
    }
    std::uint64_t total = 0;
    for (std::size_t j = 1; j <= n; ++j) total += static_cast<std::uint64_t>(a[p[j] - 1][j - 1]);
    return total;
}

}  // namespace tblz
