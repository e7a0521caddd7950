#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <utility>
#include <vector>

#include "tblz/backend.hpp"
#include "tblz/theory/gadgets.hpp"

namespace tblz::theory {

inline std::uint64_t schedule_cost(const std::vector<Bytes>& strings, const Schedule& sched,
                                   const BackendConfig& backend) {
    validate_schedule(strings.size(), sched);
    std::uint64_t total = 0;
    for (const auto& batch : sched) total += backend_cost(backend, batch_bytes(strings, batch));
    return total;
}

// Exhaustive minimum over every schedule (every way to split the strings into
// an unordered collection of ordered batches). Enumerated as permutations
// times cut masks with canonical dedup; capped at six strings, where there
// are 4051 distinct schedules.
inline std::pair<Schedule, std::uint64_t> brute_force_schedule(const std::vector<Bytes>& strings,
                                                               const BackendConfig& backend) {
    const std::size_t n = strings.size();
    if (n == 0) return {Schedule{}, 0};
    if (n > 6) throw ArgError("schedule brute force capped at 6 strings");

    std::vector<std::uint32_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = static_cast<std::uint32_t>(i);

    std::set<Schedule> seen;
    Schedule best_sched;
    std::uint64_t best = 0;
    bool have = false;
    do {
        const std::uint64_t masks = 1ull << (n - 1);
        for (std::uint64_t m = 0; m < masks; ++m) {
            Schedule sched;
            Batch cur;
            for (std::size_t k = 0; k < n; ++k) {
                cur.push_back(perm[k]);
                if (k + 1 == n || (m >> k) & 1) {
                    sched.push_back(cur);
                    cur.clear();
                }
            }
            Schedule canon = sched;
            std::sort(canon.begin(), canon.end());
            if (!seen.insert(canon).second) continue;
            const std::uint64_t cost = schedule_cost(strings, sched, backend);
            if (!have || cost < best) {
                have = true;
                best = cost;
                best_sched = sched;
            }
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return {best_sched, best};
}

inline std::uint64_t count_all_schedules(std::size_t n) {
    // sets of nonempty ordered lists over n labeled items
    if (n == 0) return 1;
    std::vector<std::uint64_t> a(n + 1, 0);
    a[0] = 1;
    if (n >= 1) a[1] = 1;
    for (std::size_t k = 2; k <= n; ++k)
        a[k] = (2 * k - 1) * a[k - 1] - (k - 1) * (k - 2) * a[k - 2];
    return a[n];
}

}  // namespace tblz::theory
