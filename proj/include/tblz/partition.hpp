#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <thread>
#include <vector>

#include "tblz/oracle.hpp"
#include "tblz/table.hpp"

namespace tblz {

// Column order plus ascending cut positions strictly inside (0, n).
// Class i is order[boundaries[i-1] .. boundaries[i]).
struct Partition {
    ColumnSeq order;
    std::vector<std::uint32_t> boundaries;

    bool operator==(const Partition&) const = default;

    std::vector<ColumnSeq> classes() const {
        std::vector<ColumnSeq> out;
        std::uint32_t from = 0;
        for (auto b : boundaries) {
            out.emplace_back(order.begin() + from, order.begin() + b);
            from = b;
        }
        if (!order.empty()) out.emplace_back(order.begin() + from, order.end());
        return out;
    }
};

inline void validate_partition(const Partition& p, std::uint32_t record_len) {
    const std::size_t n = p.order.size();
    if (n != record_len) throw FormatError("plan column count does not match record length");
    std::vector<bool> seen(record_len, false);
    for (auto c : p.order) {
        if (c >= record_len) throw FormatError("plan column index out of range");
        if (seen[c]) throw FormatError("plan column index repeated");
        seen[c] = true;
    }
    std::uint32_t prev = 0;
    for (auto b : p.boundaries) {
        if (b <= prev || b >= n) throw FormatError("plan cut positions must ascend strictly inside the record");
        prev = b;
    }
}

template <CostSource O>
std::uint64_t total_cost(O& o, const Partition& p) {
    std::uint64_t total = 0;
    for (const auto& cls : p.classes()) total += o.cost(cls);
    return total;
}

namespace detail {

inline void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn) {
    if (threads <= 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            fn(i);
        }
    };
    std::vector<std::thread> pool;
    const unsigned k = std::min<unsigned>(threads, std::thread::hardware_concurrency() > 0
                                                       ? std::thread::hardware_concurrency()
                                                       : threads);
    for (unsigned t = 0; t < k; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

// Interval cost table: cost(order[j..i)) for all 0 <= j < i <= n.
template <CostSource O>
std::vector<std::vector<std::uint64_t>> interval_costs(O& o, std::span<const std::uint32_t> order,
                                                       unsigned threads) {
    const std::size_t n = order.size();
    std::vector<std::vector<std::uint64_t>> h(n + 1);
    for (std::size_t j = 0; j < n; ++j) h[j].resize(n + 1, 0);
    parallel_for(n, threads, [&](std::size_t j) {
        for (std::size_t i = j + 1; i <= n; ++i)
            h[j][i] = o.cost(order.subspan(j, i - j));
    });
    return h;
}

}  // namespace detail

// Optimal contiguous partition of the given order by dynamic programming over
// prefixes. Ties prefer the shortest final class (scan split points ascending,
// replace on <=), so cost-neutral merges are never taken.
template <CostSource O>
Partition dp_partition(O& o, ColumnSeq order, unsigned threads = 1) {
    const std::size_t n = order.size();
    Partition p{std::move(order), {}};
    if (n == 0) return p;
    const auto h = detail::interval_costs(o, std::span<const std::uint32_t>(p.order), threads);
    std::vector<std::uint64_t> best(n + 1, 0);
    std::vector<std::uint32_t> back(n + 1, 0);
    for (std::size_t i = 1; i <= n; ++i) {
        std::uint64_t b = std::numeric_limits<std::uint64_t>::max();
        std::uint32_t arg = 0;
        for (std::size_t j = 0; j < i; ++j) {
            const std::uint64_t c = best[j] + h[j][i];
            if (c <= b) {
                b = c;
                arg = static_cast<std::uint32_t>(j);
            }
        }
        best[i] = b;
        back[i] = arg;
    }
    std::vector<std::uint32_t> cuts;
    for (std::uint32_t at = back[n]; at > 0; at = back[at]) cuts.push_back(at);
    std::reverse(cuts.begin(), cuts.end());
    p.boundaries = std::move(cuts);
    return p;
}

// Exhaustive check over all 2^(n-1) contiguous partitions; ties resolved by
// the same preference dp_partition realizes (maximize the cut positions read
// from the last one backwards). Refuses n > 20.
template <CostSource O>
Partition brute_force_contiguous(O& o, ColumnSeq order) {
    const std::size_t n = order.size();
    if (n > 20) throw ArgError("brute force capped at 20 columns");
    Partition p{std::move(order), {}};
    if (n == 0) return p;
    const auto h = detail::interval_costs(o, std::span<const std::uint32_t>(p.order), 1);

    auto prefer = [](const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
        // true when a is preferred over b
        std::size_t ia = a.size(), ib = b.size();
        while (ia > 0 || ib > 0) {
            const std::uint32_t va = ia > 0 ? a[ia - 1] : 0;
            const std::uint32_t vb = ib > 0 ? b[ib - 1] : 0;
            if (va != vb) return va > vb;
            if (ia > 0) --ia;
            if (ib > 0) --ib;
        }
        return false;
    };

    std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
    std::vector<std::uint32_t> best_cuts;
    const std::uint64_t masks = 1ull << (n - 1);
    std::vector<std::uint32_t> cuts;
    for (std::uint64_t m = 0; m < masks; ++m) {
        cuts.clear();
        std::uint64_t cost = 0;
        std::size_t from = 0;
        for (std::size_t k = 1; k <= n; ++k) {
            if (k == n || (m >> (k - 1)) & 1) {
                cost += h[from][k];
                if (k < n) cuts.push_back(static_cast<std::uint32_t>(k));
                from = k;
            }
        }
        if (cost < best || (cost == best && prefer(cuts, best_cuts))) {
            best = cost;
            best_cuts = cuts;
        }
    }
    p.boundaries = std::move(best_cuts);
    return p;
}

// One left-to-right scan growing the current class: extend with the next
// column when the joint cost beats carrying it separately. The class-so-far
// cost is always a cache hit from the step that formed it.
template <CostSource O>
Partition greedy_partition(O& o, ColumnSeq order) {
    const std::size_t n = order.size();
    Partition p{std::move(order), {}};
    if (n == 0) return p;
    ColumnSeq cur{p.order[0]};
    for (std::size_t k = 1; k < n; ++k) {
        const ColumnSeq single{p.order[k]};
        const ColumnSeq joint = cat(cur, single);
        if (o.cost(joint) < o.cost(cur) + o.cost(single)) {
            cur = joint;
        } else {
            p.boundaries.push_back(static_cast<std::uint32_t>(k));
            cur = single;
        }
    }
    return p;
}

// Pairwise variant: adjacent columns share a class exactly when their joint
// cost beats the two singletons; classes are the maximal merged chains. Only
// one- and two-column sequences are ever compressed.
template <CostSource O>
Partition greedyt_partition(O& o, ColumnSeq order) {
    const std::size_t n = order.size();
    Partition p{std::move(order), {}};
    if (n == 0) return p;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const ColumnSeq a{p.order[i]}, b{p.order[i + 1]};
        const ColumnSeq pair = cat(a, b);
        if (!(o.cost(pair) < o.cost(a) + o.cost(b)))
            p.boundaries.push_back(static_cast<std::uint32_t>(i + 1));
    }
    return p;
}

}  // namespace tblz
