#pragma once

#include <atomic>
#include <concepts>
#include <cstdint>
#include <mutex>
#include <span>
#include <unordered_map>
#include <vector>

#include "tblz/backend.hpp"
#include "tblz/table.hpp"

namespace tblz {

template <typename O>
concept CostSource = requires(O& o, std::span<const std::uint32_t> cols) {
    { o.cost(cols) } -> std::convertible_to<std::uint64_t>;
};

namespace detail {
struct ColsHash {
    std::size_t operator()(const ColumnSeq& v) const noexcept {
        std::uint64_t h = 1469598103934665603ull;
        for (auto x : v) {
            h ^= x;
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }
};
}  // namespace detail

// Memoized compressed-size oracle over one table. cost(S) is the backend cost
// of the row-major projection of the columns S, cached by exact sequence.
// Queries are pure, so concurrent callers may race to compute the same key;
// the cache insert is last-write-wins with identical values and call_count
// then counts backend invocations approximately. Single-threaded use is exact.
class CostOracle {
public:
    CostOracle(const Table& t, BackendConfig cfg) : table_(&t), cfg_(cfg) {}

    std::uint64_t cost(std::span<const std::uint32_t> cols) {
        if (cols.empty()) throw ArgError("cost of an empty column sequence is undefined");
        ColumnSeq key(cols.begin(), cols.end());
        {
            std::lock_guard lock(mu_);
            auto it = cache_.find(key);
            if (it != cache_.end()) return it->second;
        }
        const Bytes proj = project_rowmajor(*table_, cols);
        const std::uint64_t c = backend_cost(cfg_, proj);
        calls_.fetch_add(1, std::memory_order_relaxed);
        std::lock_guard lock(mu_);
        cache_.emplace(std::move(key), c);
        return c;
    }

    std::uint64_t call_count() const noexcept { return calls_.load(std::memory_order_relaxed); }
    std::uint32_t column_count() const noexcept { return table_->record_len(); }
    const Table& table() const noexcept { return *table_; }
    const BackendConfig& backend() const noexcept { return cfg_; }

private:
    const Table* table_;
    BackendConfig cfg_;
    std::unordered_map<ColumnSeq, std::uint64_t, detail::ColsHash> cache_;
    std::mutex mu_;
    std::atomic<std::uint64_t> calls_{0};
};

// Closed-form cost for algorithm verification: cost(S) = sum of per-column
// base values minus discount per pair of S sharing a group. Two disjoint sets
// then interact (joint < sum) exactly when they share a group member pair,
// which makes pairwise interaction an equivalence relation with the groups as
// classes.
class SyntheticOracle {
public:
    SyntheticOracle(std::vector<std::uint32_t> group_of, std::vector<std::uint64_t> base,
                    std::uint64_t discount)
        : group_of_(std::move(group_of)), base_(std::move(base)), discount_(discount) {
        if (group_of_.size() != base_.size()) throw ArgError("group/base size mismatch");
    }

    std::uint64_t cost(std::span<const std::uint32_t> cols) {
        if (cols.empty()) throw ArgError("cost of an empty column sequence is undefined");
        ++calls_;
        std::uint64_t total = 0, pairs = 0;
        for (std::size_t i = 0; i < cols.size(); ++i) {
            total += base_.at(cols[i]);
            for (std::size_t j = i + 1; j < cols.size(); ++j)
                if (group_of_.at(cols[i]) == group_of_.at(cols[j])) ++pairs;
        }
        const std::uint64_t cut = discount_ * pairs;
        if (cut > total) throw ArgError("discount exceeds base cost; instance ill-formed");
        return total - cut;
    }

    std::uint64_t call_count() const noexcept { return calls_; }
    std::uint32_t column_count() const noexcept { return static_cast<std::uint32_t>(group_of_.size()); }
    const std::vector<std::uint32_t>& groups() const noexcept { return group_of_; }

private:
    std::vector<std::uint32_t> group_of_;
    std::vector<std::uint64_t> base_;
    std::uint64_t discount_;
    std::uint64_t calls_ = 0;
};

// Joint cost strictly below the sum of parts. Sequences must be disjoint and
// nonempty; the check is on the catenation a then b (order matters).
template <CostSource O>
bool dependent(O& o, const ColumnSeq& a, const ColumnSeq& b) {
    if (a.empty() || b.empty()) throw ArgError("dependence needs nonempty sequences");
    for (auto x : a)
        for (auto y : b)
            if (x == y) throw ArgError("dependence needs disjoint sequences");
    const ColumnSeq joint = cat(a, b);
    return o.cost(joint) < o.cost(a) + o.cost(b);
}

}  // namespace tblz
