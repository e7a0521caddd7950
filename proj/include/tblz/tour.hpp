#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <numeric>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "tblz/assignment.hpp"
#include "tblz/partition.hpp"

namespace tblz {

// Dense directed graph over columns. The weight of an arc is the cheaper of
// compressing the pair jointly or separately, so no arc ever costs more than
// keeping its endpoints apart, and an arc is strictly cheaper exactly when
// the joint compression wins.
struct TourGraph {
    std::uint32_t n = 0;
    std::vector<std::uint64_t> w;        // n*n row-major, diagonal unused
    std::vector<std::uint64_t> single;   // per-column cost

    std::uint64_t weight(std::uint32_t i, std::uint32_t j) const { return w[std::size_t{i} * n + j]; }
    bool dependent(std::uint32_t i, std::uint32_t j) const {
        return weight(i, j) < single[i] + single[j];
    }
};

template <CostSource O>
TourGraph build_graph(O& o, unsigned threads = 1) {
    TourGraph g;
    g.n = o.column_count();
    if (g.n < 2) throw ArgError("tour graph needs at least two columns");
    g.w.assign(std::size_t{g.n} * g.n, 0);
    g.single.resize(g.n);
    for (std::uint32_t i = 0; i < g.n; ++i) g.single[i] = o.cost(ColumnSeq{i});
    detail::parallel_for(g.n, threads, [&](std::size_t i) {
        for (std::uint32_t j = 0; j < g.n; ++j) {
            if (j == static_cast<std::uint32_t>(i)) continue;
            const ColumnSeq pair{static_cast<std::uint32_t>(i), j};
            g.w[i * g.n + j] = std::min(o.cost(pair), g.single[i] + g.single[j]);
        }
    });
    return g;
}

// Open ordering of the columns. A virtual depot with zero-weight arcs both
// ways closes it into a cycle, so the weight is just the sum of consecutive
// arcs of seq and the depot position marks where the cycle is cut open.
struct Tour {
    std::vector<std::uint32_t> seq;
    std::uint64_t weight = 0;
};

inline std::uint64_t path_weight(const TourGraph& g, std::span<const std::uint32_t> seq) {
    std::uint64_t total = 0;
    for (std::size_t k = 0; k + 1 < seq.size(); ++k) total += g.weight(seq[k], seq[k + 1]);
    return total;
}

namespace detail {

// Steepest-descent local search mixing directed two-arc reversals with
// segment relocations (the orientation-preserving three-arc move). Every
// accepted move strictly decreases the weight; stops at a local optimum or
// after `budget` accepted moves. Returns the number of accepted moves.
inline std::uint64_t local_search(const TourGraph& g, std::vector<std::uint32_t>& seq,
                                  std::uint64_t budget) {
    const std::size_t n = seq.size();
    if (n < 2) return 0;
    std::uint64_t moves = 0;
    // fwd[k]: weight of seq[0..k] walked forward; bwd[k]: walked backward.
    std::vector<std::uint64_t> fwd(n, 0), bwd(n, 0);
    auto refresh = [&] {
        for (std::size_t k = 1; k < n; ++k) {
            fwd[k] = fwd[k - 1] + g.weight(seq[k - 1], seq[k]);
            bwd[k] = bwd[k - 1] + g.weight(seq[k], seq[k - 1]);
        }
    };
    refresh();
    auto arc = [&](std::ptrdiff_t a, std::ptrdiff_t b) -> std::uint64_t {
        if (a < 0 || b < 0 || a >= static_cast<std::ptrdiff_t>(n) || b >= static_cast<std::ptrdiff_t>(n))
            return 0;  // depot arc
        return g.weight(seq[a], seq[b]);
    };
    while (moves < budget) {
        std::int64_t best = 0;
        enum class Kind { none, reverse, relocate } kind = Kind::none;
        std::size_t bi = 0, bj = 0, bk = 0;
        // reverse seq[i..j]
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                const std::int64_t before = static_cast<std::int64_t>(
                    arc(static_cast<std::ptrdiff_t>(i) - 1, i) + arc(j, j + 1) + (fwd[j] - fwd[i]));
                const std::int64_t after = static_cast<std::int64_t>(
                    arc(static_cast<std::ptrdiff_t>(i) - 1, j) + arc(i, j + 1) + (bwd[j] - bwd[i]));
                const std::int64_t delta = after - before;
                if (delta < best) {
                    best = delta;
                    kind = Kind::reverse;
                    bi = i;
                    bj = j;
                }
            }
        }
        // move seq[i..j] to sit after position k (k==n means append at end)
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i; j < n; ++j) {
                const std::int64_t cut = static_cast<std::int64_t>(
                    arc(static_cast<std::ptrdiff_t>(i) - 1, i) + arc(j, j + 1));
                const std::int64_t bridge =
                    static_cast<std::int64_t>(arc(static_cast<std::ptrdiff_t>(i) - 1, j + 1));
                for (std::size_t k = 0; k <= n; ++k) {
                    if (k >= i && k <= j + 1) continue;  // no-op or inside the segment
                    // arcs around the insertion point (k-1 -> k in the gap sense)
                    const std::int64_t open = static_cast<std::int64_t>(arc(static_cast<std::ptrdiff_t>(k) - 1, k));
                    const std::int64_t attach = static_cast<std::int64_t>(
                        arc(static_cast<std::ptrdiff_t>(k) - 1, i) + arc(j, k));
                    const std::int64_t delta = bridge + attach - cut - open;
                    if (delta < best) {
                        best = delta;
                        kind = Kind::relocate;
                        bi = i;
                        bj = j;
                        bk = k;
                    }
                }
            }
        }
        if (kind == Kind::none) break;
        const std::uint64_t before_w = fwd[n - 1];
        if (kind == Kind::reverse) {
            std::reverse(seq.begin() + static_cast<std::ptrdiff_t>(bi),
                         seq.begin() + static_cast<std::ptrdiff_t>(bj) + 1);
        } else {
            std::vector<std::uint32_t> out;
            out.reserve(n);
            auto in_seg = [&](std::size_t t) { return t >= bi && t <= bj; };
            for (std::size_t t = 0; t < n; ++t) {
                if (t == bk)
                    for (std::size_t s = bi; s <= bj; ++s) out.push_back(seq[s]);
                if (!in_seg(t)) out.push_back(seq[t]);
            }
            if (bk == n)
                for (std::size_t s = bi; s <= bj; ++s) out.push_back(seq[s]);
            seq = std::move(out);
        }
        refresh();
        assert(fwd[n - 1] < before_w);
        (void)before_w;
        ++moves;
    }
    return moves;
}

}  // namespace detail

// Nearest-neighbor construction from a seed-picked start, then local search.
// Deterministic for a fixed (graph, budget, seed).
inline Tour tour_search(const TourGraph& g, std::uint64_t budget = 100000, std::uint64_t seed = 0) {
    Tour t;
    if (g.n == 0) return t;
    const std::uint32_t start = static_cast<std::uint32_t>(seed % g.n);
    std::vector<bool> used(g.n, false);
    t.seq.reserve(g.n);
    t.seq.push_back(start);
    used[start] = true;
    while (t.seq.size() < g.n) {
        const std::uint32_t cur = t.seq.back();
        std::uint32_t pick = g.n;
        std::uint64_t best = 0;
        for (std::uint32_t v = 0; v < g.n; ++v) {
            if (used[v]) continue;
            if (pick == g.n || g.weight(cur, v) < best) {
                pick = v;
                best = g.weight(cur, v);
            }
        }
        t.seq.push_back(pick);
        used[pick] = true;
    }
    detail::local_search(g, t.seq, budget);
    t.weight = path_weight(g, t.seq);
    return t;
}

// All n! open orderings; n small only. Ties keep the lexicographically first.
inline Tour exhaustive_best_tour(const TourGraph& g) {
    if (g.n > 9) throw ArgError("exhaustive tour capped at 9 columns");
    Tour best;
    std::vector<std::uint32_t> seq(g.n);
    std::iota(seq.begin(), seq.end(), 0);
    best.seq = seq;
    best.weight = path_weight(g, seq);
    while (std::next_permutation(seq.begin(), seq.end())) {
        const std::uint64_t w = path_weight(g, seq);
        if (w < best.weight) {
            best.weight = w;
            best.seq = seq;
        }
    }
    return best;
}

// Assignment relaxation on the depot-extended matrix (diagonal forbidden,
// depot arcs zero). Every open ordering is a cycle of that matrix, so the
// optimum here can never exceed any tour weight.
inline std::uint64_t ap_lower_bound(const TourGraph& g) {
    if (g.n < 2) throw ArgError("lower bound needs at least two columns");
    const std::size_t m = std::size_t{g.n} + 1;
    std::vector<std::vector<std::int64_t>> a(m, std::vector<std::int64_t>(m, 0));
    for (std::size_t i = 0; i < g.n; ++i)
        for (std::size_t j = 0; j < g.n; ++j)
            a[i][j] = (i == j) ? forbidden_cost()
                               : static_cast<std::int64_t>(g.weight(static_cast<std::uint32_t>(i),
                                                                    static_cast<std::uint32_t>(j)));
    a[m - 1][m - 1] = forbidden_cost();
    return min_assignment(a);
}

// ============================ path coalescing ============================
//
// Interaction cuts split the ordering into maximal segments whose consecutive
// columns interact. When one segment ends at u, another starts at v, and
// (u, v) interact, splicing the second segment right after u replaces three
// cut arcs (each priced at the sum of its endpoints) by at most the same and
// one strictly cheaper arc, so the weight strictly drops. Splices whose
// removed arcs touch the virtual depot are skipped: depot arcs are free and
// the strict-decrease argument does not cover them.

struct CoalesceStats {
    std::uint64_t moves = 0;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> weights;  // (before, after) per move
};

inline Tour coalesce_paths(const TourGraph& g, Tour t, CoalesceStats* stats = nullptr) {
    const std::size_t n = t.seq.size();
    if (n < 2) return t;
    for (;;) {
        // segment starts/ends under interaction cuts
        std::vector<std::pair<std::size_t, std::size_t>> segs;  // [from, to] inclusive
        std::size_t from = 0;
        for (std::size_t k = 0; k + 1 <= n - 1; ++k) {
            if (!g.dependent(t.seq[k], t.seq[k + 1])) {
                segs.emplace_back(from, k);
                from = k + 1;
            }
        }
        segs.emplace_back(from, n - 1);
        bool applied = false;
        for (std::size_t a = 0; a < segs.size() && !applied; ++a) {
            for (std::size_t b = 0; b < segs.size() && !applied; ++b) {
                if (a == b) continue;
                const std::size_t u_at = segs[a].second;
                const std::size_t v_at = segs[b].first;
                const std::size_t vend = segs[b].second;
                if (u_at == n - 1 || v_at == 0 || vend == n - 1) continue;  // removed arc would touch the depot
                if (!g.dependent(t.seq[u_at], t.seq[v_at])) continue;
                std::vector<std::uint32_t> out;
                out.reserve(n);
                for (std::size_t k = 0; k < n; ++k) {
                    if (k >= v_at && k <= vend) continue;
                    out.push_back(t.seq[k]);
                    if (k == u_at)
                        for (std::size_t s = v_at; s <= vend; ++s) out.push_back(t.seq[s]);
                }
                const std::uint64_t w_new = path_weight(g, out);
                if (!(w_new < t.weight))
                    throw Error(Errc::argument,
                                "coalescing move failed to decrease tour weight (" +
                                    std::to_string(w_new) + " vs " + std::to_string(t.weight) + ")");
                if (stats) {
                    ++stats->moves;
                    stats->weights.emplace_back(t.weight, w_new);
                }
                t.seq = std::move(out);
                t.weight = w_new;
                applied = true;
            }
        }
        if (!applied) return t;
    }
}

// Cut the depot-closed cycle at the depot and partition the resulting order.
// Small orders get the exact dynamic program, large ones the pairwise greedy.
template <CostSource O>
Partition tour_to_partition(const Tour& t, O& o, std::uint32_t dp_threshold = 64, unsigned threads = 1) {
    ColumnSeq order(t.seq.begin(), t.seq.end());
    if (order.size() <= dp_threshold) return dp_partition(o, std::move(order), threads);
    return greedyt_partition(o, std::move(order));
}

// Random restarts of the classic four-arc shuffle: segment order changes, no
// segment is reversed, so arc directions stay intact.
inline std::vector<std::uint32_t> double_bridge(std::vector<std::uint32_t> seq, std::mt19937_64& rng) {
    const std::size_t n = seq.size();
    if (n < 4) {
        if (n >= 2) {
            const std::size_t i = rng() % n;
            std::size_t j = rng() % n;
            if (i == j) j = (j + 1) % n;
            std::swap(seq[i], seq[j]);
        }
        return seq;
    }
    std::size_t a = 1 + rng() % (n - 3);
    std::size_t b = a + 1 + rng() % (n - a - 2);
    std::size_t c = b + 1 + rng() % (n - b - 1);
    std::vector<std::uint32_t> out;
    out.reserve(n);
    out.insert(out.end(), seq.begin(), seq.begin() + static_cast<std::ptrdiff_t>(a));
    out.insert(out.end(), seq.begin() + static_cast<std::ptrdiff_t>(b), seq.begin() + static_cast<std::ptrdiff_t>(c));
    out.insert(out.end(), seq.begin() + static_cast<std::ptrdiff_t>(a), seq.begin() + static_cast<std::ptrdiff_t>(b));
    out.insert(out.end(), seq.begin() + static_cast<std::ptrdiff_t>(c), seq.end());
    return out;
}

// Walks away from a local optimum by chained four-arc shuffles, recording the
// tour weight and the resulting partitioned size for each tour visited (the
// local optimum itself is the first sample).
template <CostSource O>
std::vector<std::pair<std::uint64_t, std::uint64_t>> tour_sequence_scan(const TourGraph& g, O& o,
                                                                        std::size_t count,
                                                                        std::uint64_t seed,
                                                                        std::uint64_t budget = 100000) {
    if (count < 2) throw ArgError("scan needs at least two tours");
    std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
    out.reserve(count);
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
    Tour cur = tour_search(g, budget, seed);
    for (std::size_t k = 0; k < count; ++k) {
        if (k > 0) {
            cur.seq = double_bridge(std::move(cur.seq), rng);
            cur.weight = path_weight(g, cur.seq);
        }
        const Partition p = tour_to_partition(cur, o);
        std::uint64_t size = 0;
        for (const auto& cls : p.classes()) size += o.cost(cls);
        out.emplace_back(cur.weight, size);
    }
    return out;
}

}  // namespace tblz
