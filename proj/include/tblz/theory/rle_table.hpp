#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "tblz/rle.hpp"
#include "tblz/table.hpp"
#include "tblz/theory/gadgets.hpp"

namespace tblz::theory {

// Table whose columns are three-row strings: vertex column (v', v'', v) and
// edge column (v', v'', w), padded with a shared filler byte for m > 3 rows.
// Column ids follow the gadget convention: vertex columns first, then edge
// columns grouped by source in adjacency order. Outdegree-1 vertices are fine
// here; only the phrase gadgets need the cyclic repetition.
struct RleTableSet {
    Tsp12Graph graph;
    std::uint32_t rows = 3;
    Table table;
    std::vector<std::string> names;

    std::uint32_t vertex_col(std::uint32_t v) const { return v; }

    std::uint32_t edge_col(std::uint32_t v, std::uint32_t i) const {
        std::uint32_t id = graph.size();
        for (std::uint32_t u = 0; u < v; ++u) id += graph.outdeg(u);
        return id + i;
    }
};

namespace detail {
inline std::uint8_t rsym_main(std::uint32_t v) { return static_cast<std::uint8_t>(3 * v); }
inline std::uint8_t rsym_p1(std::uint32_t v) { return static_cast<std::uint8_t>(3 * v + 1); }
inline std::uint8_t rsym_p2(std::uint32_t v) { return static_cast<std::uint8_t>(3 * v + 2); }
inline constexpr std::uint8_t rsym_pad = 0xff;
}  // namespace detail

inline RleTableSet gen_rle_table(const Tsp12Graph& h, std::uint32_t m) {
    h.validate();
    if (m < 3) throw ArgError("run-length table needs at least 3 rows");
    const std::uint32_t n = h.size();
    if (n > 85) throw ArgError("alphabet cap: at most 85 vertices");

    RleTableSet rt;
    rt.graph = h;
    rt.rows = m;
    std::vector<Bytes> cols;
    for (std::uint32_t v = 0; v < n; ++v) {
        Bytes c{detail::rsym_p1(v), detail::rsym_p2(v), detail::rsym_main(v)};
        c.insert(c.end(), m - 3, detail::rsym_pad);
        cols.push_back(std::move(c));
        rt.names.push_back("s(" + std::to_string(v) + ")");
    }
    for (std::uint32_t v = 0; v < n; ++v) {
        for (auto w : h.adj[v]) {
            Bytes c{detail::rsym_p1(v), detail::rsym_p2(v), detail::rsym_main(w)};
            c.insert(c.end(), m - 3, detail::rsym_pad);
            cols.push_back(std::move(c));
            rt.names.push_back("e(" + std::to_string(v) + "," + std::to_string(w) + ")");
        }
    }
    const std::uint32_t width = static_cast<std::uint32_t>(cols.size());
    Bytes data(std::size_t{m} * width, 0);
    for (std::uint32_t c = 0; c < width; ++c)
        for (std::uint32_t r = 0; r < m; ++r) data[std::size_t{r} * width + c] = cols[c][r];
    rt.table = Table(width, std::move(data));
    return rt;
}

// Column classes realizing one batch per path: each vertex's column, then its
// edge columns with the path edge moved last so the junction rows merge.
inline std::vector<ColumnSeq> standard_rle_classes(const RleTableSet& rt, const PathCover& cover) {
    validate_cover(rt.graph, cover);
    std::vector<ColumnSeq> classes;
    const auto& h = rt.graph;
    for (const auto& path : cover) {
        ColumnSeq cls;
        for (std::size_t k = 0; k < path.size(); ++k) {
            const std::uint32_t u = path[k];
            cls.push_back(rt.vertex_col(u));
            const std::uint32_t d = h.outdeg(u);
            if (d == 0) continue;
            if (k + 1 < path.size()) {
                const auto it = std::find(h.adj[u].begin(), h.adj[u].end(), path[k + 1]);
                const std::uint32_t at = static_cast<std::uint32_t>(it - h.adj[u].begin());
                for (std::uint32_t i = 0; i < d; ++i)
                    if (i != at) cls.push_back(rt.edge_col(u, i));
                cls.push_back(rt.edge_col(u, at));
            } else {
                for (std::uint32_t i = 0; i < d; ++i) cls.push_back(rt.edge_col(u, i));
            }
        }
        classes.push_back(std::move(cls));
    }
    return classes;
}

// Run count of the row-major rendering of the standard classes.
inline std::uint64_t standard_rle_cost(const RleTableSet& rt, const PathCover& cover) {
    std::uint64_t total = 0;
    for (const auto& cls : standard_rle_classes(rt, cover)) total += rle_cost(project_rowmajor(rt.table, cls));
    return total;
}

// What the standard form must cost: per path of r vertices with total
// outdegree D, two prime rows give r runs each, the target row gives D+1 after
// the junction merges, and the filler rows collapse to one extra run per batch
// when m > 3.
inline std::uint64_t expected_standard_rle_cost(const Tsp12Graph& h, const PathCover& cover,
                                                std::uint32_t m) {
    std::uint64_t total = 0;
    for (const auto& path : cover) {
        std::uint64_t d_sum = 0;
        for (auto v : path) d_sum += h.outdeg(v);
        total += 2 * path.size() + d_sum + 1 + (m > 3 ? 1 : 0);
    }
    return total;
}

}  // namespace tblz::theory
