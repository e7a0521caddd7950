#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "tblz/error.hpp"
#include "tblz/lz77.hpp"
#include "tblz/table.hpp"

namespace tblz::theory {

// Directed graph with unit/doubled arc costs implied (present arc cheap,
// absent arc dear). Out-neighbors are stored in a fixed order that doubles as
// the cyclic order the string constructions rely on.
struct Tsp12Graph {
    std::vector<std::vector<std::uint32_t>> adj;

    std::uint32_t size() const { return static_cast<std::uint32_t>(adj.size()); }

    std::uint32_t edge_count() const {
        std::uint32_t m = 0;
        for (const auto& out : adj) m += static_cast<std::uint32_t>(out.size());
        return m;
    }

    std::uint32_t outdeg(std::uint32_t v) const { return static_cast<std::uint32_t>(adj[v].size()); }

    void validate(std::uint32_t max_outdeg = 8) const {
        const std::uint32_t n = size();
        for (std::uint32_t v = 0; v < n; ++v) {
            if (adj[v].size() > max_outdeg)
                throw ArgError("vertex " + std::to_string(v) + " exceeds outdegree bound");
            std::vector<bool> seen(n, false);
            for (auto w : adj[v]) {
                if (w >= n) throw ArgError("edge target out of range");
                if (w == v) throw ArgError("self loop at vertex " + std::to_string(v));
                if (seen[w]) throw ArgError("duplicate edge from vertex " + std::to_string(v));
                seen[w] = true;
            }
        }
    }

    bool has_edge(std::uint32_t v, std::uint32_t w) const {
        return std::find(adj[v].begin(), adj[v].end(), w) != adj[v].end();
    }
};

// One string per vertex and per edge over a three-symbols-per-vertex
// alphabet. String ids: vertex strings first (id = v), then edge strings
// grouped by source in adjacency order.
struct GadgetSet {
    Tsp12Graph graph;
    std::vector<Bytes> strings;
    std::vector<std::string> names;

    std::uint32_t vertex_id(std::uint32_t v) const { return v; }

    std::uint32_t edge_id(std::uint32_t v, std::uint32_t i) const {
        std::uint32_t id = graph.size();
        for (std::uint32_t u = 0; u < v; ++u) id += graph.outdeg(u);
        return id + i;
    }

    // (source, adjacency index) for an edge-string id; vertex strings map to
    // (v, npos).
    std::pair<std::uint32_t, std::uint32_t> locate(std::uint32_t id) const {
        const std::uint32_t n = graph.size();
        if (id < n) return {id, UINT32_MAX};
        std::uint32_t at = n;
        for (std::uint32_t v = 0; v < n; ++v) {
            if (id < at + graph.outdeg(v)) return {v, id - at};
            at += graph.outdeg(v);
        }
        throw ArgError("string id out of range");
    }
};

namespace detail {
inline std::uint8_t sym_main(std::uint32_t v) { return static_cast<std::uint8_t>(3 * v); }
inline std::uint8_t sym_prime(std::uint32_t v) { return static_cast<std::uint8_t>(3 * v + 1); }
inline std::uint8_t sym_dollar(std::uint32_t v) { return static_cast<std::uint8_t>(3 * v + 2); }
}  // namespace detail

// Vertex string: main^4 prime^5 dollar (10 symbols). Edge string for the i-th
// out-neighbor: (prime, previous-neighbor)^4 prime, neighbor (10 symbols),
// "previous" in the stored cyclic order. Needs every outdegree != 1, else the
// repetition degenerates and the phrase-count laws below stop holding.
inline GadgetSet gen_gadgets(const Tsp12Graph& h) {
    h.validate();
    const std::uint32_t n = h.size();
    if (n > 85) throw ArgError("alphabet cap: at most 85 vertices");
    for (std::uint32_t v = 0; v < n; ++v)
        if (h.outdeg(v) == 1)
            throw ArgError("vertex " + std::to_string(v) + " has outdegree 1; construction undefined");

    GadgetSet gs;
    gs.graph = h;
    for (std::uint32_t v = 0; v < n; ++v) {
        Bytes s;
        s.insert(s.end(), 4, detail::sym_main(v));
        s.insert(s.end(), 5, detail::sym_prime(v));
        s.push_back(detail::sym_dollar(v));
        gs.strings.push_back(std::move(s));
        gs.names.push_back("s(" + std::to_string(v) + ")");
    }
    for (std::uint32_t v = 0; v < n; ++v) {
        const auto d = h.outdeg(v);
        for (std::uint32_t i = 0; i < d; ++i) {
            const std::uint32_t w = h.adj[v][i];
            const std::uint32_t prev = h.adj[v][(i + d - 1) % d];
            Bytes e;
            for (int k = 0; k < 4; ++k) {
                e.push_back(detail::sym_prime(v));
                e.push_back(detail::sym_main(prev));
            }
            e.push_back(detail::sym_prime(v));
            e.push_back(detail::sym_main(w));
            gs.strings.push_back(std::move(e));
            gs.names.push_back("e(" + std::to_string(v) + "," + std::to_string(w) + ")");
        }
    }
    return gs;
}

using Batch = std::vector<std::uint32_t>;
using Schedule = std::vector<Batch>;

inline Bytes batch_bytes(const std::vector<Bytes>& strings, const Batch& batch) {
    Bytes out;
    for (auto id : batch) {
        const auto& s = strings.at(id);
        out.insert(out.end(), s.begin(), s.end());
    }
    return out;
}

inline void validate_schedule(std::size_t string_count, const Schedule& sched) {
    std::vector<bool> seen(string_count, false);
    std::size_t total = 0;
    for (const auto& batch : sched) {
        if (batch.empty()) throw ArgError("empty batch in schedule");
        for (auto id : batch) {
            if (id >= string_count) throw ArgError("string id out of range in schedule");
            if (seen[id]) throw ArgError("string id repeated in schedule");
            seen[id] = true;
            ++total;
        }
    }
    if (total != string_count) throw ArgError("schedule does not cover every string");
}

// Vertex-disjoint directed paths covering all vertices.
using PathCover = std::vector<std::vector<std::uint32_t>>;

inline void validate_cover(const Tsp12Graph& h, const PathCover& cover) {
    std::vector<bool> seen(h.size(), false);
    std::size_t total = 0;
    for (const auto& path : cover) {
        if (path.empty()) throw ArgError("empty path in cover");
        for (std::size_t k = 0; k < path.size(); ++k) {
            const auto v = path[k];
            if (v >= h.size()) throw ArgError("path vertex out of range");
            if (seen[v]) throw ArgError("vertex repeated in cover");
            seen[v] = true;
            ++total;
            if (k + 1 < path.size() && !h.has_edge(v, path[k + 1]))
                throw ArgError("path uses a missing edge");
        }
    }
    if (total != h.size()) throw ArgError("cover does not span every vertex");
}

// Every choice of at-most-one successor per vertex with distinct successors
// and no cycles; each choice set decomposes uniquely into a path cover.
inline std::vector<PathCover> all_path_covers(const Tsp12Graph& h) {
    const std::uint32_t n = h.size();
    std::vector<PathCover> covers;
    std::vector<std::int64_t> succ(n, -1), pred(n, -1);

    auto closes_cycle = [&](std::uint32_t v, std::uint32_t w) {
        // following successors from w must not come back to v
        std::int64_t cur = w;
        while (cur != -1) {
            if (cur == v) return true;
            cur = succ[static_cast<std::size_t>(cur)];
        }
        return false;
    };

    auto emit = [&] {
        PathCover cover;
        for (std::uint32_t v = 0; v < n; ++v) {
            if (pred[v] != -1) continue;
            std::vector<std::uint32_t> path{v};
            std::int64_t cur = succ[v];
            while (cur != -1) {
                path.push_back(static_cast<std::uint32_t>(cur));
                cur = succ[static_cast<std::size_t>(cur)];
            }
            cover.push_back(std::move(path));
        }
        covers.push_back(std::move(cover));
    };

    auto rec = [&](auto&& self, std::uint32_t v) -> void {
        if (v == n) {
            emit();
            return;
        }
        self(self, v + 1);  // v ends a path
        for (auto w : h.adj[v]) {
            if (pred[w] != -1 || closes_cycle(v, w)) continue;
            succ[v] = w;
            pred[w] = v;
            self(self, v + 1);
            succ[v] = -1;
            pred[w] = -1;
        }
    };
    rec(rec, 0);
    return covers;
}

// Batch for one path: walk the path emitting each vertex string followed by
// all of that vertex's edge strings, rotated so the path edge comes last; the
// final vertex takes its edge strings in stored order.
inline Batch standard_path_batch(const GadgetSet& gs, const std::vector<std::uint32_t>& path) {
    Batch batch;
    const auto& h = gs.graph;
    for (std::size_t k = 0; k < path.size(); ++k) {
        const std::uint32_t u = path[k];
        batch.push_back(gs.vertex_id(u));
        const std::uint32_t d = h.outdeg(u);
        if (d == 0) continue;
        if (k + 1 < path.size()) {
            const auto it = std::find(h.adj[u].begin(), h.adj[u].end(), path[k + 1]);
            const std::uint32_t at = static_cast<std::uint32_t>(it - h.adj[u].begin());
            for (std::uint32_t t = 1; t <= d; ++t) batch.push_back(gs.edge_id(u, (at + t) % d));
        } else {
            for (std::uint32_t i = 0; i < d; ++i) batch.push_back(gs.edge_id(u, i));
        }
    }
    return batch;
}

inline Schedule standard_schedule(const GadgetSet& gs, const PathCover& cover) {
    validate_cover(gs.graph, cover);
    Schedule sched;
    for (const auto& path : cover) sched.push_back(standard_path_batch(gs, path));
    validate_schedule(gs.strings.size(), sched);
    return sched;
}

inline std::uint64_t schedule_phrase_count(const GadgetSet& gs, const Schedule& sched) {
    validate_schedule(gs.strings.size(), sched);
    std::uint64_t total = 0;
    for (const auto& batch : sched) total += lz77_cost(batch_bytes(gs.strings, batch));
    return total;
}

// Phrase count the standard batch must hit: 3 per vertex, 1 per edge, plus one
// for the final vertex's first edge string when it has one.
inline std::uint64_t standard_batch_expected_phrases(const Tsp12Graph& h,
                                                     const std::vector<std::uint32_t>& path) {
    std::uint64_t d_sum = 0;
    for (auto v : path) d_sum += h.outdeg(v);
    const std::uint64_t tail = h.outdeg(path.back()) > 0 ? 1 : 0;
    return 3 * path.size() + d_sum + tail;
}

}  // namespace tblz::theory
