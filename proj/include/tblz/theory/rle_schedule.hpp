#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "tblz/rle.hpp"
#include "tblz/theory/gadgets.hpp"

namespace tblz::theory {

// Optimal schedule under the run backend in polynomial time.
//
// Catenation only ever saves runs at batch junctions: gluing x before y saves
// exactly one run when x ends with the byte y starts with, else nothing. So
// only each string's (first, last) byte pair matters (interior runs are
// fixed), every string is an arc first->last in a digraph over byte values,
// and a batch whose every junction saves is a walk. The best schedule keeps
// all interior runs and loses one run per junction of a fewest-walks
// decomposition: per weakly connected piece that is max(1, sum of positive
// out-in imbalances). Walks are extracted by adding that many virtual
// balancing arcs, closing an Euler circuit, and splitting it at the virtual
// arcs. Strings with equal first and last byte are ordinary self-loop arcs
// here, which resolves them exactly as the usual normalization (merge into a
// touching walk, or a lone batch) would.
inline std::pair<Schedule, std::uint64_t> rle_optimal_schedule(const std::vector<Bytes>& strings) {
    const std::size_t n = strings.size();
    for (const auto& s : strings)
        if (s.empty()) throw ArgError("schedule strings must be nonempty");

    std::uint64_t fixed = 0;
    for (const auto& s : strings) fixed += rle_cost(s);
    if (n == 0) return {Schedule{}, 0};

    // compact symbol space: endpoints only
    std::map<std::uint8_t, std::uint32_t> sym_id;
    auto intern = [&](std::uint8_t b) {
        auto [it, fresh] = sym_id.try_emplace(b, static_cast<std::uint32_t>(sym_id.size()));
        (void)fresh;
        return it->second;
    };
    struct Arc {
        std::uint32_t from, to;
        std::int64_t string_id;  // -1 for virtual balancing arcs
    };
    std::vector<Arc> arcs;
    for (std::size_t i = 0; i < n; ++i)
        arcs.push_back({intern(strings[i].front()), intern(strings[i].back()),
                        static_cast<std::int64_t>(i)});
    const std::uint32_t v_count = static_cast<std::uint32_t>(sym_id.size());

    // union endpoints into weakly connected components
    std::vector<std::uint32_t> parent(v_count);
    for (std::uint32_t v = 0; v < v_count; ++v) parent[v] = v;
    auto find = [&](std::uint32_t v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    for (const auto& a : arcs) parent[find(a.from)] = find(a.to);

    // per component: balance with virtual arcs from deficit to surplus vertices
    std::vector<std::int64_t> excess(v_count, 0);
    for (const auto& a : arcs) {
        ++excess[a.from];
        --excess[a.to];
    }
    std::map<std::uint32_t, std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>>> comp_ends;
    for (std::uint32_t v = 0; v < v_count; ++v) {
        auto& [surplus, deficit] = comp_ends[find(v)];
        for (std::int64_t k = 0; k < excess[v]; ++k) surplus.push_back(v);
        for (std::int64_t k = 0; k < -excess[v]; ++k) deficit.push_back(v);
    }
    for (auto& [root, ends] : comp_ends) {
        auto& [surplus, deficit] = ends;
        for (std::size_t k = 0; k < surplus.size(); ++k) arcs.push_back({deficit[k], surplus[k], -1});
    }

    // Hierholzer over each component that owns arcs
    std::vector<std::vector<std::size_t>> out(v_count);
    for (std::size_t i = 0; i < arcs.size(); ++i) out[arcs[i].from].push_back(i);
    std::vector<std::size_t> cursor(v_count, 0);
    std::vector<bool> seen_arc(arcs.size(), false);
    Schedule sched;

    for (std::size_t start_arc = 0; start_arc < arcs.size(); ++start_arc) {
        if (seen_arc[start_arc]) continue;
        // Euler circuit of this component's arcs, recorded as arc ids
        struct Frame {
            std::uint32_t v;
            std::size_t via_arc;
            bool has_via;
        };
        std::vector<Frame> stack{{arcs[start_arc].from, 0, false}};
        std::vector<std::size_t> circuit;
        while (!stack.empty()) {
            Frame& f = stack.back();
            if (cursor[f.v] < out[f.v].size()) {
                const std::size_t a = out[f.v][cursor[f.v]++];
                if (seen_arc[a]) continue;
                seen_arc[a] = true;
                stack.push_back({arcs[a].to, a, true});
            } else {
                if (f.has_via) circuit.push_back(f.via_arc);
                stack.pop_back();
            }
        }
        std::reverse(circuit.begin(), circuit.end());
        if (circuit.empty()) continue;
        // split the circuit at virtual arcs; a fully real circuit is one walk
        std::vector<std::size_t> rotated;
        std::size_t pivot = 0;
        for (std::size_t k = 0; k < circuit.size(); ++k)
            if (arcs[circuit[k]].string_id < 0) pivot = k;
        for (std::size_t k = 0; k < circuit.size(); ++k)
            rotated.push_back(circuit[(pivot + k) % circuit.size()]);
        Batch cur;
        for (const auto a : rotated) {
            if (arcs[a].string_id < 0) {
                if (!cur.empty()) sched.push_back(std::move(cur));
                cur = {};
            } else {
                cur.push_back(static_cast<std::uint32_t>(arcs[a].string_id));
            }
        }
        if (!cur.empty()) sched.push_back(std::move(cur));
    }

    validate_schedule(n, sched);
    std::uint64_t junctions = 0;
    for (const auto& batch : sched) junctions += batch.size() - 1;
    return {sched, fixed - junctions};
}

}  // namespace tblz::theory
