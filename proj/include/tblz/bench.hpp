#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "tblz/archive.hpp"
#include "tblz/oracle.hpp"
#include "tblz/partition.hpp"
#include "tblz/plan.hpp"
#include "tblz/tour.hpp"

namespace tblz {

enum class PlanMode { identity, dp, greedy, greedyt, tsp };

inline const char* mode_name(PlanMode m) {
    switch (m) {
        case PlanMode::identity: return "identity";
        case PlanMode::dp: return "dp";
        case PlanMode::greedy: return "greedy";
        case PlanMode::greedyt: return "greedyt";
        case PlanMode::tsp: return "tsp";
    }
    return "?";
}

inline PlanMode parse_mode(const std::string& s) {
    if (s == "identity") return PlanMode::identity;
    if (s == "dp") return PlanMode::dp;
    if (s == "greedy") return PlanMode::greedy;
    if (s == "greedyt") return PlanMode::greedyt;
    if (s == "tsp") return PlanMode::tsp;
    throw ArgError("unknown mode '" + s + "' (identity, dp, greedy, greedyt, tsp)");
}

struct TrainOptions {
    BackendConfig backend;
    PlanMode mode = PlanMode::dp;
    unsigned threads = 1;
    std::uint64_t seed = 0;
    std::uint64_t tour_budget = 100000;
};

// Learns a column order and partition for the table. Builds a fresh oracle per
// call so timed runs start cold.
inline Plan train_plan(const Table& t, const TrainOptions& opt) {
    const std::uint32_t rl = t.record_len();
    if (opt.mode == PlanMode::identity || rl < 2) return make_identity_plan(rl, opt.backend);
    CostOracle o(t, opt.backend);
    Partition p;
    switch (opt.mode) {
        case PlanMode::dp: p = dp_partition(o, identity_order(rl), opt.threads); break;
        case PlanMode::greedy: p = greedy_partition(o, identity_order(rl)); break;
        case PlanMode::greedyt: p = greedyt_partition(o, identity_order(rl)); break;
        case PlanMode::tsp: {
            const TourGraph g = build_graph(o, opt.threads);
            Tour tour = tour_search(g, opt.tour_budget, opt.seed);
            tour = coalesce_paths(g, std::move(tour));
            p = tour_to_partition(tour, o, 64, opt.threads);
            break;
        }
        default: break;
    }
    return Plan{rl, opt.backend, std::move(p)};
}

// ---- measurement ----

struct BenchOptions {
    BackendConfig backend;
    double train_fraction = 0.05;
    std::uint32_t runs = 5;
    unsigned threads = 1;
    std::uint64_t seed = 0;
    std::uint64_t tour_budget = 100000;
};

struct BenchRow {
    std::string file;
    std::string mode;
    std::uint64_t orig_size = 0;
    std::uint64_t comp_size = 0;
    double rate = 0;
    double vs_baseline = 0;
    double vs_dp = 0;
    double train_s = 0;
    double compress_s = 0;
};

inline std::uint64_t train_row_count(std::uint64_t rows, double fraction) {
    if (!(fraction > 0.0) || fraction > 1.0) throw ArgError("train fraction must be in (0, 1]");
    const auto k = static_cast<std::uint64_t>(fraction * static_cast<double>(rows));
    if (k == 0) throw ArgError("train fraction selects no training rows");
    return k;
}

namespace detail {

template <class F>
double time_once(F&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
}

inline double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v[v.size() / 2];
}

}  // namespace detail

// Train on a leading fraction of rows, evaluate archive size on the rest.
// Baseline is the backend run over the raw evaluation bytes with no plan; the
// dp plan's archive is the shared reference for vs_dp.
inline std::vector<BenchRow> bench_table(const std::string& label, const Table& full,
                                         const std::vector<PlanMode>& modes,
                                         const BenchOptions& opt) {
    if (opt.runs == 0 || opt.runs % 2 == 0) throw ArgError("runs must be odd");
    if (!backend_encodable(opt.backend))
        throw FormatError(opt.backend.to_string() + " has no encoded block form to bench");
    const std::uint64_t k = train_row_count(full.row_count(), opt.train_fraction);
    if (k >= full.row_count()) throw ArgError("train fraction leaves no evaluation rows");
    const Table train = full.prefix(k);
    const Table test = full.suffix(k);

    const std::uint64_t orig = test.data().size();
    const std::uint64_t baseline = backend_encode(opt.backend, test.data()).size();

    auto train_opts = [&](PlanMode m) {
        return TrainOptions{opt.backend, m, opt.threads, opt.seed, opt.tour_budget};
    };
    const Plan dp_plan = train_plan(train, train_opts(PlanMode::dp));
    const std::uint64_t dp_size = archive_compress(test, dp_plan).size();

    std::vector<BenchRow> rows;
    for (const PlanMode m : modes) {
        BenchRow row;
        row.file = label;
        row.mode = mode_name(m);
        row.orig_size = orig;

        Plan plan = make_identity_plan(full.record_len(), opt.backend);
        std::vector<double> tt, ct;
        for (std::uint32_t r = 0; r < opt.runs; ++r)
            tt.push_back(detail::time_once([&] { plan = train_plan(train, train_opts(m)); }));
        Bytes arch;
        for (std::uint32_t r = 0; r < opt.runs; ++r)
            ct.push_back(detail::time_once([&] { arch = archive_compress(test, plan); }));

        row.comp_size = arch.size();
        row.rate = static_cast<double>(row.comp_size) / static_cast<double>(orig);
        row.vs_baseline = static_cast<double>(row.comp_size) / static_cast<double>(baseline);
        row.vs_dp = static_cast<double>(row.comp_size) / static_cast<double>(dp_size);
        row.train_s = detail::median(tt);
        row.compress_s = detail::median(ct);
        rows.push_back(std::move(row));
    }
    return rows;
}

inline std::string bench_csv_header() {
    return "file,mode,orig_size,comp_size,rate,vs_baseline,vs_dp,train_s,compress_s";
}

inline std::string bench_csv_row(const BenchRow& r) {
    std::ostringstream out;
    out.setf(std::ios::fixed);
    out.precision(6);
    out << r.file << ',' << r.mode << ',' << r.orig_size << ',' << r.comp_size << ',' << r.rate
        << ',' << r.vs_baseline << ',' << r.vs_dp << ',' << r.train_s << ',' << r.compress_s;
    return out.str();
}

}  // namespace tblz
