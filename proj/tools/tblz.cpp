// tblz: learn column partitions that shrink fixed-length-record tables, apply
// them as archives, and check the phrase/run-count laws the planner rests on.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tblz/archive.hpp"
#include "tblz/bench.hpp"
#include "tblz/oracle.hpp"
#include "tblz/partition.hpp"
#include "tblz/plan.hpp"
#include "tblz/stats.hpp"
#include "tblz/table.hpp"
#include "tblz/theory/verify.hpp"
#include "tblz/tour.hpp"

#ifdef _WIN32
#include <io.h>
#define TBLZ_ISATTY _isatty(_fileno(stdout))
#else
#include <unistd.h>
#define TBLZ_ISATTY isatty(fileno(stdout))
#endif

namespace {

bool use_color() {
    return std::getenv("TBLZ_NO_COLOR") == nullptr && TBLZ_ISATTY;
}

std::string paint(const std::string& s, const char* code) {
    if (!use_color()) return s;
    return std::string("\x1b[") + code + "m" + s + "\x1b[0m";
}

std::string ok_mark() { return paint("pass", "32"); }
std::string fail_mark() { return paint("FAIL", "31"); }

int exit_code(const tblz::Error& e) {
    switch (e.code()) {
        case tblz::Errc::format: return 2;
        case tblz::Errc::crc: return 3;
        default: return 1;
    }
}

struct CommonOpts {
    std::uint32_t record_len = 0;
    std::string backend = "deflate:6";
    std::string mode = "dp";
    unsigned threads = 1;
    std::uint64_t seed = 0;
    std::uint64_t budget = 100000;
};

void add_tuning(CLI::App* cmd, CommonOpts& c, bool with_mode = true) {
    cmd->add_option("--backend", c.backend, "cost backend: deflate[:1-9], rle, lz77")
        ->capture_default_str();
    if (with_mode)
        cmd->add_option("--mode", c.mode, "planner: identity, dp, greedy, greedyt, tsp")
            ->capture_default_str();
    cmd->add_option("--threads", c.threads, "worker threads for cost queries")
        ->capture_default_str();
    cmd->add_option("--seed", c.seed, "seed for randomized search")->capture_default_str();
    cmd->add_option("--budget", c.budget, "accepted-move budget for tour search")
        ->capture_default_str();
}

tblz::TrainOptions to_train_options(const CommonOpts& c) {
    return tblz::TrainOptions{tblz::BackendConfig::parse(c.backend), tblz::parse_mode(c.mode),
                              c.threads, c.seed, c.budget};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"partition-trained table compressor"};
    app.require_subcommand(1);

    // ---- train ----
    auto* train = app.add_subcommand("train", "learn a compression plan for a table");
    std::string train_file, train_out;
    double train_fraction = 0.05;
    CommonOpts train_opts;
    train->add_option("file", train_file, "input table")->required();
    train->add_option("--record-len", train_opts.record_len, "bytes per row")->required();
    train->add_option("-o,--out", train_out, "plan output path (default: FILE.plan)");
    train->add_option("--train-fraction", train_fraction,
                      "leading fraction of rows used to train (1.0 = whole file)")
        ->capture_default_str();
    add_tuning(train, train_opts);
    train->callback([&] {
        const auto opts = to_train_options(train_opts);
        const auto table = tblz::load_table(train_file, train_opts.record_len);
        const auto rows = tblz::train_row_count(table.row_count(), train_fraction);
        const auto sample = table.prefix(rows);
        const auto plan = tblz::train_plan(sample, opts);
        const std::string out = train_out.empty() ? train_file + ".plan" : train_out;
        tblz::plan_save(out, plan);
        tblz::CostOracle oracle(sample, plan.backend);
        const auto cost = tblz::total_cost(oracle, plan.partition);
        std::cout << "wrote " << out << " (" << plan.partition.classes().size() << " classes over "
                  << plan.record_len << " columns, trained on " << rows << " rows, training cost "
                  << cost << ")\n";
    });

    // ---- compress ----
    auto* compress = app.add_subcommand("compress", "apply a plan and write an archive");
    std::string comp_file, comp_plan, comp_out;
    CommonOpts comp_opts;
    compress->add_option("file", comp_file, "input table")->required();
    compress->add_option("--plan", comp_plan, "plan file (trains in-process when omitted)");
    compress->add_option("-o,--out", comp_out, "archive output path (default: FILE.tbz)");
    compress->add_option("--record-len", comp_opts.record_len,
                         "bytes per row (needed when training in-process)");
    double comp_fraction = 1.0;
    compress->add_option("--train-fraction", comp_fraction,
                         "leading fraction of rows used when training in-process")
        ->capture_default_str();
    add_tuning(compress, comp_opts);
    compress->callback([&] {
        tblz::Plan plan;
        if (!comp_plan.empty()) {
            plan = tblz::plan_load(comp_plan);
        } else {
            if (comp_opts.record_len == 0)
                throw tblz::ArgError("--record-len is required when no plan is given");
            const auto opts = to_train_options(comp_opts);
            const auto table = tblz::load_table(comp_file, comp_opts.record_len);
            const auto rows = tblz::train_row_count(table.row_count(), comp_fraction);
            plan = tblz::train_plan(table.prefix(rows), opts);
        }
        const auto table = tblz::load_table(comp_file, plan.record_len);
        const auto archive = tblz::archive_compress(table, plan);
        const std::string out = comp_out.empty() ? comp_file + ".tbz" : comp_out;
        tblz::write_file(out, archive);
        const double ratio = table.data().empty()
                                 ? 0.0
                                 : static_cast<double>(archive.size()) /
                                       static_cast<double>(table.data().size());
        std::cout << "wrote " << out << " (" << archive.size() << " bytes, ratio " << ratio
                  << ")\n";
    });

    // ---- decompress ----
    auto* decompress = app.add_subcommand("decompress", "rebuild the original table from an archive");
    std::string dec_file, dec_out;
    decompress->add_option("file", dec_file, "input archive")->required();
    decompress->add_option("-o,--out", dec_out, "output path (default: strip .tbz)");
    decompress->callback([&] {
        const auto bytes = tblz::read_file(dec_file);
        const auto table = tblz::archive_decompress(bytes);
        std::string out = dec_out;
        if (out.empty()) {
            out = dec_file.size() > 4 && dec_file.ends_with(".tbz")
                      ? dec_file.substr(0, dec_file.size() - 4)
                      : dec_file + ".out";
        }
        tblz::write_file(out, table.data());
        std::cout << "wrote " << out << " (" << table.data().size() << " bytes, "
                  << table.row_count() << " rows)\n";
    });

    // ---- inspect ----
    auto* inspect = app.add_subcommand("inspect", "print archive header and block layout");
    std::string ins_file;
    inspect->add_option("file", ins_file, "input archive")->required();
    inspect->callback([&] {
        const auto bytes = tblz::read_file(ins_file);
        const auto info = tblz::archive_inspect(bytes);
        std::cout << "version: " << static_cast<int>(info.version) << "\n"
                  << "record_len: " << info.record_len << "\n"
                  << "rows: " << info.row_count << "\n"
                  << "backend: " << info.plan.backend.to_string() << "\n"
                  << "crc32: " << info.crc << "\n"
                  << "classes: " << info.block_sizes.size() << "\n";
        const auto classes = info.plan.partition.classes();
        for (std::size_t k = 0; k < classes.size(); ++k) {
            std::cout << "class " << k << ": columns";
            for (auto c : classes[k]) std::cout << ' ' << c;
            std::cout << " (" << info.block_sizes[k] << " bytes)\n";
        }
    });

    // ---- bench ----
    auto* bench = app.add_subcommand("bench", "train on a row prefix, measure archive size on the rest");
    std::vector<std::string> bench_files;
    CommonOpts bench_opts;
    std::string bench_mode = "all";
    double bench_fraction = 0.05;
    std::uint32_t bench_runs = 5;
    bench->add_option("files", bench_files, "input tables")->required();
    bench->add_option("--record-len", bench_opts.record_len, "bytes per row")->required();
    bench->add_option("--mode", bench_mode, "planner to bench, or 'all'")->capture_default_str();
    bench->add_option("--train-fraction", bench_fraction, "leading fraction of rows used to train")
        ->capture_default_str();
    bench->add_option("--runs", bench_runs, "timing repetitions per phase (odd)")
        ->capture_default_str();
    add_tuning(bench, bench_opts, false);
    bench->callback([&] {
        tblz::BenchOptions opt;
        opt.backend = tblz::BackendConfig::parse(bench_opts.backend);
        opt.train_fraction = bench_fraction;
        opt.runs = bench_runs;
        opt.threads = bench_opts.threads;
        opt.seed = bench_opts.seed;
        opt.tour_budget = bench_opts.budget;
        std::vector<tblz::PlanMode> modes;
        if (bench_mode == "all")
            modes = {tblz::PlanMode::identity, tblz::PlanMode::dp, tblz::PlanMode::greedy,
                     tblz::PlanMode::greedyt, tblz::PlanMode::tsp};
        else
            modes = {tblz::parse_mode(bench_mode)};
        std::cout << tblz::bench_csv_header() << "\n";
        for (const auto& file : bench_files) {
            const auto table = tblz::load_table(file, bench_opts.record_len);
            const auto label = std::filesystem::path(file).filename().string();
            for (const auto& row : tblz::bench_table(label, table, modes, opt))
                std::cout << tblz::bench_csv_row(row) << "\n";
        }
    });

    // ---- tourscan ----
    auto* tourscan = app.add_subcommand(
        "tourscan", "sample tours and relate tour weight to achieved compressed cost");
    std::string scan_file;
    CommonOpts scan_opts;
    std::uint32_t scan_count = 30;
    tourscan->add_option("file", scan_file, "input table")->required();
    tourscan->add_option("--record-len", scan_opts.record_len, "bytes per row")->required();
    tourscan->add_option("--count", scan_count, "number of tours to sample")
        ->capture_default_str();
    add_tuning(tourscan, scan_opts, false);
    tourscan->callback([&] {
        const auto table = tblz::load_table(scan_file, scan_opts.record_len);
        tblz::CostOracle oracle(table, tblz::BackendConfig::parse(scan_opts.backend));
        const auto graph = tblz::build_graph(oracle, scan_opts.threads);
        const auto samples =
            tblz::tour_sequence_scan(graph, oracle, scan_count, scan_opts.seed, scan_opts.budget);
        std::vector<std::uint64_t> weights, costs;
        std::cout << "tour_weight,compressed_size\n";
        for (const auto& [w, c] : samples) {
            std::cout << w << ',' << c << "\n";
            weights.push_back(w);
            costs.push_back(c);
        }
        const auto rho = tblz::spearman(weights, costs);
        if (rho)
            std::cout << "# spearman " << *rho << "\n";
        else
            std::cout << "# spearman undefined\n";
    });

    // ---- verify ----
    auto* verify = app.add_subcommand("verify", "machine-check the phrase and run-count laws");
    tblz::theory::VerifyOptions vopts;
    bool vquick = false;
    verify->add_option("--seed", vopts.seed, "seed for sampled instances")->capture_default_str();
    verify->add_option("--samples", vopts.samples, "random graphs per sampled size")
        ->capture_default_str();
    verify->add_option("--exhaustive-max", vopts.exhaustive_max,
                       "largest exhaustively swept vertex count")
        ->capture_default_str();
    verify->add_option("--sampled-max", vopts.sampled_max, "largest sampled vertex count")
        ->capture_default_str();
    verify->add_flag("--quick", vquick, "smaller families for a fast smoke pass");
    verify->callback([&] {
        if (vquick) {
            vopts.exhaustive_max = 3;
            vopts.sampled_max = 4;
            vopts.samples = 8;
            vopts.multiset_samples = 40;
            vopts.cover_cap = 16;
        }
        const auto results = tblz::theory::verify_theory(vopts);
        bool all_ok = true;
        for (const auto& r : results) {
            std::cout << r.name << ": " << r.checks << " checks, "
                      << (r.ok() ? ok_mark() : fail_mark()) << "\n";
            for (const auto& f : r.failures) std::cout << "  " << f << "\n";
            all_ok = all_ok && r.ok();
        }
        if (!all_ok) throw tblz::ArgError("verification failed");
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    } catch (const tblz::Error& e) {
        std::cerr << "tblz: error: " << e.what() << "\n";
        return exit_code(e);
    } catch (const std::exception& e) {
        std::cerr << "tblz: error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
