#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "tblz/partition.hpp"

using tblz::BackendConfig;
using tblz::BackendKind;
using tblz::Bytes;
using tblz::ColumnSeq;
using tblz::Partition;
using tblz::SyntheticOracle;
using tblz::Table;

namespace {

Table random_table(std::mt19937_64& rng, std::uint32_t cols, std::uint64_t rows, int sigma) {
    Bytes data(cols * rows);
    for (auto& b : data) b = static_cast<std::uint8_t>(rng() % sigma);
    return Table(cols, std::move(data));
}

// group labels drawn uniformly; permuted layouts exercise non-contiguous groups
SyntheticOracle random_synthetic(std::mt19937_64& rng, std::uint32_t n, std::uint64_t discount) {
    std::vector<std::uint32_t> groups(n);
    const std::uint32_t k = 1 + rng() % n;
    for (auto& g : groups) g = rng() % k;
    std::vector<std::uint64_t> base(n);
    for (auto& b : base) b = 50 + rng() % 50;
    return SyntheticOracle(std::move(groups), std::move(base), discount);
}

}  // namespace

TEST_CASE("partition classes split at the cuts") {
    const Partition p{{3, 1, 0, 2}, {1, 3}};
    const auto classes = p.classes();
    REQUIRE(classes.size() == 3);
    CHECK(classes[0] == ColumnSeq{3});
    CHECK(classes[1] == ColumnSeq{1, 0});
    CHECK(classes[2] == ColumnSeq{2});
    CHECK(Partition{{}, {}}.classes().empty());
    CHECK(Partition{{0}, {}}.classes() == std::vector<ColumnSeq>{{0}});
}

TEST_CASE("partition validation rejects malformed layouts") {
    REQUIRE_NOTHROW(tblz::validate_partition({{1, 0}, {1}}, 2));
    REQUIRE_NOTHROW(tblz::validate_partition({{1, 0}, {}}, 2));
    // wrong column count
    REQUIRE_THROWS_AS(tblz::validate_partition({{0}, {}}, 2), tblz::FormatError);
    // column out of range
    REQUIRE_THROWS_AS(tblz::validate_partition({{0, 2}, {}}, 2), tblz::FormatError);
    // repeated column
    REQUIRE_THROWS_AS(tblz::validate_partition({{0, 0}, {}}, 2), tblz::FormatError);
    // cut at 0, cut at n, non-ascending cuts
    REQUIRE_THROWS_AS(tblz::validate_partition({{1, 0}, {0}}, 2), tblz::FormatError);
    REQUIRE_THROWS_AS(tblz::validate_partition({{1, 0}, {2}}, 2), tblz::FormatError);
    REQUIRE_THROWS_AS(tblz::validate_partition({{2, 1, 0}, {2, 1}}, 3), tblz::FormatError);
}

TEST_CASE("dynamic program matches exhaustive search on real backends") {
    std::mt19937_64 rng(101);
    const BackendConfig backends[] = {
        {BackendKind::deflate, 6}, {BackendKind::rle, 0}, {BackendKind::lz77_phrases, 0}};
    for (int trial = 0; trial < 12; ++trial) {
        const std::uint32_t n = 2 + rng() % 9;  // up to 10 columns
        const Table t = random_table(rng, n, 32, 4);
        for (const auto& cfg : backends) {
            tblz::CostOracle od(t, cfg);
            const Partition dp = tblz::dp_partition(od, tblz::identity_order(n));
            tblz::CostOracle ob(t, cfg);
            const Partition bf = tblz::brute_force_contiguous(ob, tblz::identity_order(n));
            INFO("n=" << n << " backend=" << cfg.to_string());
            CHECK(tblz::total_cost(od, dp) == tblz::total_cost(od, bf));
            CHECK(dp == bf);  // identical tie-breaks, not just equal cost
        }
    }
}

TEST_CASE("dynamic program matches exhaustive search on synthetic costs") {
    std::mt19937_64 rng(103);
    for (int trial = 0; trial < 20; ++trial) {
        const std::uint32_t n = 2 + rng() % 9;
        auto oracle = random_synthetic(rng, n, trial % 4 == 0 ? 0 : 3 + rng() % 5);
        auto copy = oracle;
        const Partition dp = tblz::dp_partition(oracle, tblz::identity_order(n));
        const Partition bf = tblz::brute_force_contiguous(copy, tblz::identity_order(n));
        CHECK(dp == bf);
        CHECK(tblz::total_cost(oracle, dp) == tblz::total_cost(oracle, bf));
    }
}

TEST_CASE("zero discount yields all singletons") {
    // every grouping is cost-neutral; the tie-break keeps final classes short
    SyntheticOracle o({0, 0, 0, 0}, {5, 6, 7, 8}, 0);
    const Partition p = tblz::dp_partition(o, tblz::identity_order(4));
    CHECK(p.boundaries == std::vector<std::uint32_t>{1, 2, 3});
    CHECK(p.classes().size() == 4);
}

TEST_CASE("planners recover contiguous groups exactly") {
    std::mt19937_64 rng(107);
    for (int trial = 0; trial < 20; ++trial) {
        const std::uint32_t n = 3 + rng() % 8;
        // carve identity order into contiguous groups of random widths
        std::vector<std::uint32_t> groups(n);
        std::vector<std::uint32_t> cuts;
        std::uint32_t g = 0;
        for (std::uint32_t i = 0; i < n;) {
            std::uint32_t w = 1 + rng() % 3;
            w = std::min(w, n - i);
            for (std::uint32_t k = 0; k < w; ++k) groups[i + k] = g;
            i += w;
            if (i < n) cuts.push_back(i);
            ++g;
        }
        std::vector<std::uint64_t> base(n, 60);
        SyntheticOracle o(groups, base, 2);

        const Partition want{tblz::identity_order(n), cuts};
        auto o1 = o;
        auto o2 = o;
        auto o3 = o;
        CHECK(tblz::dp_partition(o1, tblz::identity_order(n)) == want);
        CHECK(tblz::greedy_partition(o2, tblz::identity_order(n)) == want);
        CHECK(tblz::greedyt_partition(o3, tblz::identity_order(n)) == want);
    }
}

TEST_CASE("pairwise greedy can miss a split the dynamic program finds") {
    // columns 0 and 2 share a group, 1 sits between them: no adjacent pair
    // interacts, so greedy keeps singletons and pays the full base cost
    SyntheticOracle o({0, 1, 0}, {10, 10, 10}, 4);
    auto og = o;
    const Partition greedy = tblz::greedy_partition(og, tblz::identity_order(3));
    CHECK(greedy.classes().size() == 3);

    // on the interaction-sorted order the program can group 0 and 2
    auto od = o;
    const Partition dp = tblz::dp_partition(od, ColumnSeq{0, 2, 1});
    CHECK(tblz::total_cost(od, dp) < tblz::total_cost(og, greedy));
    CHECK(dp.classes().front() == ColumnSeq{0, 2});
}

TEST_CASE("planner query counts match their contracts") {
    std::mt19937_64 rng(109);
    for (const std::uint32_t n : {2u, 7u, 10u}) {
        const Table t = random_table(rng, n, 16, 3);

        tblz::CostOracle og(t, {BackendKind::rle, 0});
        tblz::greedy_partition(og, tblz::identity_order(n));
        CHECK(og.call_count() == 2 * n - 1);

        tblz::CostOracle ot(t, {BackendKind::rle, 0});
        tblz::greedyt_partition(ot, tblz::identity_order(n));
        CHECK(ot.call_count() == 2 * (n - 1) + 1);

        tblz::CostOracle od(t, {BackendKind::rle, 0});
        tblz::dp_partition(od, tblz::identity_order(n));
        CHECK(od.call_count() == n * (n + 1) / 2);
    }
}

TEST_CASE("threaded interval costs agree with serial") {
    std::mt19937_64 rng(113);
    const Table t = random_table(rng, 9, 24, 4);
    tblz::CostOracle serial(t, {BackendKind::deflate, 6});
    tblz::CostOracle threaded(t, {BackendKind::deflate, 6});
    const Partition a = tblz::dp_partition(serial, tblz::identity_order(9), 1);
    const Partition b = tblz::dp_partition(threaded, tblz::identity_order(9), 4);
    CHECK(a == b);
}

TEST_CASE("exhaustive search is capped") {
    SyntheticOracle o(std::vector<std::uint32_t>(21, 0), std::vector<std::uint64_t>(21, 5), 0);
    REQUIRE_THROWS_AS(tblz::brute_force_contiguous(o, tblz::identity_order(21)), tblz::ArgError);
}
