#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include <sys/wait.h>

#include "tblz/table.hpp"

namespace fs = std::filesystem;
using tblz::Bytes;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

// run the tool through the shell with stdout/stderr captured in files
RunResult run_tool(const std::string& args, const fs::path& dir) {
    const char* bin = std::getenv("TBLZ_BIN");
    REQUIRE(bin != nullptr);
    const fs::path out = dir / "stdout.txt";
    const fs::path err = dir / "stderr.txt";
    const std::string cmd = "TBLZ_NO_COLOR=1 '" + std::string(bin) + "' " + args + " > '" +
                            out.string() + "' 2> '" + err.string() + "'";
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

struct Workspace {
    fs::path dir;

    Workspace() {
        dir = fs::temp_directory_path() /
              ("tblz-cli-" + std::to_string(std::random_device{}()));
        fs::create_directories(dir);
    }
    ~Workspace() { fs::remove_all(dir); }

    fs::path file(const std::string& name) const { return dir / name; }
};

// two duplicated column pairs buried in noise give the planner real structure
Bytes structured_rows(std::uint64_t rows) {
    std::mt19937_64 rng(20260816);
    Bytes data;
    data.reserve(rows * 8);
    for (std::uint64_t r = 0; r < rows; ++r) {
        const auto a = static_cast<std::uint8_t>(rng() % 4);
        const auto b = static_cast<std::uint8_t>(rng() % 4);
        const std::uint8_t rec[8] = {a, a, b, b,
                                     static_cast<std::uint8_t>(rng() % 250),
                                     static_cast<std::uint8_t>(rng() % 250),
                                     static_cast<std::uint8_t>(rng() % 250),
                                     static_cast<std::uint8_t>(rng() % 250)};
        data.insert(data.end(), rec, rec + 8);
    }
    return data;
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("cli round trips a table through plan, archive, and back") {
    Workspace ws;
    const Bytes original = structured_rows(64);
    tblz::write_file(ws.file("data.bin"), original);

    const auto train = run_tool("train '" + ws.file("data.bin").string() +
                                    "' --record-len 8 --train-fraction 1.0 --mode dp",
                                ws.dir);
    CAPTURE(train.err);
    REQUIRE(train.exit_code == 0);
    CHECK(contains(train.out, "wrote "));
    CHECK(contains(train.out, "classes"));
    REQUIRE(fs::exists(ws.file("data.bin.plan")));

    const auto comp = run_tool("compress '" + ws.file("data.bin").string() + "' --plan '" +
                                   ws.file("data.bin.plan").string() + "'",
                               ws.dir);
    CAPTURE(comp.err);
    REQUIRE(comp.exit_code == 0);
    REQUIRE(fs::exists(ws.file("data.bin.tbz")));

    const auto ins = run_tool("inspect '" + ws.file("data.bin.tbz").string() + "'", ws.dir);
    REQUIRE(ins.exit_code == 0);
    CHECK(contains(ins.out, "record_len: 8"));
    CHECK(contains(ins.out, "rows: 64"));
    CHECK(contains(ins.out, "backend: deflate:6"));
    CHECK(contains(ins.out, "class 0: columns"));

    const auto dec = run_tool("decompress '" + ws.file("data.bin.tbz").string() + "' -o '" +
                                  ws.file("restored.bin").string() + "'",
                              ws.dir);
    CAPTURE(dec.err);
    REQUIRE(dec.exit_code == 0);
    CHECK(tblz::read_file(ws.file("restored.bin")) == original);
}

TEST_CASE("cli compresses without a plan by training in-process") {
    Workspace ws;
    const Bytes original = structured_rows(32);
    tblz::write_file(ws.file("t.bin"), original);
    const auto comp = run_tool(
        "compress '" + ws.file("t.bin").string() + "' --record-len 8 --mode greedyt", ws.dir);
    CAPTURE(comp.err);
    REQUIRE(comp.exit_code == 0);
    const auto dec = run_tool("decompress '" + ws.file("t.bin.tbz").string() + "'", ws.dir);
    REQUIRE(dec.exit_code == 0);
    CHECK(tblz::read_file(ws.file("t.bin")) == original);  // default strips .tbz
}

TEST_CASE("cli maps malformed inputs to exit code 2") {
    Workspace ws;
    // a file that is not an archive
    tblz::write_file(ws.file("junk.tbz"), Bytes{'j', 'u', 'n', 'k', 'j', 'u', 'n', 'k'});
    CHECK(run_tool("decompress '" + ws.file("junk.tbz").string() + "'", ws.dir).exit_code == 2);

    // record length that leaves a partial trailing record
    tblz::write_file(ws.file("odd.bin"), Bytes{1, 2, 3, 4, 5});
    const auto r = run_tool("train '" + ws.file("odd.bin").string() + "' --record-len 2", ws.dir);
    CHECK(r.exit_code == 2);
    CHECK(contains(r.err, "remainder"));

    // unparsable plan
    const std::string bad = "TCPLAN 1\nrecord_len 2\nbackend rle\nperm 0 7\ncuts\n";
    tblz::write_file(ws.file("bad.plan"), Bytes(bad.begin(), bad.end()));
    tblz::write_file(ws.file("two.bin"), Bytes{1, 2, 3, 4});
    const auto c = run_tool("compress '" + ws.file("two.bin").string() + "' --plan '" +
                                ws.file("bad.plan").string() + "'",
                            ws.dir);
    CHECK(c.exit_code == 2);
    CHECK(contains(c.err, "line 4"));
}

TEST_CASE("cli maps checksum mismatches to exit code 3") {
    Workspace ws;
    tblz::write_file(ws.file("c.bin"), Bytes(128, 7));  // 64 rows of two constant columns
    const std::string plan = "TCPLAN 1\nrecord_len 2\nbackend rle\nperm 0 1\ncuts 1\n";
    tblz::write_file(ws.file("c.plan"), Bytes(plan.begin(), plan.end()));
    REQUIRE(run_tool("compress '" + ws.file("c.bin").string() + "' --plan '" +
                         ws.file("c.plan").string() + "'",
                     ws.dir)
                .exit_code == 0);

    // flip the run byte of the final block; the run stays decodable but wrong
    Bytes arc = tblz::read_file(ws.file("c.bin.tbz"));
    arc[arc.size() - 2] ^= 0x01;
    tblz::write_file(ws.file("c.bin.tbz"), arc);
    const auto r = run_tool("decompress '" + ws.file("c.bin.tbz").string() + "'", ws.dir);
    CHECK(r.exit_code == 3);
    CHECK(contains(r.err, "crc"));
}

TEST_CASE("cli maps missing files and bad flags to exit code 1") {
    Workspace ws;
    CHECK(run_tool("train '" + ws.file("absent.bin").string() + "' --record-len 4", ws.dir)
              .exit_code == 1);
    CHECK(run_tool("decompress '" + ws.file("absent.tbz").string() + "'", ws.dir).exit_code == 1);
    CHECK(run_tool("", ws.dir).exit_code == 1);  // a subcommand is required
    tblz::write_file(ws.file("d.bin"), Bytes{1, 2, 3, 4});
    CHECK(run_tool("train '" + ws.file("d.bin").string() + "' --record-len 2 --backend zip4",
                   ws.dir)
              .exit_code == 2);  // unknown backend id is a format error
    // a fraction that trains on zero rows is an argument error
    CHECK(run_tool("train '" + ws.file("d.bin").string() + "' --record-len 2 --train-fraction 0.1",
                   ws.dir)
              .exit_code == 1);
}

TEST_CASE("cli bench emits one csv row per file and mode") {
    Workspace ws;
    tblz::write_file(ws.file("b.bin"), structured_rows(64));
    const auto r = run_tool("bench '" + ws.file("b.bin").string() +
                                "' --record-len 8 --mode dp --runs 1 --train-fraction 0.5",
                            ws.dir);
    CAPTURE(r.err);
    REQUIRE(r.exit_code == 0);
    REQUIRE(contains(r.out,
                     "file,mode,orig_size,comp_size,rate,vs_baseline,vs_dp,train_s,compress_s"));
    CHECK(contains(r.out, "\nb.bin,dp,"));

    // even repetition counts have no median sample
    CHECK(run_tool("bench '" + ws.file("b.bin").string() + "' --record-len 8 --runs 2", ws.dir)
              .exit_code == 1);
}

TEST_CASE("cli tourscan prints samples and a trailing rank statistic") {
    Workspace ws;
    tblz::write_file(ws.file("s.bin"), structured_rows(48));
    const auto r =
        run_tool("tourscan '" + ws.file("s.bin").string() + "' --record-len 8 --count 6", ws.dir);
    CAPTURE(r.err);
    REQUIRE(r.exit_code == 0);
    REQUIRE(contains(r.out, "tour_weight,compressed_size\n"));
    CHECK(contains(r.out, "# spearman "));
    // header + six samples + statistic
    std::size_t lines = 0;
    for (char ch : r.out) lines += ch == '\n';
    CHECK(lines == 8);
}

TEST_CASE("cli verify reports every suite and honors the quick flag") {
    Workspace ws;
    const auto r = run_tool("verify --quick", ws.dir);
    CAPTURE(r.err);
    REQUIRE(r.exit_code == 0);
    for (const char* name : {"lz77-string-boundaries", "lz77-vertex-string-phrases",
                             "lz77-edge-string-phrases", "lz77-standard-batch-count",
                             "rle-schedule-optimal", "rle-table-standard-form"}) {
        CHECK(contains(r.out, std::string(name) + ": "));
    }
    CHECK(contains(r.out, "pass"));
    CHECK_FALSE(contains(r.out, "FAIL"));
    CHECK_FALSE(contains(r.out, "\x1b"));  // color stays off under TBLZ_NO_COLOR
}
