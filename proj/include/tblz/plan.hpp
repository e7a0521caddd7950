#pragma once

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "tblz/backend.hpp"
#include "tblz/partition.hpp"
#include "tblz/table.hpp"

namespace tblz {

// Trained column layout: which order to write the columns in, where the class
// cuts fall, and which backend the classes are coded with.
struct Plan {
    std::uint32_t record_len = 0;
    BackendConfig backend;
    Partition partition;

    bool operator==(const Plan&) const = default;
};

inline Plan make_identity_plan(std::uint32_t record_len, BackendConfig backend) {
    return Plan{record_len, backend, Partition{identity_order(record_len), {}}};
}

inline std::string plan_to_text(const Plan& p) {
    std::ostringstream out;
    out << "TCPLAN 1\n";
    out << "record_len " << p.record_len << "\n";
    out << "backend " << p.backend.to_string() << "\n";
    out << "perm";
    for (auto c : p.partition.order) out << ' ' << c;
    out << "\ncuts";
    for (auto b : p.partition.boundaries) out << ' ' << b;
    out << "\n";
    return out.str();
}

namespace detail {

inline std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::size_t at = 0;
    while (at < text.size()) {
        std::size_t nl = text.find('\n', at);
        if (nl == std::string::npos) {
            lines.push_back(text.substr(at));
            break;
        }
        lines.push_back(text.substr(at, nl - at));
        at = nl + 1;
    }
    return lines;
}

inline std::vector<std::uint64_t> parse_fields(const std::string& line, const std::string& keyword,
                                               std::size_t lineno) {
    if (line.rfind(keyword, 0) != 0 || (line.size() > keyword.size() && line[keyword.size()] != ' '))
        throw PlanParseError(lineno, "expected '" + keyword + " ...', got '" + line + "'");
    std::vector<std::uint64_t> vals;
    std::size_t at = keyword.size();
    while (at < line.size()) {
        while (at < line.size() && line[at] == ' ') ++at;
        if (at >= line.size()) break;
        std::uint64_t v = 0;
        const auto* first = line.data() + at;
        const auto* last = line.data() + line.size();
        auto [ptr, ec] = std::from_chars(first, last, v);
        if (ec != std::errc{} || (ptr != last && *ptr != ' '))
            throw PlanParseError(lineno, "bad number in '" + line + "'");
        vals.push_back(v);
        at = static_cast<std::size_t>(ptr - line.data());
    }
    return vals;
}

}  // namespace detail

inline Plan plan_from_text(const std::string& text) {
    auto lines = detail::split_lines(text);
    while (!lines.empty() && lines.back().empty()) lines.pop_back();
    if (lines.size() != 5) throw PlanParseError(lines.size() + 1, "plan must be exactly five lines");
    if (lines[0] != "TCPLAN 1") throw PlanParseError(1, "bad magic or version: '" + lines[0] + "'");

    const auto rl = detail::parse_fields(lines[1], "record_len", 2);
    if (rl.size() != 1 || rl[0] == 0 || rl[0] > 0xffffffffull)
        throw PlanParseError(2, "record_len needs one positive value");

    Plan p;
    p.record_len = static_cast<std::uint32_t>(rl[0]);
    if (lines[2].rfind("backend ", 0) != 0) throw PlanParseError(3, "expected 'backend <id>'");
    try {
        p.backend = BackendConfig::parse(lines[2].substr(8));
    } catch (const FormatError& e) {
        throw PlanParseError(3, e.what());
    }

    for (auto v : detail::parse_fields(lines[3], "perm", 4)) {
        if (v >= p.record_len) throw PlanParseError(4, "column index " + std::to_string(v) + " out of range");
        p.partition.order.push_back(static_cast<std::uint32_t>(v));
    }
    for (auto v : detail::parse_fields(lines[4], "cuts", 5)) {
        if (v == 0 || v >= p.partition.order.size())
            throw PlanParseError(5, "cut position " + std::to_string(v) + " out of range");
        p.partition.boundaries.push_back(static_cast<std::uint32_t>(v));
    }
    try {
        validate_partition(p.partition, p.record_len);
    } catch (const FormatError& e) {
        throw PlanParseError(4, e.what());
    }
    return p;
}

inline void plan_save(const std::filesystem::path& path, const Plan& p) {
    const std::string text = plan_to_text(p);
    write_file(path, std::span<const std::uint8_t>(reinterpret_cast<const std::uint8_t*>(text.data()),
                                                   text.size()));
}

inline Plan plan_load(const std::filesystem::path& path) {
    const Bytes raw = read_file(path);
    return plan_from_text(std::string(raw.begin(), raw.end()));
}

}  // namespace tblz
