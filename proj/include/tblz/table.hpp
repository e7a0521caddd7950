#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <span>
#include <string>
#include <vector>

#include "tblz/error.hpp"

namespace tblz {

using Bytes = std::vector<std::uint8_t>;

// Ordered list of distinct column indices. A single column is a size-1 seq;
// catenation is vector concatenation.
using ColumnSeq = std::vector<std::uint32_t>;

inline ColumnSeq cat(const ColumnSeq& a, const ColumnSeq& b) {
    ColumnSeq r;
    r.reserve(a.size() + b.size());
    r.insert(r.end(), a.begin(), a.end());
    r.insert(r.end(), b.begin(), b.end());
    return r;
}

inline ColumnSeq identity_order(std::uint32_t n) {
    ColumnSeq r(n);
    for (std::uint32_t i = 0; i < n; ++i) r[i] = i;
    return r;
}

// Fixed-length-record table: row-major bytes, record_len columns of one byte each.
class Table {
public:
    Table() = default;

    Table(std::uint32_t record_len, Bytes data) : record_len_(record_len), data_(std::move(data)) {
        if (record_len_ == 0) throw ArgError("record length must be positive");
        if (data_.size() % record_len_ != 0)
            throw RecordSizeError(data_.size(), record_len_, data_.size() % record_len_);
    }

    std::uint32_t record_len() const noexcept { return record_len_; }
    std::uint64_t row_count() const noexcept { return record_len_ ? data_.size() / record_len_ : 0; }
    const Bytes& data() const noexcept { return data_; }

    std::uint8_t cell(std::uint64_t row, std::uint32_t col) const {
        return data_[row * record_len_ + col];
    }

    // First k rows as a new table (training prefix).
    Table prefix(std::uint64_t rows) const {
        if (rows > row_count()) throw ArgError("prefix larger than table");
        Bytes d(data_.begin(), data_.begin() + static_cast<std::ptrdiff_t>(rows) * record_len_);
        return Table(record_len_, std::move(d));
    }

    // Rows [from, row_count) as a new table.
    Table suffix(std::uint64_t from) const {
        if (from > row_count()) throw ArgError("suffix start beyond table");
        Bytes d(data_.begin() + static_cast<std::ptrdiff_t>(from) * record_len_, data_.end());
        return Table(record_len_, std::move(d));
    }

private:
    std::uint32_t record_len_ = 1;
    Bytes data_;
};

inline void check_columns(const Table& t, std::span<const std::uint32_t> cols) {
    for (auto c : cols)
        if (c >= t.record_len())
            throw ArgError("column index " + std::to_string(c) + " out of range for record length " +
                           std::to_string(t.record_len()));
}

// Row-major projection: for each row, the bytes of the selected columns in order.
inline Bytes project_rowmajor(const Table& t, std::span<const std::uint32_t> cols) {
    check_columns(t, cols);
    Bytes out;
    out.reserve(t.row_count() * cols.size());
    const auto rl = t.record_len();
    const auto* base = t.data().data();
    for (std::uint64_t r = 0; r < t.row_count(); ++r) {
        const auto* rec = base + r * rl;
        for (auto c : cols) out.push_back(rec[c]);
    }
    return out;
}

// Column-major projection: each selected column's bytes in full, column after column.
inline Bytes project_colmajor(const Table& t, std::span<const std::uint32_t> cols) {
    check_columns(t, cols);
    Bytes out;
    out.reserve(t.row_count() * cols.size());
    const auto rl = t.record_len();
    const auto* base = t.data().data();
    for (auto c : cols)
        for (std::uint64_t r = 0; r < t.row_count(); ++r) out.push_back(base[r * rl + c]);
    return out;
}

inline Bytes read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    Bytes data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw IoError("read failed on " + path.string());
    return data;
}

inline void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> data) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
    if (!out) throw IoError("write failed on " + path.string());
}

inline Table load_table(const std::filesystem::path& path, std::uint32_t record_len) {
    if (record_len == 0) throw ArgError("record length must be positive");
    return Table(record_len, read_file(path));
}

}  // namespace tblz
