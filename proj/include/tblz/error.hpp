#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace tblz {

// Error categories map onto CLI exit codes: format -> 2, crc -> 3,
// everything else -> 1.
enum class Errc {
    argument,
    io,
    format,
    crc,
};

class Error : public std::runtime_error {
public:
    Error(Errc code, std::string msg) : std::runtime_error(std::move(msg)), code_(code) {}
    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

struct ArgError : Error {
    explicit ArgError(std::string msg) : Error(Errc::argument, std::move(msg)) {}
};

struct IoError : Error {
    explicit IoError(std::string msg) : Error(Errc::io, std::move(msg)) {}
};

struct FormatError : Error {
    explicit FormatError(std::string msg) : Error(Errc::format, std::move(msg)) {}
};

// File size not divisible by the record length; keeps the remainder so
// callers can report exactly how many trailing bytes are left over.
struct RecordSizeError : FormatError {
    RecordSizeError(std::uint64_t file_size, std::uint32_t record_len, std::uint64_t rem)
        : FormatError("file size " + std::to_string(file_size) + " is not a multiple of record length " +
                      std::to_string(record_len) + " (remainder " + std::to_string(rem) + " bytes)"),
          file_size(file_size),
          record_len(record_len),
          remainder(rem) {}

    std::uint64_t file_size;
    std::uint32_t record_len;
    std::uint64_t remainder;
};

// Plan text rejected; line is 1-based.
struct PlanParseError : FormatError {
    PlanParseError(std::size_t line, const std::string& what_line)
        : FormatError("plan parse error at line " + std::to_string(line) + ": " + what_line), line(line) {}

    std::size_t line;
};

// Archive block shorter than its declared length.
struct TruncationError : FormatError {
    explicit TruncationError(std::size_t class_index)
        : FormatError("archive truncated inside block for class " + std::to_string(class_index)),
          class_index(class_index) {}

    std::size_t class_index;
};

struct CrcError : Error {
    CrcError(std::uint32_t expected, std::uint32_t actual)
        : Error(Errc::crc, "crc mismatch: stored " + std::to_string(expected) + ", recomputed " + std::to_string(actual)),
          expected(expected),
          actual(actual) {}

    std::uint32_t expected;
    std::uint32_t actual;
};

}  // namespace tblz
