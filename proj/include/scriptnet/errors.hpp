#pragma once

#include <stdexcept>
#include <string>

namespace scriptnet {

// Exit-code contract used by the CLI: usage errors are handled by the
// argument parser; these two map to exit codes 2 and 3.
struct DataError : std::runtime_error {
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

struct NumericError : std::runtime_error {
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ShapeError : DataError {
    explicit ShapeError(const std::string& msg) : DataError(msg) {}
};

struct ParseError : DataError {
    ParseError(const std::string& msg, std::size_t offset)
        : DataError(msg + " (offset " + std::to_string(offset) + ")"), offset(offset) {}
    std::size_t offset;
};

}  // namespace scriptnet
