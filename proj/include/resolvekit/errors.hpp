#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace resolvekit {

/// Bad parameters or a violated precondition.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Malformed textual input (graph6 records, code dumps, matrices).
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t offset)
        : std::runtime_error(what + " at offset " + std::to_string(offset)), offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

class NotConnected : public std::runtime_error {
public:
    NotConnected() : std::runtime_error("graph not connected") {}
};

/// Data that does not satisfy the algebraic promise of an operation,
/// e.g. a distance vector that is not the image of any word.
class InconsistentData : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An enumeration would exceed its configured cap.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace resolvekit
