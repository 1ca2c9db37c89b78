#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace monodec {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input text (bad JSON syntax). Carries the byte offset reported
// by the underlying parser.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t byte_offset)
        : Error(msg), byte_offset_(byte_offset) {}

    std::size_t byte_offset() const noexcept { return byte_offset_; }

private:
    std::size_t byte_offset_ = 0;
};

// Structurally valid JSON that does not follow the trace/decomposition
// schema (wrong types, unknown access mode, repeat count < 1, ...).
class SchemaError : public Error {
public:
    SchemaError(const std::string& msg, std::string location = {})
        : Error(location.empty() ? msg : msg + " (at " + location + ")"),
          location_(std::move(location)) {}

    const std::string& location() const noexcept { return location_; }

private:
    std::string location_;
};

// Resource guards tripped (repeat-block nesting depth, expansion size).
class LimitError : public Error {
public:
    using Error::Error;
};

// Violated operation precondition or domain rule. Carries a stable short
// code such as UNASSIGNED_ENTITY, WEIGHT_SUM, RANK_DEFICIENT.
class DomainError : public Error {
public:
    DomainError(std::string code, const std::string& msg)
        : Error(code + ": " + msg), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

} // namespace monodec
