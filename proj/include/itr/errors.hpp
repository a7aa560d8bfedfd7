#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace itr {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Structurally invalid instance or malformed argument (bad vertex id, bad block index, ...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

// Malformed instance file. `line` is 1-based, 0 when unknown.
class ParseError : public Error {
public:
    ParseError(int line, const std::string& message)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + message : message), line_(line) {}

    int line() const noexcept { return line_; }

private:
    int line_;
};

class EnumerationCapExceeded : public Error {
public:
    EnumerationCapExceeded(std::uint64_t required, std::uint64_t cap)
        : Error("enumeration cap exceeded: product of block sizes " + std::to_string(required) +
                " > cap " + std::to_string(cap)),
          required_(required), cap_(cap) {}

    std::uint64_t required() const noexcept { return required_; }
    std::uint64_t cap() const noexcept { return cap_; }

private:
    std::uint64_t required_;
    std::uint64_t cap_;
};

class PreconditionFailed : public Error {
public:
    using Error::Error;
};

// A brute-force verification requested by the caller did not hold.
class VerificationFailed : public Error {
public:
    using Error::Error;
};

// An invariant that the underlying theory guarantees was violated; indicates a bug
// or an input outside the documented preconditions.
class InternalError : public Error {
public:
    using Error::Error;
};

}  // namespace itr
