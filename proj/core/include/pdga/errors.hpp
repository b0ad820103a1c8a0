#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pdga {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed polynomial text or declaration file. `offset` is a byte offset
/// into the text that was being parsed.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t offset)
        : Error(what + " at offset " + std::to_string(offset)), offset_(offset), message_(what) {}

    std::size_t offset() const noexcept { return offset_; }
    const std::string& message() const noexcept { return message_; }

private:
    std::size_t offset_;
    std::string message_;
};

class UnknownVariable : public ParseError {
public:
    UnknownVariable(const std::string& name, std::size_t offset)
        : ParseError("unknown variable '" + name + "'", offset), name_(name) {}

    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

class RingMismatch : public Error {
public:
    using Error::Error;
};

/// Raised when an intermediate polynomial exceeds the configured degree cap.
class DegreeGuardExceeded : public Error {
public:
    DegreeGuardExceeded(int degree, int cap)
        : Error("degree guard exceeded: intermediate degree " + std::to_string(degree) + " > cap " +
                std::to_string(cap)),
          degree_(degree), cap_(cap) {}

    int degree() const noexcept { return degree_; }
    int cap() const noexcept { return cap_; }

private:
    int degree_;
    int cap_;
};

/// An operation was called outside its documented domain.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// The two independent routes of a dual check disagreed. Always a bug.
class InternalInconsistency : public Error {
public:
    using Error::Error;
};

}  // namespace pdga
