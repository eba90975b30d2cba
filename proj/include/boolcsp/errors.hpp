#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace boolcsp {

// Base for every error the library raises. The CLI maps the concrete
// type onto an exit code (usage/parse problems -> 2, everything else -> 1).
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

// The operation is well defined in general but not for this input shape
// (e.g. projecting away the last column).
class Unsupported : public Error {
public:
    using Error::Error;
};

class NotAffine : public Error {
public:
    using Error::Error;
};

class NotInClass : public Error {
public:
    using Error::Error;
};

class NoWitness : public Error {
public:
    using Error::Error;
};

class ResourceLimit : public Error {
public:
    using Error::Error;
};

class OutOfScope : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line)
        : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

} // namespace boolcsp
