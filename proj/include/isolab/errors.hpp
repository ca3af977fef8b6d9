#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace isolab {

// Base for every error the library raises on purpose.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Caller broke an operation's precondition (bad shape, bad parameter, n = 0 ...).
class ContractError : public Error {
public:
    using Error::Error;
};

// Malformed input text. `position` is a byte offset (graph6) or a 1-based line
// number (edge lists); `what()` already names it.
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t position)
        : Error(message), position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

// A computation would exceed a configured size or work budget.
class ResourceError : public Error {
public:
    using Error::Error;
};

// An iterative numeric method failed to converge.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

// Bundled corpus failed one of its own manifest checks.
class CorpusIntegrityError : public Error {
public:
    using Error::Error;
};

}  // namespace isolab
