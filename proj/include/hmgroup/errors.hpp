#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hmgroup {

/// Invalid argument or configuration supplied by the caller.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Malformed text input. `row()` is 1-based and counts the header line.
class ParseError : public InputError {
public:
    ParseError(std::size_t row, const std::string& what);

    std::size_t row() const noexcept { return row_; }

private:
    std::size_t row_;
};

/// A requested enumeration or brute-force search exceeds its size cap.
class CapExceededError : public InputError {
public:
    using InputError::InputError;
};

/// A receiver has no feasible single-receiver rate. `receiver()` is 0-based.
class UnschedulableError : public std::runtime_error {
public:
    explicit UnschedulableError(std::size_t receiver);

    std::size_t receiver() const noexcept { return receiver_; }

private:
    std::size_t receiver_;
};

}  // namespace hmgroup
