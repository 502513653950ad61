#include "hmgroup/errors.hpp"

namespace hmgroup {

ParseError::ParseError(std::size_t row, const std::string& what)
    : InputError("row " + std::to_string(row) + ": " + what), row_(row) {}

UnschedulableError::UnschedulableError(std::size_t receiver)
    : std::runtime_error("receiver " + std::to_string(receiver + 1) +
                         " is unschedulable: no feasible rate"),
      receiver_(receiver) {}

}  // namespace hmgroup
