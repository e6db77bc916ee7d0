#pragma once

#include <stdexcept>
#include <string>

namespace csl {

enum class ErrorKind {
    invalid_argument,
    budget_exceeded,
    ambiguous,
    degenerate,
    stuck_chain,
    lattice_mismatch,
    io,
};

/// Library-wide exception. The kind lets front ends map failures to exit codes.
class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string &message);

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string &message);

} // namespace csl
