#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fano {

/// Base class for all library errors.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid user-facing input: malformed setups, dimension mismatches,
/// out-of-range parameters, bad files.
class invalid_input : public error {
 public:
  using error::error;
};

/// Text could not be parsed; carries the byte offset of the failure.
class parse_error : public invalid_input {
 public:
  parse_error(const std::string& message, std::size_t position)
      : invalid_input(message + " (at position " + std::to_string(position) + ")"),
        position_(position) {}

  [[nodiscard]] std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Inversion or division by zero in a field.
class division_by_zero : public error {
 public:
  using error::error;
};

}  // namespace fano
