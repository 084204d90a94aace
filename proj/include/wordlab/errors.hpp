#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wordlab {

/// Malformed word or group text. `position()` is the 0-based offset of the
/// offending character.
class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::invalid_argument(what + " at position " + std::to_string(position)),
        message_(what),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }
  /// The diagnostic without the position suffix.
  const std::string& message() const noexcept { return message_; }

 private:
  std::string message_;
  std::size_t position_;
};

/// Argument outside the mathematical domain of a function (e.g. rho not in (0,1]).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A configured work or memory budget would be exceeded. Never silently truncated.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace wordlab
