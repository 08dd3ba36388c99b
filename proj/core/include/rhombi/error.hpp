#pragma once

#include <stdexcept>
#include <string>

namespace rhombi {

/// Input violates a documented precondition or invariant.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A file or document could not be parsed. `where()` names the line or
/// field that failed.
class ParseError : public ValidationError {
 public:
  ParseError(std::string where, const std::string& what)
      : ValidationError(where.empty() ? what : where + ": " + what),
        where_(std::move(where)) {}

  const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

/// Two face layouts could not be paired magnet-for-magnet.
class PairingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Genderless docking needs faces with at least 2-fold rotational symmetry.
class UnsupportedSymmetry : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rhombi
