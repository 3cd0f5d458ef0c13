#pragma once

#include <stdexcept>
#include <string>

namespace chargeq {

// Error categories map 1:1 onto CLI exit codes.
enum class ErrorKind {
  invalid_input = 2,   // bad file, bad schema, parse error, bad device
  infeasible = 3,      // allocation cannot be satisfied
  size_cap = 4,        // simulation dimension above the desk-scale cap
  contract = 5,        // internal contract violation
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  int exit_code() const noexcept { return static_cast<int>(kind_); }

 private:
  ErrorKind kind_;
};

inline const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::invalid_input: return "invalid-input";
    case ErrorKind::infeasible: return "infeasible";
    case ErrorKind::size_cap: return "size-cap";
    case ErrorKind::contract: return "contract";
  }
  return "unknown";
}

}  // namespace chargeq
