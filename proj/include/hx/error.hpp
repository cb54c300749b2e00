#pragma once

#include <stdexcept>
#include <string>

namespace hx {

enum class ErrorKind {
  input,        // malformed data, dimension mismatch, bad index
  domain,       // class is not a valid exceptional class
  mutation,     // mutation precondition violated
  structure,    // collection/helix/levelling fails a structural check
  unsupported,  // operation undefined for this input (e.g. non-strong helix)
  invariant,    // an internal consistency check failed
  overflow,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string reason, const std::string& message)
      : std::runtime_error(message), kind_(kind), reason_(std::move(reason)) {}

  ErrorKind kind() const noexcept { return kind_; }
  // short machine-readable code, e.g. "not_strong"
  const std::string& reason() const noexcept { return reason_; }

 private:
  ErrorKind kind_;
  std::string reason_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& reason, const std::string& message) {
  throw Error(kind, reason, message);
}

}  // namespace hx
