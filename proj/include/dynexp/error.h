#pragma once

#include <stdexcept>
#include <string>

namespace dynexp {

enum class ErrorKind {
  kInvalidArgument,
  kNotFound,
  kParse,
  kPrecondition,
  kExpired,
  kTooLarge,
  kOverflow,
  kInternal,
};

const char* ErrorKindName(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void Fail(ErrorKind kind, const std::string& what);

// Literal messages only become strings on failure.
inline void Require(bool cond, ErrorKind kind, const char* what) {
  if (!cond) Fail(kind, what);
}
inline void Require(bool cond, ErrorKind kind, const std::string& what) {
  if (!cond) Fail(kind, what);
}

}  // namespace dynexp
