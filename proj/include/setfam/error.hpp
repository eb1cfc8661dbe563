#pragma once

#include <stdexcept>
#include <string>

namespace setfam {

enum class ErrorKind {
  InvalidInput,
  Capacity,
  UndefinedInvariant,
  Parse,
  BudgetExhausted,
  Internal,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace setfam
