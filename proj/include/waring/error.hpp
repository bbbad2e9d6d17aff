#pragma once

#include <stdexcept>
#include <string>

namespace waring {

enum class ErrorKind {
  Validation,      // bad input or contract violation
  OutOfRange,      // parameter outside the supported range
  DegenerateCase,  // generic construction failed repeatedly (likely defective)
  Numerical,       // rank ambiguity, ill-conditioning, missing base points
  Budget,          // budget exhausted
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

const char* to_string(ErrorKind kind);

}  // namespace waring
