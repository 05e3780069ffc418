#pragma once

#include <stdexcept>
#include <string>

namespace ihs {

enum class ErrorKind {
  InvalidInput,     // schema / precondition violation
  Degenerate,       // family is not a Cartan subalgebra
  Ambiguous,        // eigenvalue too close to an axis
  NearDegenerate,   // clustered eigenvalues
  Inconclusive,     // heuristic could not decide
  NotDecomposable,  // complex outside the decomposition engine's scope
  ScopeExceeded,    // enumeration bound hit
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidInput: return "invalid input";
    case ErrorKind::Degenerate: return "degenerate";
    case ErrorKind::Ambiguous: return "ambiguous";
    case ErrorKind::NearDegenerate: return "near-degenerate";
    case ErrorKind::Inconclusive: return "inconclusive";
    case ErrorKind::NotDecomposable: return "not decomposable under this engine's scope";
    case ErrorKind::ScopeExceeded: return "scope exceeded";
  }
  return "error";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  // Numeric outcomes that are honest "can't tell" answers rather than bad input.
  bool is_numeric() const noexcept {
    return kind_ == ErrorKind::Ambiguous || kind_ == ErrorKind::Inconclusive ||
           kind_ == ErrorKind::NearDegenerate;
  }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool cond, const std::string& what) {
  if (!cond) fail(ErrorKind::InvalidInput, what);
}

}  // namespace ihs
