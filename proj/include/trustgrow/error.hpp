#pragma once

#include <stdexcept>
#include <string>

namespace trustgrow {

enum class ErrorKind {
  input,             // malformed or out-of-range arguments
  scale,             // exact computation requested beyond the enumeration limit
  consistency,       // ledger contradicts the trust graph(s)
  analysis,          // eigen-solver did not converge
  config,            // infeasible or invalid policy / scenario
  generation,        // random generator exhausted its retry budget
  undefined_metric,  // ratio with a zero denominator
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Process exit codes shared by every CLI command.
namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int rejected = 1;
inline constexpr int input = 2;
inline constexpr int scale = 3;
}  // namespace exit_code

inline int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::scale:
    case ErrorKind::analysis:
    case ErrorKind::generation:
      return exit_code::scale;
    default:
      return exit_code::input;
  }
}

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::input: return "input error";
    case ErrorKind::scale: return "scale error";
    case ErrorKind::consistency: return "consistency error";
    case ErrorKind::analysis: return "analysis error";
    case ErrorKind::config: return "config error";
    case ErrorKind::generation: return "generation error";
    case ErrorKind::undefined_metric: return "undefined metric";
  }
  return "error";
}

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace trustgrow
