#pragma once

#include <stdexcept>
#include <string>

namespace dgkit {

enum class ErrorKind {
  InvalidInput,
  DSquaredNonzero,
  UnknownArrow,
  NonzeroArrowDegree,
  InconsistentPresentation,
  UnsafeWindow,
  NotStabilized,
  NotConilpotent,
  MalformedRibbon,
  NotFormal,
  NotGentle,
  NoMarkedInterval,
  NotCommutative,
  TooFewKnownFlags,
  Unsupported,
};

const char* to_string(ErrorKind kind);

// All recoverable failures surface as dgkit::Error; `kind` is what callers branch on.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace dgkit
