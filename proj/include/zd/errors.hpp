#pragma once

#include <stdexcept>
#include <string>

namespace zd {

// Every failure the library can report, by name. The CLI maps these to
// exit codes: input/domain errors -> 2, violated theorem-backed
// invariants -> 3, caps and budgets -> 4.
enum class Errc {
  NotPrime,
  TooLarge,
  ZeroInverse,
  NotDivisor,
  NotProperDivisor,
  FieldMismatch,
  LengthMismatch,
  ExponentTooLarge,
  DuplicateElements,
  SumsetEscapesSubgroup,
  ZeroPolynomial,
  OddSubgroupOrder,
  TrivialCharacter,
  BadRange,
  BadInput,
  CapExceeded,
  BoundViolated,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg)
      : std::runtime_error(std::string(errc_name(code)) + ": " + msg),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) {
  throw Error(code, msg);
}

}  // namespace zd
