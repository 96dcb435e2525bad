#pragma once

#include <stdexcept>
#include <string>

namespace g2 {

// Base class for all errors raised by the library.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct NotDivisible : Error {
  explicit NotDivisible(const std::string& w) : Error(w) {}
};

struct DivisionByZero : Error {
  explicit DivisionByZero(const std::string& w) : Error(w) {}
};

// Arithmetic between QValues of different tags (formal/cyclotomic/float).
struct TagMismatch : Error {
  explicit TagMismatch(const std::string& w) : Error(w) {}
};

struct NotInAlcove : Error {
  explicit NotInAlcove(const std::string& w) : Error(w) {}
};

// grothendieck_mul could not reduce a factor to the ring generators.
struct NotExpressible : Error {
  explicit NotExpressible(const std::string& w) : Error(w) {}
};

// A precondition of the block closed forms failed (repeated twists, bad
// delta, ...). Carries the name of the violated predicate.
struct ConditionsViolated : Error {
  explicit ConditionsViolated(const std::string& w) : Error(w) {}
};

struct SolverFailed : Error {
  explicit SolverFailed(const std::string& w) : Error(w) {}
};

struct GaugeSolverFailed : Error {
  explicit GaugeSolverFailed(const std::string& w) : Error(w) {}
};

struct TLViolation : Error {
  explicit TLViolation(const std::string& w) : Error(w) {}
};

struct UnknownFormat : Error {
  explicit UnknownFormat(const std::string& w) : Error(w) {}
};

struct InadmissibleQ : Error {
  explicit InadmissibleQ(const std::string& w) : Error(w) {}
};

struct AmbiguousCase : Error {
  explicit AmbiguousCase(const std::string& w) : Error(w) {}
};

struct UsageError : Error {
  explicit UsageError(const std::string& w) : Error(w) {}
};

}  // namespace g2
