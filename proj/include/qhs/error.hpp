#pragma once

#include <stdexcept>
#include <string>

namespace qhs {

// Every failure mode the library can signal. The CLI maps a subset of these
// to process exit codes; tests match on the code, not the message.
enum class Err {
  ZeroPolynomial,
  ProbeVanishes,
  BothZero,
  IndivisibleDegree,
  WrongDegree,
  NotCoprime,
  InconsistentR,
  NoIntegerR,
  PatternViolation,
  HypothesisViolated,
  SymmetryViolation,
  KOutOfRange,
  ShapeMismatch,
  NotAdmissible,
  CaseMismatch,
  NoR,
  BoundExceeded,
  InvalidKind,
  ParseError,
  DegreeInferenceError,
  NotStable,
  NotApplicable,
  IOError,
};

const char* err_name(Err code);

class Error : public std::runtime_error {
public:
  Error(Err code, const std::string& message)
      : std::runtime_error(std::string(err_name(code)) + ": " + message),
        code_(code) {}

  Err code() const noexcept { return code_; }

private:
  Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& message) {
  throw Error(code, message);
}

inline const char* err_name(Err code) {
  switch (code) {
    case Err::ZeroPolynomial: return "ZeroPolynomial";
    case Err::ProbeVanishes: return "ProbeVanishes";
    case Err::BothZero: return "BothZero";
    case Err::IndivisibleDegree: return "IndivisibleDegree";
    case Err::WrongDegree: return "WrongDegree";
    case Err::NotCoprime: return "NotCoprime";
    case Err::InconsistentR: return "InconsistentR";
    case Err::NoIntegerR: return "NoIntegerR";
    case Err::PatternViolation: return "PatternViolation";
    case Err::HypothesisViolated: return "HypothesisViolated";
    case Err::SymmetryViolation: return "SymmetryViolation";
    case Err::KOutOfRange: return "KOutOfRange";
    case Err::ShapeMismatch: return "ShapeMismatch";
    case Err::NotAdmissible: return "NotAdmissible";
    case Err::CaseMismatch: return "CaseMismatch";
    case Err::NoR: return "NoR";
    case Err::BoundExceeded: return "BoundExceeded";
    case Err::InvalidKind: return "InvalidKind";
    case Err::ParseError: return "ParseError";
    case Err::DegreeInferenceError: return "DegreeInferenceError";
    case Err::NotStable: return "NotStable";
    case Err::NotApplicable: return "NotApplicable";
    case Err::IOError: return "IOError";
  }
  return "UnknownError";
}

}  // namespace qhs
