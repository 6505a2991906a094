#pragma once

#include <stdexcept>
#include <string>

namespace slx {

// Typed failure taxonomy. Every precondition violation in the library throws
// Error with one of these codes; the CLI maps codes to process exit status
// (config -> 2, numerical check -> 3, solver -> 4).
enum class ErrorCode {
  NotHermitian,
  NegativeSpectrum,
  NegativePotential,
  TooFewSamples,
  FunctionUndefinedAtEigenvalue,
  OnSpectrumWithoutLimit,
  EigenvalueCollision,
  KreinAtZero,
  SingularPencil,
  DirichletParameter,
  DegenerateImaginaryPart,
  RealSpectralPoint,
  ZeroEigenvalue,
  EmptyGrid,
  GridMismatch,
  BadGrid,
  BoundaryViolation,
  ShiftOnSpectrum,
  SolverFailure,
  ConfigParse,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        m_code(code) {}

  ErrorCode code() const noexcept { return m_code; }

 private:
  ErrorCode m_code;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace slx
