#include "slx/errors.hpp"

namespace slx {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NegativeSpectrum: return "NegativeSpectrum";
    case ErrorCode::NegativePotential: return "NegativePotential";
    case ErrorCode::TooFewSamples: return "TooFewSamples";
    case ErrorCode::FunctionUndefinedAtEigenvalue: return "FunctionUndefinedAtEigenvalue";
    case ErrorCode::OnSpectrumWithoutLimit: return "OnSpectrumWithoutLimit";
    case ErrorCode::EigenvalueCollision: return "EigenvalueCollision";
    case ErrorCode::KreinAtZero: return "KreinAtZero";
    case ErrorCode::SingularPencil: return "SingularPencil";
    case ErrorCode::DirichletParameter: return "DirichletParameter";
    case ErrorCode::DegenerateImaginaryPart: return "DegenerateImaginaryPart";
    case ErrorCode::RealSpectralPoint: return "RealSpectralPoint";
    case ErrorCode::ZeroEigenvalue: return "ZeroEigenvalue";
    case ErrorCode::EmptyGrid: return "EmptyGrid";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::BadGrid: return "BadGrid";
    case ErrorCode::BoundaryViolation: return "BoundaryViolation";
    case ErrorCode::ShiftOnSpectrum: return "ShiftOnSpectrum";
    case ErrorCode::SolverFailure: return "SolverFailure";
    case ErrorCode::ConfigParse: return "ConfigParse";
  }
  return "Unknown";
}

}  // namespace slx
