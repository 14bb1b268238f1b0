#pragma once

#include <stdexcept>
#include <string>
#include <utility>

#include <json.hpp>

namespace tgq {

enum class ErrorCode {
  NonPrime,
  ReduciblePoly,
  DegreeMismatch,
  DivisionByZero,
  FieldMismatch,
  LengthMismatch,
  AmbientMismatch,
  EmptySubspace,
  CenterMeetsX,
  NotComplementary,
  NoFrame,
  Inconsistent,
  Underdetermined,
  NoConic,
  Singular,
  NotOnConic,
  NucleusOddChar,
  WrongCount,
  WrongDim,
  TripleSpanFailure,
  TangentFailure,
  InputNotOvoid,
  NotM2N,
  DualHypothesisFailed,
  AxiomFail,
  NotConstantDegree,
  NotATriad,
  PairNotRegular,
  TooLarge,
  Precondition,
  RhoDimension,
  ConicFitFailure,
  NotThroughPi0,
  DegeneratePlane,
  GammaNotInTau0,
  BadDimension,
  PhiNotComplementary,
  SpanTooSmall,
  NotAffineSubspace,
  HypothesisFail,
  PipelineFinding,
  QTwoGap,
  VertexOnPlane,
  Overlap,
  Gap,
  ReducibleSection,
  NormalizationFail,
  FourGonalFail,
  Unsupported,
  Parse,
};

inline const char* to_string(ErrorCode c) {
  switch (c) {
    case ErrorCode::NonPrime: return "NonPrime";
    case ErrorCode::ReduciblePoly: return "ReduciblePoly";
    case ErrorCode::DegreeMismatch: return "DegreeMismatch";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::AmbientMismatch: return "AmbientMismatch";
    case ErrorCode::EmptySubspace: return "EmptySubspace";
    case ErrorCode::CenterMeetsX: return "CenterMeetsX";
    case ErrorCode::NotComplementary: return "NotComplementary";
    case ErrorCode::NoFrame: return "NoFrame";
    case ErrorCode::Inconsistent: return "Inconsistent";
    case ErrorCode::Underdetermined: return "Underdetermined";
    case ErrorCode::NoConic: return "NoConic";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::NotOnConic: return "NotOnConic";
    case ErrorCode::NucleusOddChar: return "NucleusOddChar";
    case ErrorCode::WrongCount: return "WrongCount";
    case ErrorCode::WrongDim: return "WrongDim";
    case ErrorCode::TripleSpanFailure: return "TripleSpanFailure";
    case ErrorCode::TangentFailure: return "TangentFailure";
    case ErrorCode::InputNotOvoid: return "InputNotOvoid";
    case ErrorCode::NotM2N: return "NotM2N";
    case ErrorCode::DualHypothesisFailed: return "DualHypothesisFailed";
    case ErrorCode::AxiomFail: return "AxiomFail";
    case ErrorCode::NotConstantDegree: return "NotConstantDegree";
    case ErrorCode::NotATriad: return "NotATriad";
    case ErrorCode::PairNotRegular: return "PairNotRegular";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::Precondition: return "Precondition";
    case ErrorCode::RhoDimension: return "RhoDimension";
    case ErrorCode::ConicFitFailure: return "ConicFitFailure";
    case ErrorCode::NotThroughPi0: return "NotThroughPi0";
    case ErrorCode::DegeneratePlane: return "DegeneratePlane";
    case ErrorCode::GammaNotInTau0: return "GammaNotInTau0";
    case ErrorCode::BadDimension: return "BadDimension";
    case ErrorCode::PhiNotComplementary: return "PhiNotComplementary";
    case ErrorCode::SpanTooSmall: return "SpanTooSmall";
    case ErrorCode::NotAffineSubspace: return "NotAffineSubspace";
    case ErrorCode::HypothesisFail: return "HypothesisFail";
    case ErrorCode::PipelineFinding: return "PipelineFinding";
    case ErrorCode::QTwoGap: return "QTwoGap";
    case ErrorCode::VertexOnPlane: return "VertexOnPlane";
    case ErrorCode::Overlap: return "Overlap";
    case ErrorCode::Gap: return "Gap";
    case ErrorCode::ReducibleSection: return "ReducibleSection";
    case ErrorCode::NormalizationFail: return "NormalizationFail";
    case ErrorCode::FourGonalFail: return "FourGonalFail";
    case ErrorCode::Unsupported: return "Unsupported";
    case ErrorCode::Parse: return "Parse";
  }
  return "Unknown";
}

/// Exception carrying a machine-readable code and an optional witness that
/// lets the failure be re-checked without the original run.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what, nlohmann::json witness = {})
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code),
        witness_(std::move(witness)) {}

  ErrorCode code() const noexcept { return code_; }
  const nlohmann::json& witness() const noexcept { return witness_; }

 private:
  ErrorCode code_;
  nlohmann::json witness_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what, nlohmann::json witness = {}) {
  throw Error(code, what, std::move(witness));
}

}  // namespace tgq
