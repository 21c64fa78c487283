#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace polybundle {

// Every rule a value or an operation can violate. The names are what reports
// and CLI messages print.
enum class Errc {
  // complex
  EmptyLabel,
  ReservedCharacter,
  DuplicateVertex,
  UnknownVertex,
  BadArity,
  DuplicateFace,
  BoundaryEdge,
  OrientationClash,
  NonPolygonLink,
  NotIncident,
  // polygon
  DuplicateLabel,
  UnknownLabel,
  EndpointMismatch,
  DifferentPolygon,
  NotALoop,
  SizeMismatch,
  NotAnEndomorphism,
  OrientationReversing,
  NotAnIso,
  NotAdjacent,
  TooSmall,
  // bundle
  UnknownEdge,
  MissingEdge,
  DuplicateEntry,
  NotInverse,
  BadFiberSize,
  NonUniformFiber,
  UnknownFace,
  MissingFace,
  LiftIncongruent,
  NonIntegralTotal,
  // field
  EndpointIncongruent,
  AntisymmetryViolation,
  NonIntegralIndex,
  ConnectionMismatch,
  // scene
  ParseError,
  MissingPositions,
};

std::string_view to_string(Errc code);

class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& message);

  Errc code() const { return code_; }

private:
  Errc code_;
};

struct Violation {
  Errc rule;
  std::string element;
  std::string message;

  bool operator==(const Violation&) const = default;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool has(Errc rule) const;
  void add(Errc rule, std::string element, std::string message);
  void merge(const ValidationReport& other);

  // One "Rule [element]: message" line per violation.
  std::string str() const;
};

// Thrown by the build_* constructors when validation fails. The first
// violation's rule is the error code.
class ValidationError : public Error {
public:
  explicit ValidationError(ValidationReport report);

  const ValidationReport& report() const { return report_; }

private:
  ValidationReport report_;
};

} // namespace polybundle
