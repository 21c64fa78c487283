#include "polybundle/errors.hpp"

#include <sstream>

namespace polybundle {

std::string_view to_string(Errc code) {
  switch (code) {
  case Errc::EmptyLabel: return "EmptyLabel";
  case Errc::ReservedCharacter: return "ReservedCharacter";
  case Errc::DuplicateVertex: return "DuplicateVertex";
  case Errc::UnknownVertex: return "UnknownVertex";
  case Errc::BadArity: return "BadArity";
  case Errc::DuplicateFace: return "DuplicateFace";
  case Errc::BoundaryEdge: return "BoundaryEdge";
  case Errc::OrientationClash: return "OrientationClash";
  case Errc::NonPolygonLink: return "NonPolygonLink";
  case Errc::NotIncident: return "NotIncident";
  case Errc::DuplicateLabel: return "DuplicateLabel";
  case Errc::UnknownLabel: return "UnknownLabel";
  case Errc::EndpointMismatch: return "EndpointMismatch";
  case Errc::DifferentPolygon: return "DifferentPolygon";
  case Errc::NotALoop: return "NotALoop";
  case Errc::SizeMismatch: return "SizeMismatch";
  case Errc::NotAnEndomorphism: return "NotAnEndomorphism";
  case Errc::OrientationReversing: return "OrientationReversing";
  case Errc::NotAnIso: return "NotAnIso";
  case Errc::NotAdjacent: return "NotAdjacent";
  case Errc::TooSmall: return "TooSmall";
  case Errc::UnknownEdge: return "UnknownEdge";
  case Errc::MissingEdge: return "MissingEdge";
  case Errc::DuplicateEntry: return "DuplicateEntry";
  case Errc::NotInverse: return "NotInverse";
  case Errc::BadFiberSize: return "BadFiberSize";
  case Errc::NonUniformFiber: return "NonUniformFiber";
  case Errc::UnknownFace: return "UnknownFace";
  case Errc::MissingFace: return "MissingFace";
  case Errc::LiftIncongruent: return "LiftIncongruent";
  case Errc::NonIntegralTotal: return "NonIntegralTotal";
  case Errc::EndpointIncongruent: return "EndpointIncongruent";
  case Errc::AntisymmetryViolation: return "AntisymmetryViolation";
  case Errc::NonIntegralIndex: return "NonIntegralIndex";
  case Errc::ConnectionMismatch: return "ConnectionMismatch";
  case Errc::ParseError: return "ParseError";
  case Errc::MissingPositions: return "MissingPositions";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

bool ValidationReport::has(Errc rule) const {
  for (const Violation& v : violations) {
    if (v.rule == rule) return true;
  }
  return false;
}

void ValidationReport::add(Errc rule, std::string element, std::string message) {
  violations.push_back(Violation{rule, std::move(element), std::move(message)});
}

void ValidationReport::merge(const ValidationReport& other) {
  violations.insert(violations.end(), other.violations.begin(), other.violations.end());
}

std::string ValidationReport::str() const {
  std::ostringstream out;
  for (const Violation& v : violations) {
    out << to_string(v.rule) << " [" << v.element << "]: " << v.message << "\n";
  }
  return out.str();
}

namespace {
Errc first_rule(const ValidationReport& report) {
  return report.violations.empty() ? Errc::ParseError : report.violations.front().rule;
}
} // namespace

ValidationError::ValidationError(ValidationReport report)
    : Error(first_rule(report), report.str()), report_(std::move(report)) {}

} // namespace polybundle
