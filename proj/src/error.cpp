#include "oruga/error.hpp"

#include <sstream>

namespace oruga {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
  case ErrorKind::DuplicateType: return "DuplicateType";
  case ErrorKind::UnknownTypeInOrder: return "UnknownTypeInOrder";
  case ErrorKind::SubtypeCycle: return "SubtypeCycle";
  case ErrorKind::UnknownType: return "UnknownType";
  case ErrorKind::NotOpenFamily: return "NotOpenFamily";
  case ErrorKind::ConflictingParent: return "ConflictingParent";
  case ErrorKind::DuplicateConstructor: return "DuplicateConstructor";
  case ErrorKind::EmptyInputs: return "EmptyInputs";
  case ErrorKind::UnknownConstructor: return "UnknownConstructor";
  case ErrorKind::UnboundToken: return "UnboundToken";
  case ErrorKind::NonInjectiveRename: return "NonInjectiveRename";
  case ErrorKind::TypeClash: return "TypeClash";
  case ErrorKind::InvalidConstruction: return "InvalidConstruction";
  case ErrorKind::PatternInvalid: return "PatternInvalid";
  case ErrorKind::DanglingConstraintToken: return "DanglingConstraintToken";
  case ErrorKind::UnknownSpace: return "UnknownSpace";
  case ErrorKind::NotAssumable: return "NotAssumable";
  case ErrorKind::UnexpectedCharacter: return "UnexpectedCharacter";
  case ErrorKind::SyntaxError: return "SyntaxError";
  case ErrorKind::ForwardReference: return "ForwardReference";
  case ErrorKind::ConflictingTokenType: return "ConflictingTokenType";
  case ErrorKind::ArityMismatch: return "ArityMismatch";
  case ErrorKind::DuplicateDeclaration: return "DuplicateDeclaration";
  case ErrorKind::UnknownName: return "UnknownName";
  case ErrorKind::UnknownTypeSystem: return "UnknownTypeSystem";
  }
  return "Unknown";
}

std::string SourceSpan::to_string() const {
  std::ostringstream out;
  out << (file.empty() ? "<input>" : file) << ':' << line << ':' << column_start;
  if (column_end != column_start) out << '-' << column_end;
  return out.str();
}

namespace {
std::string compose(ErrorKind kind, const std::string& message,
                    const std::optional<SourceSpan>& span) {
  std::string text;
  if (span) text += span->to_string() + ": ";
  text += std::string(to_string(kind)) + ": " + message;
  return text;
}
} // namespace

Error::Error(ErrorKind kind, const std::string& message,
             std::optional<SourceSpan> span)
    : std::runtime_error(compose(kind, message, span)), kind_(kind),
      message_(message), span_(std::move(span)) {}

Error Error::with_span(const SourceSpan& span) const {
  if (span_) return *this;
  return Error(kind_, message_, span);
}

} // namespace oruga
