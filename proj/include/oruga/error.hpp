#ifndef ORUGA_ERROR_HPP
#define ORUGA_ERROR_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace oruga {

enum class ErrorKind {
  // typesys
  DuplicateType,
  UnknownTypeInOrder,
  SubtypeCycle,
  UnknownType,
  NotOpenFamily,
  ConflictingParent,
  // conspec
  DuplicateConstructor,
  EmptyInputs,
  UnknownConstructor,
  // construction / matching
  UnboundToken,
  NonInjectiveRename,
  TypeClash,
  InvalidConstruction,
  // schema
  PatternInvalid,
  DanglingConstraintToken,
  UnknownSpace,
  // transfer
  NotAssumable,
  // dsl
  UnexpectedCharacter,
  SyntaxError,
  ForwardReference,
  ConflictingTokenType,
  ArityMismatch,
  DuplicateDeclaration,
  // cli
  UnknownName,
  UnknownTypeSystem,
};

std::string_view to_string(ErrorKind kind);

/// Location of a lexeme or declaration in an input file. Lines and columns
/// are 1-based; offsets are byte offsets into the file text.
struct SourceSpan {
  std::string file;
  int line = 1;
  int column_start = 1;
  int column_end = 1;
  std::size_t offset_start = 0;
  std::size_t offset_end = 0;

  std::string to_string() const;
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& message,
        std::optional<SourceSpan> span = std::nullopt);

  ErrorKind kind() const { return kind_; }
  const std::optional<SourceSpan>& span() const { return span_; }
  const std::string& message() const { return message_; }

  // Returns a copy carrying `span` unless a span is already attached.
  Error with_span(const SourceSpan& span) const;

private:
  ErrorKind kind_;
  std::string message_;
  std::optional<SourceSpan> span_;
};

} // namespace oruga

#endif
