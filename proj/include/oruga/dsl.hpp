#ifndef ORUGA_DSL_HPP
#define ORUGA_DSL_HPP

#include "oruga/conspec.hpp"
#include "oruga/construction.hpp"
#include "oruga/error.hpp"
#include "oruga/schema.hpp"
#include "oruga/typesys.hpp"

#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace oruga {

// --- lexing ---

enum class LexemeKind {
  Keyword,
  Ident,
  Equals,      // =
  Comma,       // ,
  Colon,       // :
  DoubleColon, // ::
  Less,        // <
  LeftArrow,   // <-
  RightArrow,  // ->
  LBracket,    // [
  RBracket,    // ]
  LParen,      // (
  RParen,      // )
  Underscore,  // _
};

struct Lexeme {
  LexemeKind kind;
  std::string text;
  SourceSpan span;
};

bool is_keyword(std::string_view word);

/// Throws UnexpectedCharacter.
std::vector<Lexeme> tokenize(std::string_view text, const std::string& file = "");

// --- documents ---

struct ConstructionDecl {
  std::string name;
  std::string con_spec;
  Construction body;

  friend bool operator==(const ConstructionDecl&, const ConstructionDecl&) = default;
};

using Declaration = std::variant<TypeSystem, ConSpec, ConstructionDecl, TransferSchema>;

/// An ordered list of validated declarations. Type systems declared in the
/// document accumulate the dynamic types that later annotations register;
/// the declaration list keeps each type system as it was declared.
class Document {
public:
  const std::vector<Declaration>& declarations() const { return decls_; }
  const std::vector<SourceSpan>& spans() const { return spans_; }

  /// Current type system, including dynamic registrations.
  const TypeSystem* type_system(const std::string& name) const;
  const ConSpec* con_spec(const std::string& name) const;
  const ConstructionDecl* construction(const std::string& name) const;
  const TransferSchema* schema(const std::string& name) const;

  /// The type system a conSpec is bound to. Throws UnknownTypeSystem.
  const TypeSystem& types_of(const ConSpec& cs) const;

  /// Schemas bridging source -> target, in declaration order.
  std::vector<TransferSchema> schemas_between(const std::string& source,
                                              const std::string& target) const;

  void add(Declaration decl, SourceSpan span);
  void set_type_system(TypeSystem ts);

  friend bool operator==(const Document& a, const Document& b) {
    return a.decls_ == b.decls_ && a.current_ == b.current_;
  }

private:
  std::vector<Declaration> decls_;
  std::vector<SourceSpan> spans_;
  std::map<std::string, TypeSystem> current_;
};

struct SourceFile {
  std::string name;
  std::string text;
};

/// Parses and validates one file. Every error carries a span.
Document parse_document(std::string_view text, const std::string& file = "");

/// Parses files in order as one logical document.
Document parse_documents(const std::vector<SourceFile>& files);

/// Parses one construction term against an existing document, registering
/// dynamic types into `doc`. Used for construction-only snippets.
Construction parse_construction_term(std::string_view text, Document& doc,
                                     const std::string& con_spec_name);

// --- printing ---

/// Canonical text of a construction term. Tokens whose type is dynamic in
/// `ts` are written with their open family so the text re-registers them.
std::string pretty_print(const Construction& c, const TypeSystem* ts = nullptr,
                         std::size_t indent = 0);
std::string pretty_print(const TransferSchema& s, const Document& doc);
std::string pretty_print(const Document& doc);

std::string pretty_print_declaration(const Declaration& decl, const Document& doc);

} // namespace oruga

#endif
