#ifndef ORUGA_CONSTRUCTION_HPP
#define ORUGA_CONSTRUCTION_HPP

#include "oruga/conspec.hpp"
#include "oruga/typesys.hpp"

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace oruga {

struct Token {
  std::string id;
  TypeName type;

  friend auto operator<=>(const Token&, const Token&) = default;
};

/// One way in which one token is constructed: a tree of constructor
/// applications over tokens. Re-used tokens appear as References, which
/// carry only the id and resolve anywhere in the same construction, so the
/// induced token graph may be cyclic even though the tree is finite.
class Construction {
public:
  enum class Kind { Source, Reference, Apply };

  static Construction source(Token token);
  static Construction reference(std::string id);
  static Construction apply(Token output, std::string constructor,
                            std::vector<Construction> inputs);

  Kind kind() const { return kind_; }
  bool is_source() const { return kind_ == Kind::Source; }
  bool is_reference() const { return kind_ == Kind::Reference; }
  bool is_apply() const { return kind_ == Kind::Apply; }

  const std::string& id() const { return token_.id; }
  /// For a Reference only the id is meaningful.
  const Token& token() const { return token_; }
  const std::string& constructor() const { return constructor_; }
  const std::vector<Construction>& inputs() const { return inputs_; }

  friend bool operator==(const Construction&, const Construction&) = default;

private:
  Kind kind_ = Kind::Source;
  Token token_;
  std::string constructor_;
  std::vector<Construction> inputs_;
};

enum class ViolationKind {
  Arity,
  Typing,
  UnresolvedReference,
  InconsistentTokenType,
  DuplicateBinding,
  UnknownConstructor,
  UnknownType,
};

struct Violation {
  ViolationKind kind;
  std::string token_id;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  std::string summary() const;
};

/// Checks arity, typing, reference resolution and binding uniqueness.
/// Every violation is reported; nothing is thrown.
ValidationReport validate(const Construction& c, const ConSpec& cs,
                          const TypeSystem& ts);

/// Distinct tokens in preorder of their binding occurrence.
std::vector<Token> tokens_of(const Construction& c);

/// Types of all bound token ids (first binding wins).
std::map<std::string, TypeName> token_types(const Construction& c);

/// The node binding `id`: its Apply node if constructed, else its Source
/// leaf. Returns nullptr when unbound.
const Construction* binding_site(const Construction& c, const std::string& id);

/// Throws UnboundToken.
Construction sub_construction_at(const Construction& c, const std::string& id);

/// Throws NonInjectiveRename, or UnboundToken when a token id is missing
/// from the map.
Construction rename_tokens(const Construction& c,
                           const std::map<std::string, std::string>& renaming);

/// A bijection between token ids under which `a` and `b` coincide exactly,
/// if one exists.
std::optional<std::map<std::string, std::string>>
equal_up_to_renaming(const Construction& a, const Construction& b);

/// Calls `fn` on every node in preorder.
template <typename Fn> void for_each_node(const Construction& c, Fn&& fn) {
  fn(c);
  for (const auto& input : c.inputs()) for_each_node(input, fn);
}

} // namespace oruga

#endif
