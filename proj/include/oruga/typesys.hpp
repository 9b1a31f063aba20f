#ifndef ORUGA_TYPESYS_HPP
#define ORUGA_TYPESYS_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace oruga {

using TypeName = std::string;
using TypePair = std::pair<TypeName, TypeName>;

struct TypeEntry {
  TypeName name;
  bool open_family = false;
};

/// A type system: a finite set of types with a partial order over them.
///
/// Types declared with the `_:` prefix are open families and may acquire
/// subtypes at use sites through register_dynamic_type. Values are immutable;
/// registration returns an updated copy.
class TypeSystem {
public:
  TypeSystem() = default;

  const std::string& name() const { return name_; }
  const std::set<TypeName>& declared_types() const { return declared_; }
  const std::set<TypeName>& open_families() const { return open_; }
  const std::set<TypePair>& declared_order() const { return order_; }
  const std::map<TypeName, TypeName>& dynamic_types() const { return dynamic_; }

  bool knows(const TypeName& type) const;
  bool is_open_family(const TypeName& type) const { return open_.count(type) > 0; }

  /// Subtype test over the reflexive-transitive closure. Throws UnknownType.
  bool leq(const TypeName& sub, const TypeName& super) const;

  /// The lower of `a` and `b` when they are comparable. Throws UnknownType.
  std::optional<TypeName> meet_if_comparable(const TypeName& a,
                                             const TypeName& b) const;

  /// Adds `new_type` as a subtype of the open family `parent`. Repeating an
  /// identical registration returns an equal system.
  TypeSystem register_dynamic_type(const TypeName& new_type,
                                   const TypeName& parent) const;

  /// Every (sub, super) pair of the closure, lexicographically sorted.
  std::vector<TypePair> closure_pairs() const;

  /// Supertypes of `type` including itself. Throws UnknownType.
  const std::set<TypeName>& supertypes(const TypeName& type) const;

  friend bool operator==(const TypeSystem&, const TypeSystem&) = default;

  friend TypeSystem build_type_system(std::string name,
                                      const std::vector<TypeEntry>& entries,
                                      const std::vector<TypePair>& order);

private:
  std::string name_;
  std::set<TypeName> declared_;
  std::set<TypeName> open_;
  std::set<TypePair> order_;
  std::map<TypeName, TypeName> dynamic_;
  // type -> all supertypes, reflexive
  std::map<TypeName, std::set<TypeName>> up_;
};

/// Builds and validates a type system. Throws DuplicateType,
/// UnknownTypeInOrder or SubtypeCycle.
TypeSystem build_type_system(std::string name,
                             const std::vector<TypeEntry>& entries,
                             const std::vector<TypePair>& order);

/// Smallest reflexive-transitive superset of `order` over `universe`.
/// Throws SubtypeCycle naming one witnessing cycle.
std::set<TypePair> compute_closure(const std::set<TypePair>& order,
                                   const std::set<TypeName>& universe);

} // namespace oruga

#endif
