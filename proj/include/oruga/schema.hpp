#ifndef ORUGA_SCHEMA_HPP
#define ORUGA_SCHEMA_HPP

#include "oruga/conspec.hpp"
#include "oruga/matching.hpp"
#include "oruga/typesys.hpp"

#include <string>
#include <vector>

namespace oruga {

/// Relation labels (rep, disj, ...) are uninterpreted names.
using RelationLabel = std::string;

/// A relational constraint between source-side and target-side pattern tokens.
struct RelConstraint {
  std::vector<std::string> source_tokens;
  std::vector<std::string> target_tokens;
  RelationLabel relation;

  friend bool operator==(const RelConstraint&, const RelConstraint&) = default;
};

/// An inference rule deriving a cross-space relation: when the antecedents
/// hold between the matched tokens, the consequent holds too.
struct TransferSchema {
  std::string name;
  std::string source_space;
  std::string target_space;
  Pattern source_pattern;
  Pattern target_pattern;
  std::vector<RelConstraint> antecedents;
  RelConstraint consequent;

  friend bool operator==(const TransferSchema&, const TransferSchema&) = default;
};

/// A construction space as seen by a schema: its constructors and the
/// type system they are typed in.
struct SpaceRef {
  const ConSpec& con_spec;
  const TypeSystem& type_system;
};

/// Validates the patterns in their spaces and every constraint token.
/// Throws PatternInvalid or DanglingConstraintToken.
TransferSchema build_schema(std::string name, SpaceRef source, SpaceRef target,
                            Pattern source_pattern, Pattern target_pattern,
                            std::vector<RelConstraint> antecedents,
                            RelConstraint consequent);

struct SchemaArity {
  std::size_t source_tokens = 0;
  std::size_t target_tokens = 0;
  std::size_t antecedents = 0;
  bool base = false;

  friend bool operator==(const SchemaArity&, const SchemaArity&) = default;
};

SchemaArity schema_arity_report(const TransferSchema& schema);

} // namespace oruga

#endif
