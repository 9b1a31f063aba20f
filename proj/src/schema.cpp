#include "oruga/schema.hpp"

#include "oruga/error.hpp"

namespace oruga {

namespace {

void check_pattern(const std::string& schema, const char* side, const Pattern& p,
                   SpaceRef space) {
  auto report = validate(p, space.con_spec, space.type_system);
  if (!report.ok()) {
    throw Error(ErrorKind::PatternInvalid, std::string(side) + " pattern of " +
                                               schema + " is invalid in " +
                                               space.con_spec.name() + ": " +
                                               report.summary());
  }
}

void check_constraint(const std::string& schema, const RelConstraint& rel,
                      const std::map<std::string, TypeName>& source_ids,
                      const std::map<std::string, TypeName>& target_ids) {
  if (rel.relation.empty()) {
    throw Error(ErrorKind::SyntaxError, "empty relation label in " + schema);
  }
  for (const auto& id : rel.source_tokens) {
    if (!source_ids.count(id)) {
      throw Error(ErrorKind::DanglingConstraintToken,
                  "'" + id + "' in a " + rel.relation + " constraint of " + schema +
                      " does not occur in the source pattern");
    }
  }
  for (const auto& id : rel.target_tokens) {
    if (!target_ids.count(id)) {
      throw Error(ErrorKind::DanglingConstraintToken,
                  "'" + id + "' in a " + rel.relation + " constraint of " + schema +
                      " does not occur in the target pattern");
    }
  }
}

} // namespace

TransferSchema build_schema(std::string name, SpaceRef source, SpaceRef target,
                            Pattern source_pattern, Pattern target_pattern,
                            std::vector<RelConstraint> antecedents,
                            RelConstraint consequent) {
  check_pattern(name, "source", source_pattern, source);
  check_pattern(name, "target", target_pattern, target);
  auto source_ids = token_types(source_pattern);
  auto target_ids = token_types(target_pattern);
  for (const auto& rel : antecedents) check_constraint(name, rel, source_ids, target_ids);
  check_constraint(name, consequent, source_ids, target_ids);
  if (consequent.source_tokens.empty() && consequent.target_tokens.empty()) {
    throw Error(ErrorKind::DanglingConstraintToken,
                "consequent of " + name + " relates no tokens");
  }
  return TransferSchema{std::move(name),
                        source.con_spec.name(),
                        target.con_spec.name(),
                        std::move(source_pattern),
                        std::move(target_pattern),
                        std::move(antecedents),
                        std::move(consequent)};
}

SchemaArity schema_arity_report(const TransferSchema& schema) {
  SchemaArity report;
  report.source_tokens = tokens_of(schema.source_pattern).size();
  report.target_tokens = tokens_of(schema.target_pattern).size();
  report.antecedents = schema.antecedents.size();
  report.base = schema.antecedents.empty();
  return report;
}

} // namespace oruga
