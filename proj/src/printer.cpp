#include "oruga/dsl.hpp"

#include <sstream>

namespace oruga {

namespace {

constexpr std::size_t kLineWidth = 72;

std::string annotate(const Token& t, const TypeSystem* ts) {
  std::string text = t.id + ":" + t.type;
  if (ts) {
    if (auto it = ts->dynamic_types().find(t.type); it != ts->dynamic_types().end()) {
      text += ":" + it->second;
    }
  }
  return text;
}

std::string flat(const Construction& c, const TypeSystem* ts) {
  if (c.is_reference()) return c.id();
  std::string text = annotate(c.token(), ts);
  if (!c.is_apply()) return text;
  text += " <- " + c.constructor() + "[";
  for (std::size_t i = 0; i < c.inputs().size(); ++i) {
    if (i) text += ", ";
    text += flat(c.inputs()[i], ts);
  }
  return text + "]";
}

void layout(std::ostream& out, const Construction& c, const TypeSystem* ts,
            std::size_t indent) {
  std::string one_line = flat(c, ts);
  if (!c.is_apply() || indent + one_line.size() <= kLineWidth) {
    out << one_line;
    return;
  }
  std::string head = annotate(c.token(), ts) + " <- " + c.constructor() + "[";
  out << head;
  std::size_t inner = indent + head.size();
  for (std::size_t i = 0; i < c.inputs().size(); ++i) {
    if (i) out << ",\n" << std::string(inner, ' ');
    layout(out, c.inputs()[i], ts, inner);
  }
  out << ']';
}

std::string annotated_list(const std::vector<std::string>& ids,
                           const std::map<std::string, TypeName>& types) {
  std::string text = "[";
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) text += ",";
    text += ids[i];
    if (auto it = types.find(ids[i]); it != types.end()) text += ":" + it->second;
  }
  return text + "]";
}

std::string print_rel(const RelConstraint& rel, const std::map<std::string, TypeName>& source,
                      const std::map<std::string, TypeName>& target) {
  return "(" + annotated_list(rel.source_tokens, source) + "," +
         annotated_list(rel.target_tokens, target) + ") :: " + rel.relation;
}

const TypeSystem* space_types(const Document& doc, const std::string& con_spec) {
  const ConSpec* cs = doc.con_spec(con_spec);
  return cs ? doc.type_system(cs->type_system_name()) : nullptr;
}

template <typename Range> std::string join(const Range& items, const std::string& sep) {
  std::string text;
  bool first = true;
  for (const auto& item : items) {
    if (!first) text += sep;
    text += item;
    first = false;
  }
  return text;
}

} // namespace

std::string pretty_print(const Construction& c, const TypeSystem* ts, std::size_t indent) {
  std::ostringstream out;
  layout(out, c, ts, indent);
  return out.str();
}

std::string pretty_print(const TransferSchema& s, const Document& doc) {
  const TypeSystem* source_ts = space_types(doc, s.source_space);
  const TypeSystem* target_ts = space_types(doc, s.target_space);
  auto source_types = token_types(s.source_pattern);
  auto target_types = token_types(s.target_pattern);

  std::ostringstream out;
  out << "tSchema " << s.name << ":(" << s.source_space << "," << s.target_space << ") =\n";
  out << "  source " << pretty_print(s.source_pattern, source_ts, 9) << "\n";
  out << "  target " << pretty_print(s.target_pattern, target_ts, 9) << "\n";
  if (!s.antecedents.empty()) {
    out << "  antecedent ";
    for (std::size_t i = 0; i < s.antecedents.size(); ++i) {
      if (i) out << ",\n             ";
      out << print_rel(s.antecedents[i], source_types, target_types);
    }
    out << "\n";
  }
  out << "  consequent " << print_rel(s.consequent, source_types, target_types) << "\n";
  return out.str();
}

std::string pretty_print_declaration(const Declaration& decl, const Document& doc) {
  std::ostringstream out;
  if (const auto* ts = std::get_if<TypeSystem>(&decl)) {
    std::vector<std::string> entries;
    for (const auto& t : ts->declared_types()) {
      entries.push_back(ts->is_open_family(t) ? "_:" + t : t);
    }
    out << "typeSystem " << ts->name() << " =\n";
    out << "  types " << join(entries, ", ") << "\n";
    if (!ts->declared_order().empty()) {
      std::vector<std::string> pairs;
      for (const auto& [a, b] : ts->declared_order()) pairs.push_back(a + " < " + b);
      out << "  order " << join(pairs, ", ") << "\n";
    }
  } else if (const auto* cs = std::get_if<ConSpec>(&decl)) {
    out << "conSpec " << cs->name() << ":" << cs->type_system_name() << " =\n";
    std::vector<std::string> ctors;
    for (const auto& [name, sig] : cs->constructors()) {
      ctors.push_back("  " + name + " : [" + join(sig.inputs, ",") + "] -> " + sig.output);
    }
    out << join(ctors, ",\n") << "\n";
  } else if (const auto* c = std::get_if<ConstructionDecl>(&decl)) {
    out << "construction " << c->name << ":" << c->con_spec << " =\n";
    out << "  " << pretty_print(c->body, space_types(doc, c->con_spec), 2) << "\n";
  } else if (const auto* s = std::get_if<TransferSchema>(&decl)) {
    out << pretty_print(*s, doc);
  }
  return out.str();
}

std::string pretty_print(const Document& doc) {
  std::string text;
  for (const auto& decl : doc.declarations()) {
    if (!text.empty()) text += "\n";
    text += pretty_print_declaration(decl, doc);
  }
  return text;
}

} // namespace oruga
